from fractions import Fraction
from itertools import combinations, permutations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import exact_equal, mat
from eigenproj.charpoly import faddeev, index_of, index_of_power, index_power_check
from eigenproj.numcore import CRational, Poly, identity, mat_pow, rank, to_float


def leibniz_det(M):
    n = len(M)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inv % 2 else 1
        for i in range(n):
            term *= M[i][perm[i]]
            if term == 0:
                break
        total += term
    return total


def charpoly_by_minors(rows):
    """a_k = (-1)^k * (sum of principal k x k minors), straight from the determinant definition."""
    n = len(rows)
    a = [1]
    for k in range(1, n + 1):
        s = 0
        for idx in combinations(range(n), k):
            s += leibniz_det([[rows[i][j] for j in idx] for i in idx])
        a.append((-1) ** k * s)
    return a


@st.composite
def int_rows(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    return draw(st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n))


@given(int_rows())
def test_faddeev_matches_cofactor_oracle(rows):
    cd = faddeev(mat(rows))
    assert [CRational(x) for x in charpoly_by_minors(rows)] == list(cd.a)
    v = 0
    while v < len(rows) and cd.a[len(rows) - v] == 0:
        v += 1
    assert cd.v == v


@given(int_rows())
def test_faddeev_float_matches_exact_on_integers(rows):
    ce, cf = faddeev(mat(rows)), faddeev(to_float(mat(rows)))
    assert cf.v == ce.v
    assert all(abs(complex(x) - y) <= 1e-9 * (1 + abs(complex(x))) for x, y in zip(ce.a, cf.a))


@given(int_rows())
def test_adjugate_recurrence_identity(rows):
    A = mat(rows)
    cd = faddeev(A)
    n = cd.n
    I = identity(n, True)
    for k in range(1, n + 1):
        assert exact_equal(cd.adjugate_coeff(k) - A @ cd.adjugate_coeff(k - 1), I * cd.a[k])


def test_faddeev_examples():
    cd = faddeev(mat([[1, 2], [3, 4]]))
    assert cd.poly == Poly([-2, -5, 1]) and cd.v == 0
    cd = faddeev(mat([[2, 0], [0, 0]]))
    assert list(cd.a) == [1, -2, 0] and cd.v == 1
    assert exact_equal(cd.adjugate_coeff(1), mat([[0, 0], [0, -2]]))
    cd = faddeev(mat([[0, 1], [0, 0]]))
    assert cd.poly == Poly([0, 0, 1]) and cd.v == 2


def test_faddeev_float_flags_zero_coefficients():
    cd = faddeev(to_float(mat([[2, 0], [0, 0]])))
    assert cd.v == 1 and cd.conditioned
    assert cd.a[2] == 0


def test_faddeev_treats_noise_power_as_zero():
    N = np.array([[0, 1, 0], [0, 0, 1], [0, 0, 0]], dtype=complex)
    Q, _ = np.linalg.qr(np.random.default_rng(0).normal(size=(3, 3)))
    A = Q @ N @ Q.T
    P = mat_pow(A, 3)
    assert faddeev(P, ref=np.abs(A).sum(axis=1).max() ** 3).v == 3


@pytest.mark.parametrize("rows,nu,seq,r", [
    ([[1, 2], [3, 4]], 0, (2,), 2),
    ([[0, 1], [0, 0]], 2, (2, 1, 0), 0),
    ([[0, 1, 0], [0, 0, 0], [0, 0, 2]], 2, (3, 2, 1), 1),
])
def test_index_examples(rows, nu, seq, r):
    for A in (mat(rows), to_float(mat(rows))):
        info = index_of(A)
        assert (info.nu, info.rank_seq, info.r) == (nu, seq, r)


@pytest.mark.parametrize("nu,k,expected", [(3, 2, 2), (0, 5, 0), (4, 4, 1), (5, 1, 5)])
def test_index_power_check(nu, k, expected):
    assert index_power_check(nu, k) == expected


def test_index_power_check_rejects_k0():
    with pytest.raises(ValueError):
        index_power_check(2, 0)


@given(int_rows(5))
def test_index_invariants(rows):
    A = mat(rows)
    info = index_of(A)
    cd = faddeev(A)
    seq = info.rank_seq
    assert all(seq[i] > seq[i + 1] for i in range(len(seq) - 1))
    assert info.nu <= cd.v <= cd.n
    assert rank(mat_pow(A, info.nu + 1)) == info.r
    assert info.r == cd.n - cd.v


def test_index_of_powers_on_suite(suite):
    for case in suite[::7]:
        for k in (1, 2, 3):
            assert index_of_power(case.A, k) == index_power_check(case.nu, k)
