from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import exact_equal, fmat, mat
from eigenproj.charpoly import charpoly
from eigenproj.errors import NonSquare, Singular
from eigenproj.numcore import (
    CRational, Poly, ToleranceConfig, as_matrix, format_scalar, identity, inverse, is_exact,
    is_zero_matrix, mat_pow, max_abs_diff, nullspace, poly_eval_matrix, rank, to_exact, to_float,
    zeros,
)

small = st.integers(-5, 5)
fracs = st.fractions(min_value=-10, max_value=10, max_denominator=12)


def int_matrix(n, lo=-3, hi=3):
    return st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)


@st.composite
def square_ints(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    return draw(int_matrix(n))


# scalars

@given(fracs, fracs, fracs, fracs)
def test_crational_field_ops_match_fractions(a, b, c, d):
    x, y = CRational(a, b), CRational(c, d)
    s = x * y
    assert (s.re, s.im) == (a * c - b * d, a * d + b * c)
    assert x + y - y == x
    if y:
        assert (x / y) * y == x


@given(fracs, fracs, st.integers(-4, 4))
def test_crational_power(a, b, k):
    x = CRational(a, b)
    if not x and k < 0:
        return
    ref = CRational(1)
    for _ in range(abs(k)):
        ref = ref * x
    if k < 0:
        ref = 1 / ref
    assert x ** k == ref


def test_crational_mixed_with_ints_and_complex_conversion():
    x = CRational(Fraction(1, 2), 3)
    assert x + 1 == CRational(Fraction(3, 2), 3)
    assert complex(x) == 0.5 + 3j
    assert x.conjugate() == CRational(Fraction(1, 2), -3)
    assert hash(CRational(2)) == hash(CRational(2, 0))


@pytest.mark.parametrize("z,text", [
    (CRational(3), "3"), (CRational(0, -1), "-i"), (CRational(Fraction(1, 2), 2), "1/2+2i"),
    (CRational(-1, Fraction(-3, 4)), "-1-3/4i"), (2 + 0j, "2"), (0.5 - 1j, "0.5-i"),
])
def test_format_scalar(z, text):
    assert format_scalar(z) == text


def test_tolerance_config_rules():
    assert ToleranceConfig.exact().is_exact
    assert not ToleranceConfig().is_exact
    with pytest.raises(ValueError):
        ToleranceConfig(0.0, 1e-10, 1e-6)
    with pytest.raises(ValueError):
        ToleranceConfig(-1.0, 1.0, 1.0)


# matrices

def test_as_matrix_backends_and_shape():
    assert is_exact(as_matrix([[1, 2], [3, 4]]))
    assert not is_exact(as_matrix([[1.0, 2], [3, 4]]))
    assert not is_exact(as_matrix([[1, 2], [3, 4]], "float"))
    with pytest.raises(NonSquare):
        as_matrix([[1, 2, 3], [4, 5, 6]])
    with pytest.raises(NonSquare):
        as_matrix([[]])


@pytest.mark.parametrize("A,k,expected", [
    ([[0, 1], [0, 0]], 2, [[0, 0], [0, 0]]),
    ([[1, 2], [3, 4]], 0, [[1, 0], [0, 1]]),
    ([[1, 2], [3, 4]], 2, [[7, 10], [15, 22]]),
])
def test_mat_pow_examples(A, k, expected):
    assert exact_equal(mat_pow(mat(A), k), mat(expected))


def test_mat_pow_rejects_negative():
    with pytest.raises(ValueError):
        mat_pow(mat([[1]]), -1)


@given(square_ints(5), st.integers(0, 5), st.integers(0, 5))
def test_mat_pow_additive_exponents(rows, j, k):
    A = mat(rows)
    assert exact_equal(mat_pow(A, j + k), mat_pow(A, j) @ mat_pow(A, k))
    F = to_float(A)
    lhs, rhs = mat_pow(F, j + k), mat_pow(F, j) @ mat_pow(F, k)
    assert max_abs_diff(lhs, rhs) <= 1e-10 * max(np.abs(lhs).max(), 1.0)


@pytest.mark.parametrize("A,r", [
    (identity(3, True), 3), (zeros(3, True), 0), (mat([[1, 1], [1, 1]]), 1),
])
def test_rank_examples(A, r):
    assert rank(A) == r
    assert rank(to_float(A)) == r


@given(square_ints(8))
def test_float_rank_matches_exact_rank(rows):
    A = mat(rows)
    assert rank(to_float(A)) == rank(A)


def test_rank_of_low_rank_integer_products():
    rng = np.random.default_rng(5)
    for n in range(2, 9):
        for r in range(0, n + 1):
            X = rng.integers(-3, 4, size=(n, r))
            Y = rng.integers(-3, 4, size=(r, n))
            A = mat((X @ Y).tolist())
            assert rank(to_float(A)) == rank(A) <= r


@pytest.mark.parametrize("A,Ainv", [
    ([[1, 0], [0, 1]], [[1, 0], [0, 1]]),
    ([[2, 0], [0, 3]], [[Fraction(1, 2), 0], [0, Fraction(1, 3)]]),
    ([[1, 1], [0, 1]], [[1, -1], [0, 1]]),
])
def test_inverse_examples(A, Ainv):
    assert exact_equal(inverse(mat(A)), mat(Ainv))
    assert max_abs_diff(inverse(to_float(mat(A))), to_float(mat(Ainv))) < 1e-15


@given(square_ints(6))
def test_inverse_round_trip_or_singular(rows):
    A = mat(rows)
    I = identity(A.shape[0], True)
    try:
        Ai = inverse(A)
    except Singular:
        assert rank(A) < A.shape[0]
        return
    assert exact_equal(Ai @ A, I)
    F = to_float(A)
    try:
        Fi = inverse(F)
    except Singular:
        return
    assert max_abs_diff(Fi @ F, to_float(I)) <= 1e-8 * max(1.0, np.abs(Fi).max() * np.abs(F).max())


@given(square_ints(6))
def test_nullspace_dimension_and_annihilation(rows):
    A = mat(rows)
    N = nullspace(A)
    assert N.shape[1] == A.shape[0] - rank(A)
    if N.shape[1]:
        assert not any((A @ N).flat)


@pytest.mark.parametrize("scale,expected", [(1.0, True), (1e-6, False)])
def test_is_zero_matrix_threshold(scale, expected):
    tol = ToleranceConfig(1e-10, 1e-10, 1e-6)
    E = np.full((2, 2), 1e-14, dtype=complex)
    assert is_zero_matrix(E, tol, scale) is expected


def test_is_zero_matrix_basic():
    assert is_zero_matrix(zeros(2, True))
    assert not is_zero_matrix(identity(2, False), None, 1.0)


# polynomials

def test_poly_eval_examples():
    A = mat([[1, 2], [3, 4]])
    assert exact_equal(poly_eval_matrix(Poly([CRational(1)]), A), identity(2, True))
    assert exact_equal(poly_eval_matrix(Poly([-2, -5, 1]), A), zeros(2, True))
    assert exact_equal(poly_eval_matrix(Poly([0, 1]), A), A)


@given(square_ints(6))
def test_cayley_hamilton(rows):
    A = mat(rows)
    assert not any(poly_eval_matrix(charpoly(A), A).flat)


@given(st.lists(small, min_size=1, max_size=6), st.lists(small, min_size=1, max_size=4))
def test_poly_divmod_reassembles(a, b):
    f, g = Poly([CRational(x) for x in a]), Poly([CRational(x) for x in b])
    if g.is_zero():
        return
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.is_zero() or r.degree < g.degree


def test_poly_from_roots_and_trim():
    p = Poly.from_roots([CRational(0), CRational(2)], [2, 1])
    assert p == Poly([0, 0, -2, 1])
    noisy = Poly([1e-17 + 0j, -2 + 0j, 1 + 0j])
    assert noisy.trim(ToleranceConfig()).coeffs[0] == 0


def test_to_exact_round_trip():
    A = fmat([[0.5, -2], [0.25, 3]])
    assert np.array_equal(to_float(to_exact(A)), A)
