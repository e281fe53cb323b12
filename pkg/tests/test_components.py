import cmath
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import close, exact_equal, fmat, mat
from eigenproj.charpoly import faddeev, index_of
from eigenproj.components import (
    Spectrum, check_power_indices, component_from_eigenvalues, components, eigenprojection_at,
    eigenprojection_from_eigenvalues, eigenvalues, exp_values, matrix_function,
    minimal_polynomial, minimal_polynomial_of_power, poly_values, resolvent_values,
)
from eigenproj.eigenprojection import eigenprojection
from eigenproj.errors import IrrationalSpectrum, MissingDerivative, NonTermination
from eigenproj.numcore import (
    CRational, Poly, identity, inverse, mat_pow, poly_eval_matrix, rank, to_exact, to_float, zeros,
)
from eigenproj.suite import random_case

MIXED = [[0, 1, 0], [0, 0, 0], [0, 0, 2]]
cases = st.builds(random_case, st.integers(0, 10**6), st.integers(1, 6), st.integers(0, 3))


def as_dict(sp):
    return {complex(l): m for l, m in zip(sp.lambdas, sp.mults)}


def find(sp, value):
    return sp.find(CRational(value) if sp.exact else complex(value), 0.0 if sp.exact else 1e-6)


@pytest.mark.parametrize("rows,expected", [
    ([[2, 0], [0, 0]], {2: 1, 0: 1}),
    (MIXED, {0: 2, 2: 1}),
    ([[1, 1], [0, 1]], {1: 2}),
])
def test_eigenvalue_examples(rows, expected):
    assert as_dict(eigenvalues(mat(rows))) == expected
    got = as_dict(eigenvalues(fmat(rows)))
    assert sorted(got.values()) == sorted(expected.values())
    for lam, m in expected.items():
        assert any(abs(k - lam) < 1e-9 and v == m for k, v in got.items())


def test_irrational_spectrum_is_rejected_under_exact():
    with pytest.raises(IrrationalSpectrum):
        eigenvalues(mat([[0, 2], [1, 0]]))
    sp = eigenvalues(fmat([[0, 2], [1, 0]]))
    assert sorted(abs(complex(x)) for x in sp.lambdas) == pytest.approx([2 ** 0.5] * 2)


def test_eigenvalue_override_checks_multiplicities():
    sp = eigenvalues(mat(MIXED), override=[0, 2])
    assert list(sp.mults) == [2, 1]
    with pytest.raises(ValueError):
        eigenvalues(mat(MIXED), override=[0, 3])


def test_float_clusters_a_fivefold_root():
    J = np.diag([3.0] * 5) + np.diag([1.0] * 4, 1)
    sp = eigenvalues(J.astype(complex))
    assert list(sp.mults) == [5]
    assert abs(complex(sp.lambdas[0]) - 3) < 1e-9


@pytest.mark.parametrize("rows,lam,Z", [
    ([[2, 0], [0, 0]], 2, [[1, 0], [0, 0]]),
    (MIXED, 0, [[1, 0, 0], [0, 1, 0], [0, 0, 0]]),
    ([[1, 0], [0, 1]], 1, [[1, 0], [0, 1]]),
])
def test_eigenprojection_at_examples(rows, lam, Z):
    assert exact_equal(eigenprojection_at(mat(rows), CRational(lam)), mat(Z))
    assert close(eigenprojection_at(fmat(rows), complex(lam)), fmat(Z), 1e-12)


def test_components_examples():
    cs = components(mat(MIXED), eigenvalues(mat(MIXED)))
    sp = cs.spectrum
    k0, k2 = find(sp, 0), find(sp, 2)
    assert exact_equal(cs[k0, 0], mat([[1, 0, 0], [0, 1, 0], [0, 0, 0]]))
    assert exact_equal(cs[k0, 1], mat([[0, 1, 0], [0, 0, 0], [0, 0, 0]]))
    assert exact_equal(cs[k2, 0], mat([[0, 0, 0], [0, 0, 0], [0, 0, 1]]))
    assert sp.nus[k0] == 2 and sp.nus[k2] == 1
    cs = components(mat([[2, 0], [0, 0]]), eigenvalues(mat([[2, 0], [0, 0]])))
    assert set(cs.spectrum.nus) == {1}
    cs = components(identity(3, True), eigenvalues(identity(3, True)))
    assert cs.keys() == [(0, 0)] and exact_equal(cs[0, 0], identity(3, True))


def test_components_non_termination_under_wrong_spectrum():
    # claiming 1 is a simple eigenvalue of a Jordan block hides its index
    A = mat([[1, 1], [0, 1]])
    with pytest.raises(NonTermination):
        components(A, Spectrum((CRational(1),), (1,), us=(2,)))


def test_minimal_polynomial_examples():
    sp = components(mat(MIXED), eigenvalues(mat(MIXED))).spectrum
    assert minimal_polynomial(sp) == Poly([0, 0, -2, 1])
    sp = components(identity(2, True), eigenvalues(identity(2, True))).spectrum
    assert minimal_polynomial(sp) == Poly([-1, 1])
    D = mat([[2, 0], [0, 0]])
    assert minimal_polynomial(components(D, eigenvalues(D)).spectrum) == Poly([0, -2, 1])


def test_matrix_function_examples():
    A = mat(MIXED)
    cs = components(A, eigenvalues(A))
    assert exact_equal(matrix_function(cs, poly_values(Poly([0, 1]), cs.spectrum)), A)
    expA = matrix_function(cs, exp_values(cs.spectrum))
    e2 = cmath.exp(2)
    assert close(expA, np.array([[1, 1, 0], [0, 1, 0], [0, 0, e2]], dtype=complex), 1e-14)
    one = matrix_function(cs, poly_values(Poly([1]), cs.spectrum))
    assert exact_equal(one, identity(3, True))


def test_matrix_function_missing_derivative():
    A = mat(MIXED)
    cs = components(A, eigenvalues(A))
    vals = poly_values(Poly([0, 1]), cs.spectrum)
    vals.pop(next(k for k in vals if k[1] == 1))
    with pytest.raises(MissingDerivative):
        matrix_function(cs, vals)


def test_resolvent_matches_inverse():
    A = mat(MIXED)
    cs = components(A, eigenvalues(A))
    z = CRational(5)
    R = matrix_function(cs, resolvent_values(5, cs.spectrum))
    assert exact_equal(R, inverse(identity(3, True) * z - A))


def test_closed_form_eigenprojection_examples():
    A = mat(MIXED)
    sp = Spectrum((CRational(0), CRational(2)), (2, 1), us=(2, 1))
    assert exact_equal(eigenprojection_from_eigenvalues(A, sp, 2), mat([[1, 0, 0], [0, 1, 0], [0, 0, 0]]))
    N = mat([[0, 1], [0, 0]])
    assert exact_equal(eigenprojection_from_eigenvalues(N, Spectrum((CRational(0),), (2,)), 2),
                       identity(2, True))
    I = identity(2, True)
    assert exact_equal(eigenprojection_from_eigenvalues(I, Spectrum((CRational(1),), (2,), us=(1,)), 1),
                       zeros(2, True))


def test_closed_form_component_examples():
    D = mat([[2, 0], [0, 0]])
    sp = Spectrum((CRational(2), CRational(0)), (1, 1))
    assert exact_equal(component_from_eigenvalues(D, sp, 0, 0), mat([[1, 0], [0, 0]]))
    J = mat([[1, 1], [0, 1]])
    assert exact_equal(component_from_eigenvalues(J, Spectrum((CRational(1),), (2,)), 0, 0),
                       identity(2, True))
    A = mat(MIXED)
    sp = Spectrum((CRational(0), CRational(2)), (2, 1), us=(2, 1))
    assert exact_equal(component_from_eigenvalues(A, sp, 0, 1), mat([[0, 1, 0], [0, 0, 0], [0, 0, 0]]))


@pytest.mark.parametrize("rows,p", [
    ([[1, 1], [0, 1]], 2),
    ([[2, 0], [0, 3]], 3),
    ([[-1, 1], [0, -1]], 2),
])
def test_power_index_examples(rows, p):
    A = mat(rows)
    spA = components(A, eigenvalues(A)).spectrum
    Ap = mat_pow(A, p)
    spAp = components(Ap, eigenvalues(Ap)).spectrum
    assert check_power_indices(spA, spAp, p).ok


def test_power_index_check_flags_mismatch():
    spA = Spectrum((CRational(1),), (2,), nus=(2,))
    wrong = Spectrum((CRational(1),), (2,), nus=(1,))
    assert not check_power_indices(spA, wrong, 2).ok


# properties

@given(cases)
def test_component_properties_exact(case):
    A = case.A
    n = A.shape[0]
    cs = components(A, eigenvalues(A))
    sp = cs.spectrum
    table = case.spectrum_table()
    assert {lam: (m, nu) for lam, m, nu in zip(sp.lambdas, sp.mults, sp.nus)} == table
    I = identity(n, True)
    total = sum((cs[k, 0] for k in range(sp.s)), zeros(n, True))
    assert exact_equal(total, I)
    for k in range(sp.s):
        for l in range(sp.s):
            if k != l:
                assert not any((cs[k, 0] @ cs[l, 0]).flat)
    for k, j in cs.keys():
        assert exact_equal(cs[k, j], component_from_eigenvalues(A, sp, k, j))
    recon = sum((cs[k, 0] * sp.lambdas[k] + (cs[k, 1] if sp.nus[k] > 1 else zeros(n, True))
                 for k in range(sp.s)), zeros(n, True))
    assert exact_equal(recon, A)
    square = matrix_function(cs, poly_values(Poly([0, 0, 1]), sp))
    assert exact_equal(square, A @ A)
    vecs = np.array([to_float(cs[key]).ravel() for key in cs.keys()])
    assert np.linalg.matrix_rank(vecs) == len(cs.keys())


@given(cases)
def test_minimal_polynomial_properties(case):
    A = case.A
    sp = components(A, eigenvalues(A)).spectrum
    psi_hat = minimal_polynomial(sp)
    assert psi_hat.degree == sum(sp.nus)
    assert not any(poly_eval_matrix(psi_hat, A).flat)
    assert (faddeev(A).poly % psi_hat).is_zero()
    k0 = sp.find(CRational(0))
    assert (sp.nus[k0] if k0 is not None else 0) == index_of(A).nu


@given(cases, st.integers(2, 3))
def test_minimal_polynomial_of_power(case, u):
    A = case.A
    sp = components(A, eigenvalues(A)).spectrum
    psi_u = minimal_polynomial_of_power(sp, u)
    Au = mat_pow(A, u)
    assert not any(poly_eval_matrix(psi_u, Au).flat)
    spu = components(Au, eigenvalues(Au)).spectrum
    assert psi_u == minimal_polynomial(spu)


@given(cases)
def test_closed_form_matches_annihilator_exactly(case):
    A = case.A
    sp = eigenvalues(A)
    u = max(index_of(A).nu, 1)
    assert exact_equal(eigenprojection_from_eigenvalues(A, sp, u), eigenprojection(A).Z)


@given(cases)
def test_float_components_reconstruct(case):
    F = to_float(case.A)
    cs = components(F, eigenvalues(F))
    recon = matrix_function(cs, poly_values(Poly([0j, 1 + 0j]), cs.spectrum))
    assert close(recon, F)
    assert sorted(cs.spectrum.mults) == sorted(m for m, _ in case.spectrum_table().values())
