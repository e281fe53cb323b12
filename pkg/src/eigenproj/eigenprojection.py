"""Eigenprojection of a square matrix from an annihilating polynomial of A**u.

For u >= ind A and any nonzero polynomial phi with phi(A**u) = 0, write
phi(x) = x**t (x**q + p_1 x**(q-1) + ... + p_q) with p_q != 0 and set
h(x) = (x**q + ... + p_q) / p_q. Then Z = h(A**u) is the projection onto
N(A**ind) along R(A**ind).

Three independent constructions are provided as cross-checks: the adjugate
coefficient formula from the Faddeev recurrence, the resolvent limit
lim (I + tau A**u)**-1, and the basis formula X (Y* X)**-1 Y*.
"""

from __future__ import annotations

import dataclasses
import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .charpoly import CharData, faddeev, index_of
from .errors import (
    IllConditioned, InvariantViolation, NoConvergence, NotAnnihilating, Singular, ZeroPolynomial,
)
from .numcore import (
    ONE, CRational, Poly, ToleranceConfig, ctranspose, eye_like, exact_scalar, inverse, is_exact,
    is_zero_matrix, mat_pow, negligible, max_abs, norm_inf, nullspace, poly_eval_matrix,
    poly_scale, rank, resolve_tol, to_float, zeros_like,
)
from .report import CheckReport


class Source(str, enum.Enum):
    ANNIHILATOR = "annihilator"
    ADJUGATE = "adjugate"
    LIMIT = "limit"
    BASIS = "basis"
    EIGENVALUE_PRODUCT = "eigenvalue-product"


@dataclass(frozen=True)
class Eigenprojection:
    Z: np.ndarray
    u_used: int
    source: Source
    provenance: str = ""


@dataclass(frozen=True)
class AnnihilatorParts:
    """phi(x) = lead * x**t * (x**q + p[0] x**(q-1) + ... + p[q-1])."""

    t: int
    q: int
    p: tuple
    lead: object = 1

    @property
    def exact(self) -> bool:
        return isinstance(self.lead, CRational)

    def poly(self) -> Poly:
        one = ONE if self.exact else 1 + 0j
        monic = list(reversed(self.p)) + [one]
        return Poly([one * 0] * self.t + [c * self.lead for c in monic])


def check_tol(tol: ToleranceConfig) -> ToleranceConfig:
    """Tolerances for rank tests on computed results.

    A computed Z is only trusted to tau_zero, so its rank is read with a
    pivot threshold no finer than that.
    """
    if tol.is_exact:
        return tol
    return dataclasses.replace(tol, tau_rank=max(tol.tau_rank, tol.tau_zero))


def split_annihilator(phi: Poly, tol: ToleranceConfig | None = None,
                      scale: float | None = 1.0) -> AnnihilatorParts:
    """Strip the power of x from phi and normalize the rest to monic.

    Under FLOAT, c_k counts as zero when |c_k| scale**k is at most
    ``coef_tol`` times the largest such term; pass the norm of the matrix
    the polynomial annihilates as ``scale``. ``scale=None`` takes the
    coefficients as given (already cleaned, e.g. by ``faddeev``).
    """
    if not phi.is_exact and scale is not None:
        tol = tol if tol is not None and not tol.is_exact else ToleranceConfig()
        phi = phi.trim(tol, scale)
    if phi.is_zero():
        raise ZeroPolynomial("annihilating polynomial is identically zero")
    cs = phi.coeffs
    t = next(i for i, c in enumerate(cs) if c)
    rest = cs[t:]
    lead = rest[-1]
    monic = [c / lead for c in rest]
    q = len(monic) - 1
    p = tuple(monic[q - i] for i in range(1, q + 1))
    return AnnihilatorParts(t, q, p, lead)


def build_h(parts: AnnihilatorParts) -> Poly:
    """h(x) = (x**q + p_1 x**(q-1) + ... + p_q) / p_q, so h(0) = 1; h = 1 when q = 0."""
    one = ONE if parts.exact else 1 + 0j
    if parts.q == 0:
        return Poly([one])
    pq = parts.p[-1]
    return Poly([c / pq for c in reversed(parts.p)] + [one / pq])


def _from_annihilator(A, Au, u, phi, tol, check=True, label=None,
                      ref=None, trim=True) -> Eigenprojection:
    if not phi.is_exact and is_exact(Au):
        A, Au = to_float(A), to_float(Au)
    if ref is None and not is_exact(Au):
        ref = norm_inf(A) ** u
    if negligible(Au, tol, ref):
        Au = zeros_like(Au)
    scale = poly_scale(phi, Au)
    if not is_zero_matrix(poly_eval_matrix(phi, Au), tol, max(scale, 1.0)):
        raise NotAnnihilating(f"phi(A^{u}) is not zero")
    h = build_h(split_annihilator(phi, tol, norm_inf(Au) if trim else None))
    Z = poly_eval_matrix(h, Au)
    if not is_exact(Z) and is_exact(Au):
        Au = to_float(Au)
    if check:
        zs = norm_inf(Z)
        hs = max(poly_scale(h, Au), 1.0)
        if not is_zero_matrix(Z @ Z - Z, tol, hs * (1.0 + zs)):
            raise InvariantViolation("Z is not idempotent (u < ind A or tolerance breakdown)")
        ann = hs * max(norm_inf(Au), 1.0)
        if not (is_zero_matrix(Au @ Z, tol, ann) and is_zero_matrix(Z @ Au, tol, ann)):
            raise InvariantViolation("A^u Z != 0 (u < ind A or tolerance breakdown)")
        n = A.shape[0]
        ct = check_tol(tol)
        # a nonzero idempotent has norm >= 1, so a small Z is rounding noise
        rZ = rank(Z, ct) if zs >= 0.5 else 0
        if rank(Au, ct, ref) + rZ != n:
            raise InvariantViolation("rank A^u + rank Z != n")
    prov = f"Z = h(A^u), u={u}, phi={label or phi}"
    return Eigenprojection(Z, u, Source.ANNIHILATOR, prov)


def eigenprojection_from_annihilator(A: np.ndarray, u: int, phi: Poly,
                                     tol: ToleranceConfig | None = None,
                                     check: bool = True) -> Eigenprojection:
    """Z = h(A**u) for a nonzero annihilating polynomial ``phi`` of A**u.

    ``u >= ind A`` is the caller's responsibility; a violated precondition
    usually surfaces as InvariantViolation. Raises NotAnnihilating when
    phi(A**u) is not zero.
    """
    tol = resolve_tol(tol, A)
    return _from_annihilator(A, mat_pow(A, u), u, phi, tol, check)


def eigenprojection(A: np.ndarray, tol: ToleranceConfig | None = None) -> Eigenprojection:
    """Eigenprojection with u = multiplicity of the zero eigenvalue and phi = charpoly(A**u).

    Falls back to u = n when the Faddeev coefficients make that multiplicity
    doubtful. Under FLOAT the index from the rank sequence is tried first:
    every extra power multiplies the rounding error of h(A**u), and the
    multiplicity is only used if that attempt fails its invariant checks.
    """
    tol = resolve_tol(tol, A)
    n = A.shape[0]
    cd = faddeev(A, tol)
    if cd.v == 0 and cd.conditioned:
        return Eigenprojection(zeros_like(A), 0, Source.ANNIHILATOR,
                               "A nonsingular (charpoly constant term nonzero): Z = 0")
    us = [max(cd.v, 1) if cd.conditioned else n]
    if not is_exact(A):
        u_min = max(index_of(A, tol).nu, 1)
        if u_min < us[0]:
            us.insert(0, u_min)
    for i, u in enumerate(us):
        Au = mat_pow(A, u)
        ref = norm_inf(A) ** u
        phi = faddeev(Au, tol, ref).poly
        try:
            return _from_annihilator(A, Au, u, phi, tol, label=f"charpoly(A^{u})",
                                     ref=ref, trim=False)
        except InvariantViolation:
            if i == len(us) - 1:
                raise


def oracle_adjugate(A: np.ndarray, u: int, cd: CharData | None = None,
                    tol: ToleranceConfig | None = None) -> np.ndarray:
    """Z = I - (I - A_{n-v} / a_{n-v})**u from the Faddeev coefficients of A."""
    tol = resolve_tol(tol, A)
    cd = cd if cd is not None else faddeev(A, tol)
    if not cd.conditioned:
        raise IllConditioned("a_{n-v} is too close to the zero threshold")
    n, v = cd.n, cd.v
    I = eye_like(A)
    if v == 0:
        return zeros_like(A)
    M = cd.adjugate_coeff(n - v) / cd.a[n - v]
    return I - mat_pow(I - M, u)


DEFAULT_TAU_SCHEDULE = tuple(10.0 ** k for k in range(1, 9))


def oracle_limit(A: np.ndarray, u: int, tau_schedule: Sequence[float] | None = None,
                 tol: ToleranceConfig | None = None) -> np.ndarray:
    """Z = lim (I + tau A**u)**-1 as tau grows (FLOAT; EXACT input is converted).

    tau is measured relative to ||A**u||. The iterates are expanded in 1/tau,
    so Neville extrapolation to 1/tau = 0 is applied along the schedule; the
    first diagonal estimate that agrees with its predecessor within
    ``tau_zero`` (times 1 + ||Z||) is returned.
    """
    A = to_float(A)
    tol = resolve_tol(tol, A)
    taus = sorted(tau_schedule or DEFAULT_TAU_SCHEDULE)
    Au = mat_pow(A, u)
    I = eye_like(A)
    s = norm_inf(Au)
    if s == 0.0:
        return I
    hs, rows = [], []
    best, best_diff = None, np.inf
    prev_diag = None
    for t in taus:
        h = s / t
        try:
            first = inverse(I + Au / h, tol)
        except Singular:
            # -h is an eigenvalue of A^u; drop this point from the schedule
            continue
        hs.append(h)
        i = len(hs) - 1
        row = [first]
        for k in range(1, i + 1):
            prev = rows[i - 1][k - 1]
            ratio = hs[i - k] / h
            row.append(row[k - 1] + (row[k - 1] - prev) / (ratio - 1.0))
        rows.append(row)
        diag = row[-1]
        if prev_diag is not None:
            diff = max_abs(diag - prev_diag)
            if diff < best_diff:
                best, best_diff = diag, diff
            if diff <= tol.tau_zero * (1.0 + norm_inf(diag)):
                return diag
        prev_diag = diag
    raise NoConvergence(
        f"resolvent limit did not settle (best successive difference {best_diff:.3g}); u < ind A?")


def oracle_basis(A: np.ndarray, nu: int | None = None,
                 tol: ToleranceConfig | None = None) -> np.ndarray:
    """Z = X (Y* X)**-1 Y* with X, Y null-space bases of A**nu and (A*)**nu."""
    tol = resolve_tol(tol, A)
    if nu is None:
        nu = index_of(A, tol).nu
    if nu == 0:
        return zeros_like(A)
    X = nullspace(mat_pow(A, nu), tol)
    Y = nullspace(mat_pow(ctranspose(A), nu), tol)
    if X.shape[1] == 0:
        return zeros_like(A)
    Ys = ctranspose(Y)
    G = Ys @ X
    return X @ inverse(G, tol) @ Ys


def _alpha_samples(exact: bool):
    if exact:
        return [exact_scalar(1), exact_scalar(-1), exact_scalar(1j), exact_scalar("1/1000")]
    return [1.0 + 0j, -1.0 + 0j, 1j, 0.001 + 0j]


def verify_characterizations(A: np.ndarray, Z: np.ndarray,
                             tol: ToleranceConfig | None = None) -> CheckReport:
    """Check a candidate Z against the standard equivalent conditions.

    Covers idempotency, A^nu Z = Z A^nu = 0, rank A^nu + rank Z = n,
    nonsingularity of A + alpha Z for sampled alpha, AZ = ZA, nilpotency of AZ,
    and Z != 0 for singular A.
    """
    if is_exact(A) != is_exact(Z):
        A, Z = to_float(A), to_float(Z)
    tol = resolve_tol(tol, A)
    n = A.shape[0]
    info = index_of(A, tol)
    Anu = mat_pow(A, info.nu)
    za = norm_inf(Z)
    a = max(norm_inf(A), 1.0)
    rep = CheckReport("characterizations")
    rep.add("idempotent", is_zero_matrix(Z @ Z - Z, tol, (1.0 + za) ** 2))
    s = max(norm_inf(A) ** info.nu, 1.0) * (1.0 + za)
    rep.add("A^nu Z = 0", is_zero_matrix(Anu @ Z, tol, s))
    rep.add("Z A^nu = 0", is_zero_matrix(Z @ Anu, tol, s))
    ct = check_tol(tol)
    rA, rZ = rank(Anu, ct, ref=norm_inf(A) ** info.nu), rank(Z, ct)
    rep.add("rank A^nu + rank Z = n", rA + rZ == n, f"{rA} + {rZ} vs {n}")
    bad = [alpha for alpha in _alpha_samples(is_exact(A)) if rank(A + Z * alpha, tol) < n]
    rep.add("A + alpha Z nonsingular", not bad, f"failed alpha: {bad}" if bad else "")
    rep.add("AZ = ZA", is_zero_matrix(A @ Z - Z @ A, tol, a * (1.0 + za)))
    rep.add("AZ nilpotent", is_zero_matrix(mat_pow(A @ Z, n), tol, max(a * za, 1.0) ** n))
    singular = rank(A, tol) < n
    rep.add("singular A => Z != 0", (not singular) or not is_zero_matrix(Z, tol, 1.0))
    return rep
