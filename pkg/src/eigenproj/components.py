"""Spectrum, matrix components Z_kj, minimal polynomial and matrix functions.

Z_k0 is the eigenprojection of A - lambda_k I; the higher components are
Z_kj = (A - lambda_k I)**j Z_k0 / j!, and the chain stops at the first zero
product, whose position is the index nu_k. For any f with the needed
derivatives, f(A) = sum_k sum_{j < nu_k} f^(j)(lambda_k) Z_kj.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .charpoly import faddeev
from .eigenprojection import _from_annihilator
from .errors import IrrationalSpectrum, MissingDerivative, NonTermination
from .numcore import (
    CRational, Poly, ToleranceConfig, exact_scalar, eye_like, is_exact, is_zero_matrix,
    mat_pow, norm_inf, rank, resolve_tol, to_float,
)
from .report import CheckReport
from .roots import aberth, cluster_roots, exact_roots, polish_multiple_root


@dataclass(frozen=True)
class Spectrum:
    """Distinct eigenvalues with multiplicities, indices and index bounds.

    ``nus`` is None until filled by :func:`components` or the caller.
    ``us`` defaults to the algebraic multiplicities. ``diameters`` records
    the spread of each FLOAT root cluster (0 for exact values).
    """

    lambdas: tuple
    mults: tuple
    nus: tuple | None = None
    us: tuple | None = None
    diameters: tuple | None = None

    def __post_init__(self):
        if self.us is None:
            object.__setattr__(self, "us", tuple(self.mults))
        if self.diameters is None:
            object.__setattr__(self, "diameters", tuple(0.0 for _ in self.lambdas))

    @property
    def s(self) -> int:
        return len(self.lambdas)

    @property
    def exact(self) -> bool:
        return all(isinstance(x, CRational) for x in self.lambdas)

    def find(self, value, radius: float = 0.0):
        for k, lam in enumerate(self.lambdas):
            if lam == value if radius == 0.0 else abs(complex(lam) - complex(value)) <= radius:
                return k
        return None

    def with_nus(self, nus) -> "Spectrum":
        return replace(self, nus=tuple(nus))


@dataclass(frozen=True)
class ComponentSet:
    spectrum: Spectrum
    Z: dict = field(default_factory=dict)

    def __getitem__(self, key):
        return self.Z[key]

    def keys(self):
        return [(k, j) for k in range(self.spectrum.s) for j in range(self.spectrum.nus[k])]


def _is_zero_value(x, tol: ToleranceConfig, scale: float) -> bool:
    if isinstance(x, CRational):
        return not x
    return abs(complex(x)) <= max(tol.tau_cluster, tol.tau_zero) * scale


def _shift_ref(A: np.ndarray, lam, u: int) -> float:
    """Natural magnitude of (A - lam I)**u, used to spot powers that are noise."""
    return (norm_inf(A) + abs(complex(lam))) ** u


def multiplicity_at(A: np.ndarray, lam, tol: ToleranceConfig | None = None) -> int:
    """Algebraic multiplicity of ``lam`` as n - rank (A - lam I)**n."""
    n = A.shape[0]
    B = A - eye_like(A) * (lam if is_exact(A) else complex(lam))
    return n - rank(mat_pow(B, n), tol, ref=_shift_ref(A, lam, n))


def eigenvalues(A: np.ndarray, tol: ToleranceConfig | None = None,
                override=None) -> Spectrum:
    """Distinct eigenvalues and algebraic multiplicities of ``A``.

    FLOAT: Aberth roots of the Faddeev polynomial (zero roots split off by the
    zero policy), clustered and polished. EXACT: square-free decomposition,
    rounding of float roots and exact verification; IrrationalSpectrum when a
    root is not a Gaussian rational. ``override`` supplies the eigenvalues
    directly; multiplicities are then measured by rank.
    """
    tol = resolve_tol(tol, A)
    n = A.shape[0]
    if override is not None:
        vals = []
        for x in override:
            x = exact_scalar(x) if is_exact(A) else complex(x)
            if x not in vals:
                vals.append(x)
        mults = [multiplicity_at(A, x, tol) for x in vals]
        if sum(mults) != n or 0 in mults:
            raise ValueError(f"eigenvalue override does not match the spectrum (multiplicities {mults})")
        return Spectrum(tuple(vals), tuple(mults))

    cd = faddeev(A, tol)
    v = cd.v
    lambdas, mults, diams = [], [], []
    if v:
        lambdas.append(exact_scalar(0) if is_exact(A) else 0j)
        mults.append(v)
        diams.append(0.0)
    rest = list(reversed(cd.a[: cd.n - v + 1]))  # ascending coefficients with x**v divided out
    if len(rest) > 1:
        if is_exact(A):
            found = exact_roots(Poly(rest))
            if found is None:
                raise IrrationalSpectrum("characteristic polynomial has non-rational roots")
            for lam, m in found:
                lambdas.append(lam)
                mults.append(m)
                diams.append(0.0)
        else:
            real = all(complex(c).imag == 0 for c in rest)
            for center, m, dm in cluster_roots(aberth(rest), tol.tau_cluster):
                lam = polish_multiple_root(rest, center, m)
                if real and abs(lam.imag) <= tol.tau_zero * max(1.0, abs(lam)):
                    lam = complex(lam.real, 0.0)
                lambdas.append(lam)
                mults.append(m)
                diams.append(dm)
    return Spectrum(tuple(lambdas), tuple(mults), diameters=tuple(diams))


def _shift(A, lam):
    return A - eye_like(A) * (lam if is_exact(A) else complex(lam))


def _common(A, lam):
    if is_exact(A) and not isinstance(lam, CRational):
        A = to_float(A)
    return A


def eigenprojection_at(A: np.ndarray, lam, u: int | None = None,
                       tol: ToleranceConfig | None = None) -> np.ndarray:
    """Eigenprojection of A - lam I, via charpoly((A - lam I)**u).

    ``u`` defaults to the algebraic multiplicity of ``lam``.
    """
    A = _common(A, lam)
    tol = resolve_tol(tol, A)
    if u is None:
        u = multiplicity_at(A, lam, tol)
    B = _shift(A, lam)
    Bu = mat_pow(B, u)
    ref = _shift_ref(A, lam, u)
    phi = faddeev(Bu, tol, ref).poly
    return _from_annihilator(B, Bu, u, phi, tol, ref=ref, trim=False).Z


def components(A: np.ndarray, spectrum: Spectrum,
               tol: ToleranceConfig | None = None) -> ComponentSet:
    """All components Z_kj; fills the indices nu_k in the returned spectrum."""
    if is_exact(A) and not spectrum.exact:
        A = to_float(A)
    tol = resolve_tol(tol, A)
    Z = {}
    nus = []
    for k, lam in enumerate(spectrum.lambdas):
        B = _shift(A, lam)
        Z0 = eigenprojection_at(A, lam, spectrum.us[k], tol)
        Z[(k, 0)] = Z0
        zs, bs = norm_inf(Z0), norm_inf(B)
        M = Z0
        fact = 1
        for j in range(1, spectrum.mults[k] + 1):
            M = B @ M
            if is_zero_matrix(M, tol, zs * bs ** j):
                nus.append(j)
                break
            fact *= j
            Z[(k, j)] = M / fact
        else:
            raise NonTermination(
                f"(A - lambda I)^j Z_k0 never vanished for lambda={lam} up to j={spectrum.mults[k]}")
    return ComponentSet(spectrum.with_nus(nus), Z)


def minimal_polynomial(spectrum: Spectrum) -> Poly:
    """prod_k (x - lambda_k)**nu_k, expanded."""
    if spectrum.nus is None:
        raise ValueError("spectrum indices are not filled")
    return Poly.from_roots(list(spectrum.lambdas), list(spectrum.nus))


def _power_key(lam, p, exact):
    return lam ** p if exact else complex(lam) ** p


def minimal_polynomial_of_power(spectrum: Spectrum, u: int,
                                tol: ToleranceConfig | None = None) -> Poly:
    """Minimal polynomial of A**u from the spectrum of A.

    A nonzero eigenvalue keeps its index under powers (largest one when two
    eigenvalues share a u-th power); the zero eigenvalue gets ceil(nu/u).
    """
    if spectrum.nus is None:
        raise ValueError("spectrum indices are not filled")
    exact = spectrum.exact
    tol = tol or (ToleranceConfig.exact() if exact else ToleranceConfig())
    radius = tol.tau_cluster * max(1.0, max(abs(complex(x)) ** u for x in spectrum.lambdas))
    mus, idx = [], []
    for lam, nu in zip(spectrum.lambdas, spectrum.nus):
        zero = _is_zero_value(lam, tol, 1.0)
        mu = (exact_scalar(0) if exact else 0j) if zero else _power_key(lam, u, exact)
        need = -(-nu // u) if zero else nu
        if u == 0:
            mu, need = (exact_scalar(1) if exact else 1 + 0j), 1
        hit = next((i for i, m in enumerate(mus)
                    if (m == mu if exact else abs(m - mu) <= radius)), None)
        if hit is None:
            mus.append(mu)
            idx.append(need)
        else:
            idx[hit] = max(idx[hit], need)
    return Poly.from_roots(mus, idx)


def exp_values(spectrum: Spectrum) -> dict:
    """f = exp: every derivative equals exp(lambda_k)."""
    return {(k, j): cmath.exp(complex(lam))
            for k, lam in enumerate(spectrum.lambdas) for j in range(spectrum.nus[k])}


def poly_values(p: Poly, spectrum: Spectrum) -> dict:
    out = {}
    for k, lam in enumerate(spectrum.lambdas):
        d = p
        for j in range(spectrum.nus[k]):
            out[(k, j)] = d(lam)
            d = d.derivative()
    return out


def resolvent_values(z, spectrum: Spectrum) -> dict:
    """f(x) = 1/(z - x): f^(j)(x) = j! / (z - x)**(j+1); z off the spectrum."""
    exact = spectrum.exact and not isinstance(z, (float, complex))
    z = exact_scalar(z) if exact else complex(z)
    out = {}
    for k, lam in enumerate(spectrum.lambdas):
        w = z - (lam if exact else complex(lam))
        if not w:
            raise ValueError("resolvent point lies on the spectrum")
        for j in range(spectrum.nus[k]):
            fj = math.factorial(j)
            out[(k, j)] = (CRational(fj) if exact else float(fj)) / w ** (j + 1)
    return out


def matrix_function(cs: ComponentSet, f_values: dict) -> np.ndarray:
    """f(A) = sum over (k, j) of f_values[(k, j)] * Z_kj."""
    keys = cs.keys()
    missing = [key for key in keys if key not in f_values]
    if missing:
        raise MissingDerivative(f"no value for (k, j) = {missing[0]}")
    first = cs.Z[keys[0]]
    exact = is_exact(first) and all(isinstance(f_values[key], (CRational, int)) for key in keys)
    out = None
    for key in keys:
        Zkj = cs.Z[key] if exact else to_float(cs.Z[key])
        c = exact_scalar(f_values[key]) if exact else complex(f_values[key])
        term = Zkj * c
        out = term if out is None else out + term
    return out


def eigenprojection_from_eigenvalues(A: np.ndarray, spectrum: Spectrum, u: int,
                                     tol: ToleranceConfig | None = None) -> np.ndarray:
    """Z = prod over nonzero lambda_i of (I - (A / lambda_i)**u)**u_i; empty product is I."""
    A = A if spectrum.exact or not is_exact(A) else to_float(A)
    tol = resolve_tol(tol, A)
    I = eye_like(A)
    P = I
    for lam, ui in zip(spectrum.lambdas, spectrum.us):
        if _is_zero_value(lam, tol, 1.0):
            continue
        lam = lam if is_exact(A) else complex(lam)
        P = P @ mat_pow(I - mat_pow(A / lam, u), ui)
    return P


def component_from_eigenvalues(A: np.ndarray, spectrum: Spectrum, k: int, j: int,
                               tol: ToleranceConfig | None = None) -> np.ndarray:
    """Z_kj = prod_{i != k} (I - ((A - lambda_k I)/(lambda_i - lambda_k))**u_k)**u_i (A - lambda_k I)**j / j!."""
    A = A if spectrum.exact or not is_exact(A) else to_float(A)
    tol = resolve_tol(tol, A)
    lamk = spectrum.lambdas[k] if is_exact(A) else complex(spectrum.lambdas[k])
    B = _shift(A, lamk)
    I = eye_like(A)
    uk = spectrum.us[k]
    P = I
    for i, (lam, ui) in enumerate(zip(spectrum.lambdas, spectrum.us)):
        if i == k:
            continue
        lam = lam if is_exact(A) else complex(lam)
        P = P @ mat_pow(I - mat_pow(B / (lam - lamk), uk), ui)
    return P @ mat_pow(B, j) / math.factorial(j)


def check_power_indices(spectrum_A: Spectrum, spectrum_Ap: Spectrum, p: int,
                        tol: ToleranceConfig | None = None) -> CheckReport:
    """Index of each nonzero lambda_i on A equals the index of lambda_i**p on A**p.

    When several eigenvalues share a p-th power the expected index is the
    largest of theirs; the detail field notes such collisions.
    """
    exact = spectrum_A.exact and spectrum_Ap.exact
    tol = tol or (ToleranceConfig.exact() if exact else ToleranceConfig())
    rep = CheckReport(f"power indices, p={p}")
    scale = max(1.0, max(abs(complex(x)) ** p for x in spectrum_A.lambdas))
    radius = 0.0 if exact else tol.tau_cluster * scale
    for lam, nu in zip(spectrum_A.lambdas, spectrum_A.nus):
        if _is_zero_value(lam, tol, 1.0):
            continue
        mu = _power_key(lam, p, exact)
        sharing = [nu2 for lam2, nu2 in zip(spectrum_A.lambdas, spectrum_A.nus)
                   if not _is_zero_value(lam2, tol, 1.0)
                   and (_power_key(lam2, p, exact) == mu if exact
                        else abs(_power_key(lam2, p, exact) - mu) <= radius)]
        expected = max(sharing)
        where = spectrum_Ap.find(mu, radius)
        got = None if where is None else spectrum_Ap.nus[where]
        note = f"index {nu} on A, {got} on A^{p}"
        if expected != nu:
            note += f" (shared power, expected {expected})"
        rep.add(f"lambda={lam}", got == expected, note)
    return rep


def zero_index(spectrum: Spectrum, tol: ToleranceConfig | None = None) -> int:
    """nu_k at lambda = 0, or 0 when 0 is not an eigenvalue."""
    tol = tol or (ToleranceConfig.exact() if spectrum.exact else ToleranceConfig())
    for lam, nu in zip(spectrum.lambdas, spectrum.nus):
        if _is_zero_value(lam, tol, 1.0):
            return nu
    return 0

