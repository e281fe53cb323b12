"""Drazin and group inverses built from the eigenprojection Z."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .charpoly import index_of
from .eigenprojection import eigenprojection
from .errors import IndexTooHigh, ZeroAlpha
from .numcore import (
    ToleranceConfig, eye_like, inverse, is_exact, is_zero_matrix, mat_pow, norm_inf,
    resolve_tol, scalar_like, to_float,
)
from .report import CheckReport


class DrazinMethod(str, enum.Enum):
    SHIFTED = "shifted"   # (A + alpha Z)^-1 (I - Z)
    GROUP = "group"       # (A + Z)^-1 - Z, index <= 1
    POWER = "power"       # A^(nu-1) ((A^nu + Z)^-1 - Z)


@dataclass(frozen=True)
class DrazinResult:
    AD: np.ndarray
    alpha_used: object
    method: DrazinMethod


def default_alpha(A: np.ndarray):
    """1, or ||A||_inf for FLOAT matrices whose norm is off from 1 by more than 1e3."""
    if not is_exact(A):
        a = norm_inf(A)
        if a > 1e3 or 0 < a < 1e-3:
            return complex(a)
    return scalar_like(A, 1)


def drazin_shifted(A: np.ndarray, Z: np.ndarray, alpha=None,
                   tol: ToleranceConfig | None = None) -> DrazinResult:
    """A^D = (A + alpha Z)^-1 (I - Z) for any alpha != 0."""
    tol = resolve_tol(tol, A)
    if alpha is None:
        alpha = default_alpha(A)
    alpha = scalar_like(A, alpha)
    if not alpha:
        raise ZeroAlpha("alpha must be nonzero")
    I = eye_like(A)
    AD = inverse(A + Z * alpha, tol) @ (I - Z)
    return DrazinResult(AD, alpha, DrazinMethod.SHIFTED)


def group_inverse(A: np.ndarray, Z: np.ndarray, tol: ToleranceConfig | None = None,
                  nu: int | None = None) -> np.ndarray:
    """A^# = (A + Z)^-1 - Z; requires ind A <= 1."""
    tol = resolve_tol(tol, A)
    if nu is None:
        nu = index_of(A, tol).nu
    if nu > 1:
        raise IndexTooHigh(f"group inverse needs ind A <= 1, got {nu}")
    return inverse(A + Z, tol) - Z


def drazin_power(A: np.ndarray, nu: int, Z: np.ndarray,
                 tol: ToleranceConfig | None = None) -> DrazinResult:
    """A^D = A^(nu-1) ((A^nu + Z)^-1 - Z) with nu = ind A.

    nu = 0 returns the ordinary inverse.
    """
    tol = resolve_tol(tol, A)
    if nu == 0:
        return DrazinResult(inverse(A, tol), None, DrazinMethod.POWER)
    Anu = mat_pow(A, nu)
    AD = mat_pow(A, nu - 1) @ (inverse(Anu + Z, tol) - Z)
    return DrazinResult(AD, None, DrazinMethod.POWER)


def drazin_inverse(A: np.ndarray, tol: ToleranceConfig | None = None) -> DrazinResult:
    """Convenience: eigenprojection followed by the shifted-inverse formula."""
    Z = eigenprojection(A, tol).Z
    return drazin_shifted(A, Z, tol=tol)


def verify_drazin_axioms(A: np.ndarray, AD: np.ndarray, nu: int,
                         tol: ToleranceConfig | None = None,
                         Z: np.ndarray | None = None) -> CheckReport:
    """A AD = AD A, AD A AD = AD, A^(nu+1) AD = A^nu, and I - A AD = Z."""
    if is_exact(A) != is_exact(AD):
        A, AD = to_float(A), to_float(AD)
    tol = resolve_tol(tol, A)
    if Z is None:
        Z = eigenprojection(A, tol).Z
    elif is_exact(Z) != is_exact(A):
        Z = to_float(Z)
    a, d = max(norm_inf(A), 1.0), max(norm_inf(AD), 1.0)
    rep = CheckReport("drazin axioms")
    rep.add("A AD = AD A", is_zero_matrix(A @ AD - AD @ A, tol, a * d))
    rep.add("AD A AD = AD", is_zero_matrix(AD @ A @ AD - AD, tol, a * d * d))
    rep.add("A^(nu+1) AD = A^nu",
            is_zero_matrix(mat_pow(A, nu + 1) @ AD - mat_pow(A, nu), tol, a ** (nu + 1) * d))
    rep.add("I - A AD = Z", is_zero_matrix(eye_like(A) - A @ AD - Z, tol, a * d + 1.0))
    return rep
