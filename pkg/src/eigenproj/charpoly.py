"""Faddeev-LeVerrier characteristic polynomial, adjugate coefficients and the index."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numcore import (
    EPS, Poly, ToleranceConfig, eye_like, is_exact, mat_pow, max_abs, negligible, norm_inf,
    rank, resolve_tol, zeros_like,
)

# |a_{n-v}| must exceed its rounding-error bound by this factor to be trusted.
COND_MARGIN = 8.0


@dataclass(frozen=True)
class CharData:
    """Output of the Faddeev recurrence.

    ``a[i]`` are the coefficients of det(xI - A) = sum_j a[n-j] x**j, with
    a[0] = 1. ``mats[i]`` are the matrix coefficients of adj(xI - A) =
    sum_j mats[n-1-j] x**j. ``v`` is the multiplicity of 0 as a root.
    Under FLOAT, ``err[i]`` is a running first-order bound on the rounding
    error of a[i]; a trailing coefficient within its bound counts as zero
    and is stored as an exact 0. ``conditioned`` is False when a[n-v]
    clears its bound by less than COND_MARGIN, so v is doubtful.
    """

    a: tuple
    mats: tuple
    v: int
    conditioned: bool = True
    err: tuple | None = None

    @property
    def n(self) -> int:
        return len(self.a) - 1

    @property
    def poly(self) -> Poly:
        return Poly(list(reversed(self.a)))

    def adjugate_coeff(self, i: int) -> np.ndarray:
        """A_i for 0 <= i <= n; A_n is the zero matrix by Cayley-Hamilton."""
        if i == self.n:
            return zeros_like(self.mats[0])
        return self.mats[i]


@dataclass(frozen=True)
class IndexInfo:
    nu: int
    rank_seq: tuple
    r: int


def faddeev(A: np.ndarray, tol: ToleranceConfig | None = None,
            ref: float | None = None) -> CharData:
    """Characteristic polynomial and adjugate coefficients of ``A``.

    A_0 = I, a_k = -trace(A A_{k-1}) / k, A_k = A A_{k-1} + a_k I.
    ``ref`` is an optional natural magnitude of ``A`` (e.g. ||B||**u for
    A = B**u): the entries of A are taken to carry an error of n eps ref,
    and a FLOAT matrix negligible against ``ref`` is treated as zero.
    """
    tol = resolve_tol(tol, A)
    n = A.shape[0]
    exact = is_exact(A)
    if negligible(A, tol, ref):
        A = zeros_like(A)
    I = eye_like(A)
    Ak = I
    a = [I[0, 0]]
    mats = [I]
    if not exact:
        absA = np.abs(A)
        delta = n * EPS * (ref if ref is not None else max_abs(A))
        E = np.zeros((n, n))
        err = [0.0]
    for k in range(1, n + 1):
        M = A @ Ak
        ak = np.trace(M) / (-k)
        a.append(ak)
        if not exact:
            absAk = np.abs(Ak)
            E = absA @ E + n * EPS * (absA @ absAk) + delta * absAk.sum(axis=0)
            ek = float(np.trace(E)) / k + EPS * abs(ak)
            err.append(ek)
            E = E + ek * np.eye(n)
        Ak = M + I * ak
        if k < n:
            mats.append(Ak)

    if exact:
        v = 0
        while v < n and not a[n - v]:
            v += 1
        return CharData(tuple(a), tuple(mats), v, True)

    v = 0
    while v < n and abs(a[n - v]) <= err[n - v]:
        a[n - v] = 0j
        v += 1
    conditioned = v == n or abs(a[n - v]) > COND_MARGIN * err[n - v]
    return CharData(tuple(a), tuple(mats), v, conditioned, tuple(err))


def charpoly(A: np.ndarray, tol: ToleranceConfig | None = None) -> Poly:
    return faddeev(A, tol).poly


def index_of(A: np.ndarray, tol: ToleranceConfig | None = None) -> IndexInfo:
    """ind A from the rank sequence rank A^0, rank A^1, ... (stops by k = n)."""
    n = A.shape[0]
    a = norm_inf(A)
    ranks = [n]
    P = eye_like(A)
    for _ in range(n + 1):
        P = P @ A
        rk = rank(P, tol, ref=a ** (len(ranks)))
        if rk == ranks[-1]:
            break
        ranks.append(rk)
    nu = len(ranks) - 1
    return IndexInfo(nu, tuple(ranks), ranks[-1])


def index_power_check(nu: int, k: int) -> int:
    """Predicted ind A**k = ceil(nu / k)."""
    if k < 1:
        raise ValueError("k must be positive")
    return -(-nu // k)


def index_of_power(A: np.ndarray, k: int, tol: ToleranceConfig | None = None) -> int:
    return index_of(mat_pow(A, k), tol).nu
