"""Markov chain limits and Laplacian forest projections via the eigenprojection."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .eigenprojection import eigenprojection
from .errors import NotLaplacian, NotStochastic
from .numcore import (
    ToleranceConfig, as_matrix, exact_scalar, eye_like, is_exact, max_abs, resolve_tol, to_float,
)


def _real_parts(M: np.ndarray, tol: ToleranceConfig, err):
    """Real parts of the entries; raises ``err`` on a non-real entry."""
    if is_exact(M):
        if any(x.im for x in M.flat):
            raise err("entries must be real")
        return M
    if np.max(np.abs(M.imag), initial=0.0) > tol.tau_zero * max(max_abs(M), 1.0):
        raise err("entries must be real")
    return M.real.astype(complex)


def _row_sums(M: np.ndarray):
    return [sum(row[1:], row[0]) for row in M]


@dataclass(frozen=True)
class StochasticMatrix:
    """A validated row-stochastic matrix; rows are renormalized to sum to 1."""

    P: np.ndarray

    @classmethod
    def validate(cls, P, tol: ToleranceConfig | None = None) -> "StochasticMatrix":
        P = as_matrix(P)
        tol = resolve_tol(tol, P)
        n = P.shape[0]
        P = _real_parts(P, tol, NotStochastic)
        slack = tol.tau_zero * n
        if is_exact(P):
            if any(x.re < 0 for x in P.flat):
                raise NotStochastic("negative transition probability")
        elif np.min(P.real) < -slack:
            raise NotStochastic("negative transition probability")
        sums = _row_sums(P)
        for i, s in enumerate(sums):
            if abs(complex(s) - 1) > slack or (is_exact(P) and s != 1):
                raise NotStochastic(f"row {i} sums to {complex(s).real:g}, not 1")
        if not is_exact(P):
            P = np.clip(P.real, 0.0, None)
            P = (P / P.sum(axis=1, keepdims=True)).astype(complex)
        return cls(P)


@dataclass(frozen=True)
class LaplacianMatrix:
    """A validated weighted-digraph Laplacian: zero row sums, off-diagonals <= 0."""

    L: np.ndarray

    @classmethod
    def validate(cls, L, tol: ToleranceConfig | None = None) -> "LaplacianMatrix":
        L = as_matrix(L)
        tol = resolve_tol(tol, L)
        n = L.shape[0]
        L = _real_parts(L, tol, NotLaplacian)
        slack = 0.0 if is_exact(L) else tol.tau_zero * n * max(max_abs(L), 1.0)
        for i in range(n):
            for j in range(n):
                if i != j and complex(L[i, j]).real > slack:
                    raise NotLaplacian(f"off-diagonal entry ({i}, {j}) is positive")
        for i, s in enumerate(_row_sums(L)):
            if abs(complex(s)) > slack:
                raise NotLaplacian(f"row {i} does not sum to 0")
        return cls(L)


def markov_limit(P, tol: ToleranceConfig | None = None) -> np.ndarray:
    """Limiting matrix of mean probabilities, the eigenprojection of I - P."""
    P = StochasticMatrix.validate(P, tol).P
    tol = resolve_tol(tol, P)
    return eigenprojection(eye_like(P) - P, tol).Z


def cesaro_oracle(P, k: int) -> np.ndarray:
    """(1/k) sum_{t<k} P**t in FLOAT, by binary doubling of the partial sums."""
    if k < 1:
        raise ValueError("k must be positive")
    P = to_float(as_matrix(P)) if is_exact(as_matrix(P)) else as_matrix(P)
    I = np.eye(P.shape[0], dtype=complex)
    S = np.zeros_like(I)   # sum of P**t for t < m
    Pm = I                 # P**m
    for bit in bin(k)[2:]:
        S = S + Pm @ S
        Pm = Pm @ Pm
        if bit == "1":
            S = I + P @ S
            Pm = P @ Pm
    return S / k


def laplacian_forest_projection(L, tol: ToleranceConfig | None = None) -> np.ndarray:
    """Matrix of maximum converging forests of a weighted digraph, the eigenprojection of L."""
    L = LaplacianMatrix.validate(L, tol).L
    tol = resolve_tol(tol, L)
    return eigenprojection(L, tol).Z


def is_row_stochastic(M: np.ndarray, atol: float) -> bool:
    if is_exact(M):
        return all(s == exact_scalar(1) for s in _row_sums(M)) and all(x.re >= 0 and not x.im for x in M.flat)
    return bool(np.all(np.abs(M.sum(axis=1) - 1) <= atol) and np.all(M.real >= -atol)
                and np.all(np.abs(M.imag) <= atol))
