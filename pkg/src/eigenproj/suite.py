"""Test matrices A = S J S^-1 with known Jordan structure.

S is an integer matrix with |det S| = 1, so A has Gaussian-integer entries
whenever the eigenvalues are Gaussian integers, and the ground-truth
eigenprojection S P0 S^-1 (P0 = projection onto the zero blocks) is exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .numcore import ONE, ZERO, CRational, exact_scalar, identity, inverse, max_abs, norm_inf, zeros

REAL_POOL = (1, -1, 2, -2, 3)
COMPLEX_POOL = (1j, -1j, 1 + 1j, 1 - 1j, -1 + 1j, 2j)


@dataclass(frozen=True)
class JordanBlock:
    eigenvalue: complex
    size: int


@dataclass
class SuiteCase:
    name: str
    blocks: tuple
    S: np.ndarray
    S_inv: np.ndarray
    A: np.ndarray = field(init=False)
    Z_true: np.ndarray = field(init=False)

    def __post_init__(self):
        J = jordan_matrix(self.blocks)
        self.A = self.S @ J @ self.S_inv
        P0 = zeros(self.n, exact=True)
        pos = 0
        for b in self.blocks:
            if b.eigenvalue == 0:
                for i in range(pos, pos + b.size):
                    P0[i, i] = ONE
            pos += b.size
        self.Z_true = self.S @ P0 @ self.S_inv

    @property
    def n(self) -> int:
        return sum(b.size for b in self.blocks)

    @property
    def nu(self) -> int:
        """Index of A: the largest zero block (0 when nonsingular)."""
        return max((b.size for b in self.blocks if b.eigenvalue == 0), default=0)

    @property
    def is_complex(self) -> bool:
        return any(complex(b.eigenvalue).imag for b in self.blocks)

    def spectrum_table(self) -> dict:
        """eigenvalue -> (algebraic multiplicity, index), eigenvalues as exact scalars."""
        table: dict = {}
        for b in self.blocks:
            lam = exact_scalar(complex(b.eigenvalue))
            m, nu = table.get(lam, (0, 0))
            table[lam] = (m + b.size, max(nu, b.size))
        return table


def jordan_matrix(blocks) -> np.ndarray:
    n = sum(b.size for b in blocks)
    J = zeros(n, exact=True)
    pos = 0
    for b in blocks:
        lam = exact_scalar(complex(b.eigenvalue))
        for i in range(b.size):
            J[pos + i, pos + i] = lam
            if i + 1 < b.size:
                J[pos + i, pos + i + 1] = ONE
        pos += b.size
    return J


def random_unimodular(n: int, rng: random.Random, density: float = 0.35,
                      bound: float = 8.0, tries: int = 200):
    """(S, S^-1): permuted product of unit triangular {-1,0,1} matrices.

    Resamples until both infinity norms stay below ``bound``.
    """
    for _ in range(tries):
        L, U = identity(n, True), identity(n, True)
        for i in range(n):
            for j in range(i):
                if rng.random() < density:
                    L[i, j] = CRational(rng.choice((-1, 1)))
                if rng.random() < density:
                    U[j, i] = CRational(rng.choice((-1, 1)))
        perm = list(range(n))
        rng.shuffle(perm)
        P = zeros(n, True)
        for i, p in enumerate(perm):
            P[i, p] = ONE
        S = P @ L @ U
        S_inv = inverse(S)
        if norm_inf(S) <= bound and norm_inf(S_inv) <= bound:
            return S, S_inv
    return identity(n, True), identity(n, True)


def _partition(total: int, rng: random.Random, max_part: int) -> list:
    parts = []
    while total:
        k = rng.randint(1, min(total, max_part))
        parts.append(k)
        total -= k
    return parts


def random_blocks(n: int, nu: int, rng: random.Random, complex_ok: bool,
                  max_block: int = 3) -> list:
    """Jordan blocks of total size n whose largest zero block is exactly nu."""
    blocks = []
    if nu > 0:
        v = rng.randint(nu, n)
        blocks.append(JordanBlock(0, nu))
        blocks += [JordanBlock(0, k) for k in _partition(v - nu, rng, nu)]
    else:
        v = 0
    rest = n - v
    pool = REAL_POOL + (COMPLEX_POOL if complex_ok else ())
    # few distinct values so that repeated eigenvalues are common
    values = rng.sample(pool, k=min(len(pool), max(1, rng.randint(1, 3))))
    for k in _partition(rest, rng, max_block):
        blocks.append(JordanBlock(rng.choice(values), k))
    rng.shuffle(blocks)
    return blocks


def random_case(seed: int, n: int, nu: int, complex_ok: bool = True) -> SuiteCase:
    """One case with a given size and index, for property-based tests."""
    rng = random.Random(seed)
    blocks = random_blocks(n, min(nu, n), rng, complex_ok)
    S, S_inv = random_unimodular(n, rng)
    return SuiteCase(f"random{seed}_n{n}_nu{nu}", tuple(blocks), S, S_inv)


def generate_suite(count: int = 224, seed: int = 20021, plain_every: int = 5) -> list:
    """Deterministic suite covering n = 1..8, index 0..3, repeated and complex eigenvalues.

    Every ``plain_every``-th case uses a permutation for S, which keeps
    ||A||_inf small enough for Taylor-series oracles.
    """
    rng = random.Random(seed)
    cases = []
    i = 0
    while len(cases) < count:
        n = 1 + i % 8
        nu = min((i // 8) % 4, n)
        complex_ok = (i // 32) % 3 == 1 or rng.random() < 0.2
        blocks = random_blocks(n, nu, rng, complex_ok)
        if i % plain_every == 0:
            perm = list(range(n))
            rng.shuffle(perm)
            S = zeros(n, True)
            for r, p in enumerate(perm):
                S[r, p] = ONE
            S_inv = S.T.copy()
        else:
            S, S_inv = random_unimodular(n, rng)
        cases.append(SuiteCase(f"case{i:03d}_n{n}_nu{nu}", tuple(blocks), S, S_inv))
        i += 1
    return cases


def suite_summary(cases) -> dict:
    return {
        "count": len(cases),
        "sizes": sorted({c.n for c in cases}),
        "indices": sorted({c.nu for c in cases}),
        "complex": sum(c.is_complex for c in cases),
        "repeated": sum(any(m > 1 for m, _ in c.spectrum_table().values()) for c in cases),
        "max_norm": max(norm_inf(c.A) for c in cases),
        "max_entry": max(max_abs(c.A) for c in cases),
    }
