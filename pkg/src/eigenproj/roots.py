"""Polynomial roots: Aberth-Ehrlich iteration, exact square-free splitting, clustering."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import NoConvergence
from .numcore import CRational, Poly

EPS = np.finfo(float).eps


def aberth(coeffs, maxiter: int = 800) -> np.ndarray:
    """All complex roots of the polynomial with ascending coefficients ``coeffs``.

    Simultaneous Aberth-Ehrlich iteration; a root is frozen once |p(z)| is
    within rounding noise of the Horner evaluation.
    """
    c = np.array([complex(x) for x in coeffs], dtype=complex)
    nz = np.nonzero(c)[0]
    if len(nz) == 0:
        raise ValueError("zero polynomial has no roots")
    c = c[: nz[-1] + 1]
    d = len(c) - 1
    if d == 0:
        return np.zeros(0, dtype=complex)
    c = c / c[-1]
    desc = c[::-1]
    absdesc = np.abs(desc)
    dp = np.polyder(desc)

    # Fujiwara bound for the initial circle
    radius = 2.0 * max(abs(c[d - k]) ** (1.0 / k) for k in range(1, d + 1))
    radius = max(radius, 1e-300)
    z = radius * np.exp(1j * (2 * np.pi * np.arange(d) / d + 0.4))
    # a slightly smaller circle for even/odd points breaks symmetric stalls
    z[1::2] *= 0.9
    done = np.zeros(d, dtype=bool)

    for _ in range(maxiter):
        for k in range(d):
            if done[k]:
                continue
            zk = z[k]
            pv = np.polyval(desc, zk)
            noise = 8.0 * EPS * np.polyval(absdesc, abs(zk))
            if abs(pv) <= noise:
                done[k] = True
                continue
            dv = np.polyval(dp, zk)
            ratio = pv / dv if dv != 0 else pv / (noise + EPS)
            diff = zk - np.delete(z, k)
            s = np.sum(1.0 / diff) if d > 1 else 0.0
            denom = 1.0 - ratio * s
            w = ratio / denom if denom != 0 else ratio
            z[k] = zk - w
            if abs(w) <= 4.0 * EPS * max(abs(z[k]), 1.0):
                done[k] = True
        if done.all():
            return z
    # Multiple roots converge linearly; accept stalled points near the noise floor.
    pv = np.abs(np.polyval(desc, z))
    noise = np.polyval(absdesc, np.abs(z))
    if np.all(pv <= 1e-6 * noise):
        return z
    raise NoConvergence("Aberth iteration did not converge")


def cluster_roots(roots, tau_cluster: float):
    """Merge roots that stem from one multiple root.

    A group of m > 1 roots is accepted as one eigenvalue of multiplicity m
    when its diameter is at most ``scale * tau_cluster**(1.5/m)``: an m-fold
    root smears over a disc of radius ~ eps**(1/m), so the radius must widen
    with m. Largest admissible groups are taken first. Returns
    (center, multiplicity, diameter) triples; the center is the group mean.
    """
    pts = [complex(r) for r in roots]
    if not pts:
        return []
    scale = max(1.0, max(abs(p) for p in pts))

    def diameter(g):
        return max((abs(pts[i] - pts[j]) for i in g for j in g), default=0.0)

    remaining = set(range(len(pts)))
    out = []
    while remaining:
        best = None
        for seed in remaining:
            near = sorted(remaining, key=lambda j: abs(pts[j] - pts[seed]))
            for m in range(1, len(near) + 1):
                g = near[:m]
                dm = diameter(g)
                if m > 1 and dm > scale * tau_cluster ** (1.5 / m):
                    continue
                key = (m, -dm)
                if best is None or key > best[0]:
                    best = (key, g, dm)
        _, g, dm = best
        remaining -= set(g)
        out.append((sum(pts[i] for i in g) / len(g), len(g), dm))
    return out


def polish_multiple_root(coeffs, z0: complex, m: int, steps: int = 8) -> complex:
    """Newton on the (m-1)-th derivative, where an m-fold root is simple (m = 1: plain Newton).

    The polished value is kept only if it stays near the starting point.
    """
    desc = np.array([complex(x) for x in coeffs][::-1], dtype=complex)
    if m < 1 or len(desc) - 1 < m:
        return z0
    f = np.polyder(desc, m - 1)
    df = np.polyder(f)
    z = z0
    for _ in range(steps):
        d = np.polyval(df, z)
        if d == 0:
            break
        step = np.polyval(f, z) / d
        z = z - step
        if abs(step) <= 4 * EPS * max(abs(z), 1.0):
            break
    bound = 1e-2 * max(abs(z0), 1.0)
    return complex(z) if abs(z - z0) <= bound else z0


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm (EXACT coefficients)."""
    while not g.is_zero():
        f, g = g, f % g
    return f.monic() if not f.is_zero() else f


def squarefree_decomposition(f: Poly) -> list:
    """Yun's algorithm over exact coefficients: [(factor, multiplicity), ...]."""
    f = f.monic()
    if f.degree < 1:
        return []
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f // a
    c = df // a
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = b // a
        c = d // a
        if a.degree > 0:
            out.append((a, i))
        d = c - b.derivative()
        i += 1
    return out


def rationalize(z: complex, max_den: int = 10**6) -> CRational:
    return CRational(Fraction(z.real).limit_denominator(max_den),
                     Fraction(z.imag).limit_denominator(max_den))


def exact_roots(f: Poly):
    """Roots of an EXACT polynomial when they are all Gaussian rationals.

    Returns (root, multiplicity) pairs, or None when some root is not
    rational. Float roots of the square-free factors are rounded and then
    verified by exact evaluation.
    """
    out = []
    for factor, mult in squarefree_decomposition(f):
        remaining = factor
        for z in aberth(factor.coeffs):
            cand = rationalize(z)
            if remaining.degree > 0 and not remaining(cand):
                remaining = remaining // Poly([-cand, CRational(1)])
                out.append((cand, mult))
        if remaining.degree > 0:
            return None
    return out
