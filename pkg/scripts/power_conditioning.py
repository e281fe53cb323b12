"""How far the FLOAT annihilator construction is from exact on A, A^2, A^3.

For each suite matrix and power k, h of degree q is evaluated on B^u with
B = A^k, so the rounding error grows roughly like eps * ||B^u||^q / |p_q|.
The script prints that estimate for u = max(v, 1) (multiplicity of zero)
and for u = max(ind B, 1), next to the observed error of the default FLOAT
construction and the u it used, for the cases where anything is large.

    python3 scripts/power_conditioning.py --threshold 1e-8
"""

import argparse

import numpy as np

from eigenproj.charpoly import faddeev, index_of
from eigenproj.eigenprojection import eigenprojection, split_annihilator
from eigenproj.numcore import mat_pow, max_abs_diff, norm_inf, to_float
from eigenproj.suite import generate_suite

EPS = np.finfo(float).eps


def growth(B_exact, u: int) -> float:
    """eps * ||B^u||^q / |p_q| from the exact Faddeev data of B^u."""
    Bu = mat_pow(B_exact, u)
    parts = split_annihilator(faddeev(Bu).poly)
    if parts.q == 0:
        return 0.0
    pq = abs(complex(parts.p[-1]))
    return EPS * norm_inf(to_float(Bu)) ** parts.q / pq


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--threshold", type=float, default=1e-10)
    args = ap.parse_args()

    print(f"{'case':<16} k  v nu  {'est(v)':>9}  {'est(nu)':>9}  u used  {'observed':>9}")
    for case in generate_suite():
        Zt = to_float(case.Z_true)
        for k in (1, 2, 3):
            B = mat_pow(case.A, k)
            v = faddeev(B).v
            if v == 0:
                continue  # Z = 0 is returned without evaluating h
            nu = index_of(B).nu
            est_v, est_nu = growth(B, v), growth(B, max(nu, 1))
            try:
                res = eigenprojection(to_float(B))
                err, used = max_abs_diff(res.Z, Zt), res.u_used
                shown = f"{err:.2e}"
            except Exception as exc:
                err, used, shown = float("inf"), "-", type(exc).__name__
            if max(err, est_v, est_nu) > args.threshold:
                print(f"{case.name:<16} {k}  {v} {nu:>2}  {est_v:9.2e}  {est_nu:9.2e}  "
                      f"{used!s:>6}  {shown:>9}")


if __name__ == "__main__":
    main()
