"""Run every eigenprojection construction over the generated suite.

Prints, per backend, the worst deviation of each construction from the
eigenprojection read off the Jordan structure, plus failures and timing.

    python3 scripts/oracle_agreement.py --count 224 --seed 20021
"""

import argparse
import time

import numpy as np

from eigenproj.charpoly import index_of
from eigenproj.components import eigenprojection_from_eigenvalues, Spectrum
from eigenproj.eigenprojection import eigenprojection, oracle_adjugate, oracle_basis, oracle_limit
from eigenproj.numcore import is_exact, max_abs_diff, to_float
from eigenproj.suite import generate_suite, suite_summary


def constructions(A, known):
    res = eigenprojection(A)
    nu = index_of(A).nu
    return {
        "annihilator": lambda: res.Z,
        "adjugate": lambda: oracle_adjugate(A, max(res.u_used, 1)),
        "limit": lambda: oracle_limit(A, max(nu, 1)),
        "basis": lambda: oracle_basis(A, nu),
        "eigenvalue product": lambda: eigenprojection_from_eigenvalues(A, known, max(res.u_used, 1)),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=224)
    ap.add_argument("--seed", type=int, default=20021)
    args = ap.parse_args()

    suite = generate_suite(args.count, args.seed)
    print("suite:", suite_summary(suite))
    for backend in ("exact", "float"):
        worst, exact_hits, failures = {}, {}, []
        t0 = time.perf_counter()
        for case in suite:
            table = case.spectrum_table()
            known = Spectrum(tuple(table), tuple(m for m, _ in table.values()))
            A = case.A if backend == "exact" else to_float(case.A)
            Zt = to_float(case.Z_true)
            for name, make in constructions(A, known).items():
                try:
                    Z = make()
                except Exception as exc:
                    failures.append(f"{case.name} {name}: {exc!r}")
                    continue
                if is_exact(Z):
                    exact_hits[name] = exact_hits.get(name, 0) + bool(np.all(Z == case.Z_true))
                worst[name] = max(worst.get(name, 0.0), max_abs_diff(to_float(Z), Zt))
        elapsed = time.perf_counter() - t0
        print(f"\n[{backend}] {elapsed:.1f}s")
        for name, err in worst.items():
            extra = f"  exact matches {exact_hits[name]}/{len(suite)}" if name in exact_hits else ""
            print(f"  {name:<20} worst |Z - Z_true| = {err:.2e}{extra}")
        for line in failures:
            print("  FAILED", line)


if __name__ == "__main__":
    main()
