"""Limiting matrices of a few Markov chains, exact and floating point.

Shows the exact limit, its stationary rows, and how the Cesaro averages
approach it as the number of steps grows.

    python3 scripts/markov_demo.py
"""

import sys
from pathlib import Path

from eigenproj.applications import cesaro_oracle, markov_limit
from eigenproj.io import format_text
from eigenproj.numcore import as_matrix, norm_inf, to_float

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))
from test_acceptance import markov_chains  # noqa: E402


def main():
    for name, rows in markov_chains().items():
        P = as_matrix(rows)
        M = markov_limit(P)
        print(f"== {name}")
        print(format_text(M), end="")
        Mf = markov_limit(to_float(P))
        for k in (10**2, 10**3, 10**4, 10**5):
            err = norm_inf(Mf - cesaro_oracle(to_float(P), k))
            print(f"  Cesaro k={k:<7} ||limit - average||_inf = {err:.2e}")
        print()


if __name__ == "__main__":
    main()
