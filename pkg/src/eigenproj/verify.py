"""One-call cross-check of every eigenprojection construction and the Drazin formulas."""

from __future__ import annotations

import numpy as np

from .charpoly import faddeev, index_of
from .drazin import default_alpha, drazin_power, drazin_shifted, group_inverse, verify_drazin_axioms
from .eigenprojection import (
    eigenprojection, eigenprojection_from_annihilator, oracle_adjugate, oracle_basis, oracle_limit,
    verify_characterizations,
)
from .errors import EigenprojError
from .numcore import (
    ToleranceConfig, format_scalar, is_exact, mat_pow, max_abs_diff, norm_inf, resolve_tol,
    scalar_like,
)
from .report import CheckReport

# Relative agreement required between FLOAT constructions.
AGREE_TOL = 1e-8


def agree(X: np.ndarray, Y: np.ndarray, rel: float = AGREE_TOL) -> tuple:
    """(passed, detail): exact equality for two EXACT matrices, else relative to 1 + ||X||."""
    if is_exact(X) and is_exact(Y):
        same = bool(np.all(X == Y))
        return same, "exact" if same else "differ"
    d = max_abs_diff(X, Y)
    return d <= rel * (1.0 + norm_inf(X)), f"max diff {d:.2e}"


def verify_matrix(A: np.ndarray, tol: ToleranceConfig | None = None, u: int | None = None,
                  alphas=None, rng: np.random.Generator | None = None) -> CheckReport:
    """Run all constructions of Z, the characterizations and the Drazin axioms.

    A construction that cannot run (for example an ill-conditioned Faddeev
    split) is reported as failed with its error.
    """
    tol = resolve_tol(tol, A)
    rep = CheckReport("verify")
    info = index_of(A, tol)
    nu = info.nu
    rep.add("index", True, f"nu={nu}, ranks={list(info.rank_seq)}")
    try:
        if u is None:
            ep = eigenprojection(A, tol)
        else:
            phi = faddeev(mat_pow(A, u), tol).poly
            ep = eigenprojection_from_annihilator(A, u, phi, tol)
    except EigenprojError as exc:
        rep.add("annihilator construction", False, repr(exc))
        return rep
    Z = ep.Z
    rep.add("annihilator construction", True, ep.provenance)

    cd = faddeev(A, tol)
    oracles = {
        "adjugate oracle": lambda: oracle_adjugate(A, max(cd.v, 1), cd, tol),
        "limit oracle": lambda: oracle_limit(A, max(nu, 1), tol=tol),
        "basis oracle": lambda: oracle_basis(A, nu, tol),
    }
    for name, make in oracles.items():
        try:
            ok, detail = agree(Z, make())
        except EigenprojError as exc:
            ok, detail = False, repr(exc)
        rep.add(name, ok, detail)

    rep.checks.extend(verify_characterizations(A, Z, tol).checks)

    if alphas is None:
        alphas = [default_alpha(A), scalar_like(A, -1), scalar_like(A, 2), scalar_like(A, 1j)]
        if rng is not None:
            # nonzero real part, so the sample is never 0
            w = complex(int(rng.integers(1, 9)), int(rng.integers(-4, 5))) / 4
            alphas.append(scalar_like(A, w))
    results = {}
    try:
        for alpha in alphas:
            results[f"shifted alpha={format_scalar(alpha)}"] = drazin_shifted(A, Z, alpha, tol).AD
        results["power form"] = drazin_power(A, nu, Z, tol).AD
        if nu <= 1:
            results["group shift"] = group_inverse(A, Z, tol, nu=nu)
    except EigenprojError as exc:
        rep.add("drazin constructions", False, repr(exc))
        return rep
    ref_name, ref = next(iter(results.items()))
    for name, AD in results.items():
        ax = verify_drazin_axioms(A, AD, nu, tol, Z=Z)
        rep.add(f"drazin axioms ({name})", ax.ok, ", ".join(ax.failed()))
        if name != ref_name:
            ok, detail = agree(ref, AD)
            rep.add(f"drazin agreement ({name} vs {ref_name})", ok, detail)
    return rep
