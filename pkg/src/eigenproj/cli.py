"""Command-line front end: read a matrix, run one operation, print the result.

Matrix input is a file path or standard input, in the text or JSON format of
:mod:`eigenproj.io`. Results go to standard output, diagnostics to standard
error. Text output prefixes metadata with ``#`` so a single-matrix result can
be fed back in as input.
"""

from __future__ import annotations

import argparse
import enum
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from .charpoly import faddeev, index_of
from .components import (
    Spectrum, components, eigenvalues, exp_values, matrix_function, minimal_polynomial,
    poly_values, resolvent_values,
)
from .drazin import default_alpha, drazin_power, drazin_shifted, group_inverse
from .eigenprojection import eigenprojection, eigenprojection_from_annihilator
from .errors import EXIT_CODES, EigenprojError, ZeroAlpha
from .applications import laplacian_forest_projection, markov_limit
from .io import format_text, matrix_to_json, parse_entry, parse_matrix
from .numcore import (
    Backend, Poly, ToleranceConfig, format_scalar, is_exact, mat_pow, scalar_like,
)
from .verify import verify_matrix

COMMANDS = ("index", "charpoly", "eigenprojection", "drazin", "group-inverse", "components",
            "minpoly", "matfunc", "markov", "forest", "verify")
FUNCTIONS = ("exp", "identity", "square", "resolvent")
VERIFY_FAILED = 17
USAGE = 2


class OutputFormat(str, enum.Enum):
    TEXT = "text"
    JSON = "json"


@dataclass(frozen=True)
class RunConfig:
    backend: Backend | None = None
    tolerances: ToleranceConfig = field(default_factory=ToleranceConfig)
    u_override: int | None = None
    alpha: complex | None = None
    eigenvalue_override: tuple | None = None
    output_format: OutputFormat = OutputFormat.TEXT
    seed: int | None = None
    function: str = "exp"
    point: complex | None = None
    method: str = "shifted"

    def __post_init__(self):
        if self.u_override is not None and self.u_override < 0:
            raise ValueError("u must be nonnegative")
        if self.alpha is not None and not self.alpha:
            raise ZeroAlpha("alpha must be nonzero")

    def tol_for(self, A: np.ndarray) -> ToleranceConfig:
        return ToleranceConfig.exact() if is_exact(A) else self.tolerances


@dataclass
class Result:
    """Metadata lines plus zero or more labelled matrices."""

    meta: dict = field(default_factory=dict)
    matrices: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    status: int = 0

    def render(self, fmt: OutputFormat) -> str:
        if fmt is OutputFormat.JSON:
            doc = {k: _jsonable(v) for k, v in self.meta.items()}
            if self.notes:
                doc["notes"] = self.notes
            if len(self.matrices) == 1 and not self.matrices[0][0]:
                doc.update(matrix_to_json(self.matrices[0][1]))
            elif self.matrices:
                doc["matrices"] = [dict(label=lbl, **matrix_to_json(M)) for lbl, M in self.matrices]
            return json.dumps(doc) + "\n"
        out = [f"# {k}: {_textable(v)}" for k, v in self.meta.items()]
        out += [f"# {line}" for line in self.notes]
        for lbl, M in self.matrices:
            if lbl:
                out.append(f"# {lbl}")
            out.append(format_text(M).rstrip("\n"))
        return "\n".join(out) + "\n"


def _jsonable(v):
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (bool, int, float, str)) or v is None:
        return v
    return format_scalar(v) if not isinstance(v, Poly) else str(v)


def _textable(v):
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_textable(x) for x in v) + "]"
    if isinstance(v, (bool, int, float, str)):
        return str(v)
    return str(v) if isinstance(v, Poly) else format_scalar(v)


def _spectrum(A, cfg: RunConfig, tol) -> Spectrum:
    override = None
    if cfg.eigenvalue_override is not None:
        override = [x if is_exact(A) else complex(x) for x in cfg.eigenvalue_override]
    return eigenvalues(A, tol, override=override)


def _spectrum_meta(sp: Spectrum) -> dict:
    return {"eigenvalues": list(sp.lambdas), "multiplicities": list(sp.mults),
            "indices": list(sp.nus) if sp.nus is not None else None}


def dispatch(command: str, cfg: RunConfig, A: np.ndarray) -> Result:
    """Run ``command`` on ``A``; module errors propagate to the caller."""
    tol = cfg.tol_for(A)
    res = Result(meta={"command": command})
    if command == "index":
        info = index_of(A, tol)
        res.meta.update(index=info.nu, rank_sequence=list(info.rank_seq), core_rank=info.r)
    elif command == "charpoly":
        cd = faddeev(A, tol)
        res.meta.update(charpoly=cd.poly, coefficients=list(cd.a), zero_multiplicity=cd.v,
                        conditioned=cd.conditioned)
    elif command == "eigenprojection":
        if cfg.u_override is not None:
            u = cfg.u_override
            ep = eigenprojection_from_annihilator(A, u, faddeev(mat_pow(A, u), tol).poly, tol)
        else:
            ep = eigenprojection(A, tol)
        res.meta.update(provenance=ep.provenance, u=ep.u_used)
        res.matrices.append(("", ep.Z))
    elif command in ("drazin", "group-inverse"):
        Z = eigenprojection(A, tol).Z
        if command == "group-inverse":
            AD = group_inverse(A, Z, tol)
            res.meta.update(provenance="A# = (A + Z)^-1 - Z")
        elif cfg.method == "power":
            nu = index_of(A, tol).nu
            AD = drazin_power(A, nu, Z, tol).AD
            res.meta.update(provenance=f"AD = A^(nu-1) ((A^nu + Z)^-1 - Z), nu={nu}")
        else:
            alpha = cfg.alpha if cfg.alpha is not None else default_alpha(A)
            dr = drazin_shifted(A, Z, alpha, tol)
            AD = dr.AD
            res.meta.update(provenance=f"AD = (A + alpha Z)^-1 (I - Z), alpha={format_scalar(dr.alpha_used)}")
        res.matrices.append(("", AD))
    elif command == "components":
        cs = components(A, _spectrum(A, cfg, tol), tol)
        res.meta.update(_spectrum_meta(cs.spectrum))
        res.meta["provenance"] = "Z_k0 = eigenprojection of A - lambda_k I, Z_kj = (A - lambda_k I)^j Z_k0 / j!"
        for k, j in cs.keys():
            res.matrices.append((f"Z[{k},{j}] lambda={format_scalar(cs.spectrum.lambdas[k])}", cs[k, j]))
    elif command == "minpoly":
        cs = components(A, _spectrum(A, cfg, tol), tol)
        res.meta.update(_spectrum_meta(cs.spectrum))
        res.meta["minpoly"] = minimal_polynomial(cs.spectrum)
    elif command == "matfunc":
        cs = components(A, _spectrum(A, cfg, tol), tol)
        sp = cs.spectrum
        if cfg.function == "exp":
            vals = exp_values(sp)
        elif cfg.function == "identity":
            vals = poly_values(Poly.monomial(1, sp.exact), sp)
        elif cfg.function == "square":
            vals = poly_values(Poly.monomial(2, sp.exact), sp)
        else:
            if cfg.point is None:
                raise ValueError("resolvent needs --z")
            vals = resolvent_values(cfg.point, sp)
        res.meta.update(_spectrum_meta(sp))
        res.meta["function"] = cfg.function
        res.matrices.append(("", matrix_function(cs, vals)))
    elif command == "markov":
        res.meta["provenance"] = "P_inf = eigenprojection of I - P"
        res.matrices.append(("", markov_limit(A, tol)))
    elif command == "forest":
        res.meta["provenance"] = "forest matrix = eigenprojection of L"
        res.matrices.append(("", laplacian_forest_projection(A, tol)))
    elif command == "verify":
        rng = np.random.default_rng(cfg.seed) if cfg.seed is not None else None
        alphas = [scalar_like(A, cfg.alpha)] if cfg.alpha is not None else None
        rep = verify_matrix(A, tol, cfg.u_override, alphas=alphas, rng=rng)
        res.meta["ok"] = rep.ok
        res.notes = [f"[{'ok' if c.passed else 'FAIL'}] {c.name}" + (f" ({c.detail})" if c.detail else "")
                     for c in rep.checks]
        res.status = 0 if rep.ok else VERIFY_FAILED
    else:
        raise ValueError(f"unknown command {command!r}")
    return res


def _exit_code_table() -> str:
    rows = [f"  {code:>3}  {name}" for name, code in sorted(EXIT_CODES.items(), key=lambda kv: kv[1])]
    rows.insert(0, "    0  success")
    rows.insert(1, "    1  other library error")
    rows.append(f"  {VERIFY_FAILED:>3}  verify found a disagreement")
    return "exit codes:\n" + "\n".join(rows) + "\n  (2 is also used for usage errors)"


def _scalar_arg(text: str):
    try:
        value, _ = parse_entry(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad scalar {text!r}") from None
    return value


def _eigen_list(text: str) -> tuple:
    return tuple(_scalar_arg(t) for t in text.split(",") if t.strip())


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="eigenproj",
        description="Eigenprojection, Drazin inverse and spectral components of a square matrix.",
        epilog=_exit_code_table(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("matrix", nargs="?", default="-", help="matrix file (default: standard input)")
    p.add_argument("--backend", choices=[b.value for b in Backend],
                   help="force EXACT or FLOAT (default: implied by the entries)")
    p.add_argument("--tau-zero", type=float, default=1e-9)
    p.add_argument("--tau-rank", type=float, default=1e-10)
    p.add_argument("--tau-cluster", type=float, default=1e-6)
    p.add_argument("--u", type=int, help="power u >= ind A for the annihilator construction")
    p.add_argument("--alpha", type=_scalar_arg, help="nonzero shift for the Drazin formula")
    p.add_argument("--method", choices=("shifted", "power"), default="shifted",
                   help="Drazin construction")
    p.add_argument("--eigenvalues", type=_eigen_list,
                   help="comma-separated eigenvalues, skipping root finding")
    p.add_argument("--function", choices=FUNCTIONS, default="exp", help="matfunc function")
    p.add_argument("--z", type=_scalar_arg, help="resolvent point for --function resolvent")
    p.add_argument("--format", choices=[f.value for f in OutputFormat], default="text")
    p.add_argument("--seed", type=int, help="seed for randomized checks in verify")
    return p


def config_from_args(args) -> RunConfig:
    return RunConfig(
        backend=Backend(args.backend) if args.backend else None,
        tolerances=ToleranceConfig(args.tau_zero, args.tau_rank, args.tau_cluster),
        u_override=args.u,
        alpha=args.alpha,
        eigenvalue_override=args.eigenvalues,
        output_format=OutputFormat(args.format),
        seed=args.seed,
        function=args.function,
        point=args.z,
        method=args.method,
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
    except (ValueError, ZeroAlpha) as exc:
        parser.print_usage(sys.stderr)
        print(f"eigenproj: error: {exc}", file=sys.stderr)
        return USAGE
    try:
        src = sys.stdin if args.matrix == "-" else args.matrix
        A = parse_matrix(src, cfg.backend)
        res = dispatch(args.command, cfg, A)
    except EigenprojError as exc:
        print(f"eigenproj: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"eigenproj: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"eigenproj: error: {exc}", file=sys.stderr)
        return USAGE
    sys.stdout.write(res.render(cfg.output_format))
    return res.status


if __name__ == "__main__":
    sys.exit(main())
