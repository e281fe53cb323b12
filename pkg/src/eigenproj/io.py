"""Matrix text and JSON formats.

Text: first line ``n``, then n rows of n whitespace-separated entries. An
entry is ``a``, ``bi`` or ``a+bi`` where each part is an integer, ``p/q`` or a
decimal. A matrix whose entries are all integers or fractions is EXACT;
any decimal makes it FLOAT. Lines starting with ``#`` are ignored.

JSON: ``{"n": n, "entries": [[re, im], ...]}`` in row-major order, with parts
given as numbers or strings such as ``"1/3"``, plus an optional
``"backend": "exact" | "float"``.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

import numpy as np

from .errors import NonSquare, ParseError
from .numcore import Backend, CRational, as_matrix, is_exact

_NUM = r"(?:\d+/\d+|\d+\.?\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|inf|nan)"
_IMAG = re.compile(rf"^(?P<im>[+-]?{_NUM}?)i$")
_CPLX = re.compile(rf"^(?P<re>[+-]?{_NUM})(?P<im>[+-]{_NUM}?)i$")
_REAL = re.compile(rf"^(?P<re>[+-]?{_NUM})$")


def _part(s: str):
    """(value, exact) for one real part; bare signs stand for +-1."""
    if s in ("", "+"):
        return 1, True
    if s == "-":
        return -1, True
    if "/" in s:
        return Fraction(s), True
    if re.fullmatch(r"[+-]?\d+", s):
        return int(s), True
    return float(s), False


def parse_entry(tok: str):
    """Parse one entry; returns (value, exact) or raises ValueError."""
    m = _REAL.match(tok)
    if m:
        return _part(m["re"])
    m = _CPLX.match(tok)
    if m:
        (a, ea), (b, eb) = _part(m["re"]), _part(m["im"])
    else:
        m = _IMAG.match(tok)
        if not m:
            raise ValueError(f"bad entry {tok!r}")
        (a, ea), (b, eb) = (0, True), _part(m["im"])
    if ea and eb:
        return CRational(a, b), True
    return complex(float(a), float(b)), False


def _build(values, exacts, n, backend):
    if backend is None:
        backend = Backend.EXACT if all(exacts) else Backend.FLOAT
    arr = np.empty((n, n), dtype=object)
    for i, v in enumerate(values):
        arr[divmod(i, n)] = v
    return as_matrix(arr, backend)


def parse_text(text: str, backend: Backend | str | None = None) -> np.ndarray:
    lines = [(i + 1, ln) for i, ln in enumerate(text.splitlines())
             if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ParseError("empty input", 1, 1)
    lineno, first = lines[0]
    try:
        n = int(first.strip())
    except ValueError:
        raise ParseError(f"expected matrix size, got {first.strip()!r}", lineno, 1) from None
    if n < 1:
        raise NonSquare(f"matrix size must be positive, got {n}")
    rows = lines[1:]
    if len(rows) != n:
        where = rows[-1][0] + 1 if rows else lineno + 1
        raise NonSquare(f"expected {n} rows, got {len(rows)} (line {where})")
    values, exacts = [], []
    for lineno, ln in rows:
        toks = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", ln)]
        if len(toks) != n:
            raise NonSquare(f"line {lineno}: expected {n} entries, got {len(toks)}")
        for col, tok in toks:
            try:
                v, e = parse_entry(tok)
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(str(exc), lineno, col) from None
            values.append(v)
            exacts.append(e)
    return _build(values, exacts, n, backend)


def _json_part(x):
    if isinstance(x, bool):
        raise ValueError(f"bad number {x!r}")
    if isinstance(x, int):
        return x, True
    if isinstance(x, float):
        return x, False
    if isinstance(x, str):
        return _part(x.strip())
    raise ValueError(f"bad number {x!r}")


def parse_json(text: str, backend: Backend | str | None = None) -> np.ndarray:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict) or "n" not in doc or "entries" not in doc:
        raise ParseError('expected an object with "n" and "entries"', 1, 1)
    n, entries = doc["n"], doc["entries"]
    if not isinstance(n, int) or n < 1:
        raise NonSquare(f"matrix size must be a positive integer, got {n!r}")
    if not isinstance(entries, list) or len(entries) != n * n:
        raise NonSquare(f"expected {n * n} entries")
    if backend is None and "backend" in doc:
        backend = Backend(doc["backend"])
    values, exacts = [], []
    for idx, pair in enumerate(entries):
        try:
            if not (isinstance(pair, list) and len(pair) == 2):
                raise ValueError("each entry must be [re, im]")
            (a, ea), (b, eb) = _json_part(pair[0]), _json_part(pair[1])
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"entry {idx}: {exc}", 1, 1) from None
        if ea and eb:
            values.append(CRational(a, b))
            exacts.append(True)
        else:
            values.append(complex(float(a), float(b)))
            exacts.append(False)
    return _build(values, exacts, n, backend)


def parse_matrix(source, backend: Backend | str | None = None) -> np.ndarray:
    """Parse a matrix from a path, an open stream or a string; JSON is detected by a leading '{'."""
    if hasattr(source, "read"):
        text = source.read()
    elif isinstance(source, str) and "\n" not in source and not source.lstrip().startswith("{"):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = str(source)
    if text.lstrip().startswith("{"):
        return parse_json(text, backend)
    return parse_text(text, backend)


def _float_part(x: float) -> str:
    return repr(float(x))


def format_entry(z) -> str:
    """Text form of one entry; FLOAT parts always carry a decimal point or exponent."""
    if isinstance(z, CRational):
        def q(x):
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        if not z.im:
            return q(z.re)
        sign = "-" if z.im < 0 else "+"
        return f"{q(z.re)}{sign}{q(abs(z.im))}i"
    z = complex(z)
    im = _float_part(abs(z.imag)) if not np.isnan(z.imag) else "nan"
    sign = "-" if z.imag < 0 else "+"
    return f"{_float_part(z.real)}{sign}{im}i" if z.imag else _float_part(z.real)


def format_text(A: np.ndarray) -> str:
    rows = [" ".join(format_entry(x) for x in row) for row in A]
    return "\n".join([str(A.shape[0])] + rows) + "\n"


def _json_scalar(x):
    if isinstance(x, CRational):
        def q(v):
            return int(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
        return [q(x.re), q(x.im)]
    x = complex(x)
    return [x.real, x.imag]


def matrix_to_json(A: np.ndarray) -> dict:
    return {
        "n": int(A.shape[0]),
        "backend": Backend.EXACT.value if is_exact(A) else Backend.FLOAT.value,
        "entries": [_json_scalar(x) for x in A.flat],
    }


def format_json(A: np.ndarray) -> str:
    return json.dumps(matrix_to_json(A))


def format_matrix(A: np.ndarray, fmt: str = "text") -> str:
    return format_json(A) + "\n" if fmt == "json" else format_text(A)
