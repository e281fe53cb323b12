"""Scalar backends, dense matrix arithmetic, polynomials and the zero policy.

Matrices are plain square numpy arrays. The backend is carried by the dtype:

* ``complex128`` arrays are FLOAT matrices; every "is this zero?" decision
  goes through a :class:`ToleranceConfig`.
* ``object`` arrays holding :class:`CRational` entries are EXACT matrices;
  arithmetic is exact and tolerances are ignored.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np
from gmpy2 import mpq

from .errors import NonSquare, Singular

_MPQ = type(mpq(0))
EPS = float(np.finfo(float).eps)


class Backend(str, enum.Enum):
    EXACT = "exact"
    FLOAT = "float"


def _q(x) -> _MPQ:
    if isinstance(x, _MPQ):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return mpq(x.strip())
    return mpq(x)


class CRational:
    """Complex number with arbitrary-precision rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, CRational):
            re, im = re.re, re.im + _q(im)
        elif isinstance(re, complex):
            re, im = re.real, re.imag + float(_q(im))
        self.re = _q(re)
        self.im = _q(im)

    @classmethod
    def _new(cls, re, im):
        z = object.__new__(cls)
        z.re = re
        z.im = im
        return z

    @staticmethod
    def _coerce(other):
        if isinstance(other, CRational):
            return other
        if isinstance(other, (int, _MPQ, Rational)):
            return CRational._new(_q(other), mpq(0))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CRational._new(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CRational._new(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CRational._new(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.im and not o.im:
            return CRational._new(self.re * o.re, mpq(0))
        return CRational._new(self.re * o.re - self.im * o.im,
                              self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.im:
            if not o.re:
                raise ZeroDivisionError("CRational division by zero")
            return CRational._new(self.re / o.re, self.im / o.re)
        d = o.re * o.re + o.im * o.im
        return CRational._new((self.re * o.re + self.im * o.im) / d,
                              (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return CRational._new(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return CRational(1) / self ** (-k)
        result, base = CRational(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self):
        return CRational._new(self.re, -self.im)

    def abs2(self):
        return self.re * self.re + self.im * self.im

    def __abs__(self):
        return math.hypot(float(self.re), float(self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(Fraction(int(self.re.numerator), int(self.re.denominator)))
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __float__(self):
        if self.im:
            raise TypeError("complex value has no float conversion")
        return float(self.re)

    @property
    def is_real(self):
        return not self.im

    def __repr__(self):
        return f"CRational({self})"

    def __str__(self):
        return format_scalar(self)


ZERO = CRational(0)
ONE = CRational(1)


def _fmt_q(x) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _fmt_f(x: float) -> str:
    if x == int(x) and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def format_scalar(z) -> str:
    """Render a scalar as ``a``, ``bi`` or ``a+bi`` (rational parts as ``p/q``)."""
    if isinstance(z, CRational):
        re, im, fmt = z.re, z.im, _fmt_q
    else:
        z = complex(z)
        re, im, fmt = z.real, z.imag, _fmt_f
    if not im:
        return fmt(re)
    ims = fmt(abs(im))
    ims = "" if ims == "1" else ims
    sign = "-" if im < 0 else "+"
    if not re:
        return f"{'-' if sign == '-' else ''}{ims}i"
    return f"{fmt(re)}{sign}{ims}i"


def exact_scalar(x) -> CRational:
    """Convert int / Fraction / mpq / str / float / complex to an exact scalar.

    Floats convert to their exact binary value.
    """
    if isinstance(x, CRational):
        return x
    if isinstance(x, complex):
        return CRational(x.real, x.imag)
    if isinstance(x, np.generic):
        return exact_scalar(x.item())
    return CRational(x)


@dataclass(frozen=True)
class ToleranceConfig:
    """Relative thresholds for FLOAT decisions.

    tau_zero: entry-is-zero threshold, relative to a caller-supplied scale.
    tau_rank: pivot threshold, relative to ``n * max|entry|``.
    tau_cluster: eigenvalue deduplication radius.
    """

    tau_zero: float = 1e-9
    tau_rank: float = 1e-10
    tau_cluster: float = 1e-6

    def __post_init__(self):
        vals = (self.tau_zero, self.tau_rank, self.tau_cluster)
        if any(v < 0 for v in vals):
            raise ValueError("tolerances must be nonnegative")
        if any(v == 0 for v in vals) and any(v > 0 for v in vals):
            raise ValueError("tolerances must be all zero (EXACT) or all positive (FLOAT)")

    @classmethod
    def exact(cls) -> "ToleranceConfig":
        return cls(0.0, 0.0, 0.0)

    @property
    def is_exact(self) -> bool:
        return self.tau_zero == 0.0


def resolve_tol(tol: ToleranceConfig | None, A: np.ndarray) -> ToleranceConfig:
    """Default tolerances for the backend of ``A``; explicit configs pass through.

    A FLOAT matrix never runs with the all-zero EXACT config.
    """
    if tol is None:
        return ToleranceConfig.exact() if is_exact(A) else ToleranceConfig()
    if tol.is_exact and not is_exact(A):
        return ToleranceConfig()
    return tol


# ---------------------------------------------------------------------------
# matrix construction and conversion
# ---------------------------------------------------------------------------

def is_exact(A) -> bool:
    return getattr(A, "dtype", None) == object


def backend_of(A) -> Backend:
    return Backend.EXACT if is_exact(A) else Backend.FLOAT


_to_exact_vec = np.frompyfunc(exact_scalar, 1, 1)
_conj_vec = np.frompyfunc(lambda z: z.conjugate(), 1, 1)


def as_matrix(data, backend: Backend | str | None = None) -> np.ndarray:
    """Build a square matrix from nested sequences or an array.

    Without an explicit backend, object arrays and non-float Python entries
    (ints, Fractions, CRationals) stay EXACT; anything else becomes FLOAT.
    """
    if isinstance(data, np.ndarray) and data.dtype != object:
        arr = data
    else:
        arr = np.array(data, dtype=object)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise NonSquare(f"expected a nonempty square matrix, got shape {arr.shape}")
    if backend is None:
        if arr.dtype == object and all(
            not isinstance(x, (float, complex, np.floating, np.complexfloating))
            for x in arr.flat
        ):
            backend = Backend.EXACT
        else:
            backend = Backend.FLOAT
    backend = Backend(backend)
    if backend is Backend.EXACT:
        return to_exact(arr)
    return to_float(arr)


def to_exact(A) -> np.ndarray:
    A = np.asarray(A)
    out = np.empty(A.shape, dtype=object)
    out[...] = _to_exact_vec(A) if A.size else A
    return out


def to_float(A) -> np.ndarray:
    A = np.asarray(A)
    if A.dtype == object:
        return np.array([[complex(x) for x in row] for row in A], dtype=complex).reshape(A.shape)
    return A.astype(complex)


def like(A, data) -> np.ndarray:
    """Convert ``data`` to the backend of ``A``."""
    return to_exact(data) if is_exact(A) else to_float(data)


def identity(n: int, exact: bool = False) -> np.ndarray:
    if exact:
        out = np.empty((n, n), dtype=object)
        for i in range(n):
            for j in range(n):
                out[i, j] = ONE if i == j else ZERO
        return out
    return np.eye(n, dtype=complex)


def zeros(n: int, exact: bool = False) -> np.ndarray:
    if exact:
        out = np.empty((n, n), dtype=object)
        out.fill(ZERO)
        return out
    return np.zeros((n, n), dtype=complex)


def eye_like(A) -> np.ndarray:
    return identity(A.shape[0], is_exact(A))


def zeros_like(A) -> np.ndarray:
    return zeros(A.shape[0], is_exact(A))


def scalar_like(A, c):
    """Coerce a scalar to the backend of ``A``."""
    return exact_scalar(c) if is_exact(A) else complex(c)


def ctranspose(A) -> np.ndarray:
    if is_exact(A):
        out = np.empty(A.shape[::-1], dtype=object)
        out[...] = _conj_vec(A.T) if A.size else A.T
        return out
    return A.conj().T


def matmul(A, B) -> np.ndarray:
    if is_exact(A) != is_exact(B):
        A, B = to_float(A), to_float(B)
    out = A @ B
    return out


def max_abs(A) -> float:
    if A.size == 0:
        return 0.0
    if is_exact(A):
        return max(abs(x) for x in A.flat)
    return float(np.max(np.abs(A)))


def norm_inf(A) -> float:
    if A.size == 0:
        return 0.0
    if is_exact(A):
        return max(sum(abs(x) for x in row) for row in A)
    return float(np.max(np.sum(np.abs(A), axis=1)))


def max_abs_diff(A, B) -> float:
    """Entrywise max |A - B|; 0.0 means exactly equal for EXACT inputs."""
    if is_exact(A) and is_exact(B):
        return max_abs(A - B)
    return max_abs(to_float(A) - to_float(B))


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def mat_pow(A: np.ndarray, k: int) -> np.ndarray:
    """A**k by repeated squaring; A**0 is the identity."""
    if k < 0:
        raise ValueError("mat_pow needs k >= 0")
    result = None
    base = A
    while k:
        if k & 1:
            result = base if result is None else result @ base
        k >>= 1
        if k:
            base = base @ base
    return eye_like(A) if result is None else result.copy()


def _pivot_threshold(A, tol: ToleranceConfig) -> float:
    return tol.tau_rank * A.shape[0] * max_abs(A)


def row_echelon(A: np.ndarray, tol: ToleranceConfig | None = None):
    """Reduced row echelon form with partial pivoting.

    Returns ``(R, pivots)``. Under FLOAT a column whose best remaining pivot
    is at most ``tau_rank * n * max|entry|`` is treated as dependent.
    """
    tol = resolve_tol(tol, A)
    exact = is_exact(A)
    R = A.copy()
    if not exact:
        R = R.astype(complex)
    nrows, ncols = R.shape
    thresh = 0.0 if exact else _pivot_threshold(A, tol)
    pivots = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        if exact:
            piv = next((i for i in range(row, nrows) if R[i, col]), None)
            if piv is None:
                continue
        else:
            mags = np.abs(R[row:, col])
            piv = row + int(np.argmax(mags))
            if mags[piv - row] <= thresh:
                R[row:, col] = 0
                continue
        if piv != row:
            R[[row, piv]] = R[[piv, row]]
        R[row] = R[row] / R[row, col]
        for i in range(nrows):
            if i != row and R[i, col]:
                R[i] = R[i] - R[i, col] * R[row]
        if not exact:
            R[row + 1:, col] = 0
        pivots.append(col)
        row += 1
    return R, pivots


def negligible(A: np.ndarray, tol: ToleranceConfig | None = None,
               ref: float | None = None) -> bool:
    """FLOAT only: ``A`` is noise against its natural magnitude ``ref``.

    Used for powers such as A**u whose exact value is zero; their computed
    entries are rounding noise of size eps * ||A||**u, which a test relative
    to the matrix's own entries cannot recognize.
    """
    if ref is None or is_exact(A):
        return False
    tol = resolve_tol(tol, A)
    return max_abs(A) <= tol.tau_zero * ref


def rank(A: np.ndarray, tol: ToleranceConfig | None = None,
         ref: float | None = None) -> int:
    """Rank by row echelon; ``ref`` is an optional natural magnitude (see ``negligible``)."""
    if A.size == 0 or negligible(A, tol, ref):
        return 0
    return len(row_echelon(A, tol)[1])


def nullspace(A: np.ndarray, tol: ToleranceConfig | None = None) -> np.ndarray:
    """Columns spanning N(A), read off the reduced row echelon form."""
    R, pivots = row_echelon(A, tol)
    n = A.shape[1]
    free = [c for c in range(n) if c not in pivots]
    exact = is_exact(A)
    basis = np.empty((n, len(free)), dtype=object if exact else complex)
    for k, f in enumerate(free):
        vec = [ZERO if exact else 0j] * n
        vec[f] = ONE if exact else 1 + 0j
        for r, p in enumerate(pivots):
            vec[p] = -R[r, f]
        basis[:, k] = vec
    return basis


def inverse(A: np.ndarray, tol: ToleranceConfig | None = None) -> np.ndarray:
    """Gauss-Jordan inverse with partial pivoting.

    Raises Singular when no admissible pivot exists.
    """
    tol = resolve_tol(tol, A)
    n = A.shape[0]
    aug = np.concatenate([A, eye_like(A)], axis=1)
    exact = is_exact(A)
    thresh = 0.0 if exact else _pivot_threshold(A, tol)
    for col in range(n):
        if exact:
            piv = next((i for i in range(col, n) if aug[i, col]), None)
        else:
            mags = np.abs(aug[col:, col])
            piv = col + int(np.argmax(mags))
            if mags[piv - col] <= thresh:
                piv = None
        if piv is None:
            raise Singular(f"no admissible pivot in column {col}")
        if piv != col:
            aug[[col, piv]] = aug[[piv, col]]
        aug[col] = aug[col] / aug[col, col]
        for i in range(n):
            if i != col and aug[i, col]:
                aug[i] = aug[i] - aug[i, col] * aug[col]
    return aug[:, n:].copy()


def is_zero_matrix(A: np.ndarray, tol: ToleranceConfig | None = None,
                   scale: float = 1.0) -> bool:
    """Zero test: exact under EXACT, ``max|entry| <= tau_zero * scale`` under FLOAT."""
    if is_exact(A):
        return not any(A.flat)
    tol = resolve_tol(tol, A)
    return max_abs(A) <= tol.tau_zero * scale


def is_singular(A: np.ndarray, tol: ToleranceConfig | None = None) -> bool:
    return rank(A, tol) < A.shape[0]


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

def _is_exact_coeff(c) -> bool:
    return isinstance(c, (CRational, int, _MPQ, Fraction))


@dataclass(frozen=True)
class Poly:
    """Scalar polynomial, coefficients ascending by degree.

    Canonical form drops exactly-zero leading coefficients; the zero
    polynomial has no coefficients. Use :meth:`trim` for the FLOAT zero policy.
    """

    coeffs: tuple

    def __init__(self, coeffs: Iterable = ()):
        cs = list(coeffs)
        if cs and all(_is_exact_coeff(c) for c in cs):
            cs = [exact_scalar(c) for c in cs]
        else:
            cs = [complex(c) for c in cs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def monomial(cls, k: int, exact: bool = True) -> "Poly":
        one, zero = (ONE, ZERO) if exact else (1 + 0j, 0j)
        return cls([zero] * k + [one])

    @classmethod
    def from_roots(cls, roots: Sequence, mults: Sequence[int] | None = None) -> "Poly":
        """Monic polynomial prod (x - r)**m."""
        mults = mults or [1] * len(roots)
        exact = all(_is_exact_coeff(r) for r in roots)
        p = cls([ONE if exact else 1 + 0j])
        for r, m in zip(roots, mults):
            lin = cls([-r, ONE if exact else 1])
            for _ in range(m):
                p = p * lin
        return p

    @property
    def is_exact(self) -> bool:
        return all(isinstance(c, CRational) for c in self.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        return self.coeffs[-1]

    def _unify(self, other: "Poly"):
        if self.is_exact and other.is_exact:
            return list(self.coeffs), list(other.coeffs), ZERO
        return ([complex(c) for c in self.coeffs],
                [complex(c) for c in other.coeffs], 0j)

    def __add__(self, other: "Poly") -> "Poly":
        a, b, z = self._unify(other)
        n = max(len(a), len(b))
        a += [z] * (n - len(a))
        b += [z] * (n - len(b))
        return Poly([x + y for x, y in zip(a, b)])

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return Poly([c * other for c in self.coeffs])
        a, b, z = self._unify(other)
        if not a or not b:
            return Poly([])
        out = [z] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Poly(out)

    __rmul__ = __mul__

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly([c * k for k, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "Poly":
        lead = self.leading()
        return Poly([c / lead for c in self.coeffs])

    def __divmod__(self, other: "Poly"):
        a, b, z = self._unify(other)
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        q = [z] * max(len(a) - len(b) + 1, 0)
        r = list(a)
        lead = b[-1]
        for k in range(len(a) - len(b), -1, -1):
            c = r[k + len(b) - 1] / lead
            q[k] = c
            for i, y in enumerate(b):
                r[k + i] = r[k + i] - c * y
        return Poly(q), Poly(r[:len(b) - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def trim(self, tol: ToleranceConfig | None = None, scale: float = 1.0) -> "Poly":
        """Zero out negligible coefficients (FLOAT only).

        With x rescaled by ``scale`` (the norm of the intended matrix
        argument), c_k counts as zero when |c_k| scale**k is at most
        ``coef_tol`` times the largest such term.
        """
        if self.is_exact or not self.coeffs or tol is None or tol.is_exact:
            return self
        mags = scaled_magnitudes(self.coeffs, scale)
        thresh = coef_tol(tol, self.degree) * max(mags)
        return Poly([0j if m <= thresh else c for c, m in zip(self.coeffs, mags)])

    def to_float(self) -> "Poly":
        return Poly([complex(c) for c in self.coeffs])

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            cs = format_scalar(c)
            if "+" in cs[1:] or "-" in cs[1:]:
                cs = f"({cs})"
            if mono and cs == "1":
                cs = ""
            elif mono and cs == "-1":
                cs = "-"
            elif mono:
                cs += "*"
            terms.append(cs + mono)
        return " + ".join(terms).replace("+ -", "- ")


def coef_tol(tol: ToleranceConfig, n: int) -> float:
    """Relative zero threshold for scaled polynomial coefficients.

    Rounding error in a degree-n coefficient sits near n * eps of the
    largest scaled term, while genuine small coefficients can fall far
    below tau_zero, so the threshold is capped near rounding level.
    """
    return min(tol.tau_zero, 100.0 * max(n, 1) * EPS)


def scaled_magnitudes(coeffs, scale: float = 1.0) -> list:
    """|c_k| * scale**k for ascending coefficients; scale <= 0 is treated as 1."""
    s = scale if scale > 0 else 1.0
    return [abs(c) * s ** k for k, c in enumerate(coeffs)]


def poly_eval_matrix(p: Poly, A: np.ndarray) -> np.ndarray:
    """Horner evaluation of ``p`` at a matrix; the constant term multiplies I."""
    if not p.is_exact and is_exact(A):
        A = to_float(A)
    exact = is_exact(A)
    I = eye_like(A)
    if p.is_zero():
        return zeros_like(A)
    coeffs = p.coeffs if exact else [complex(c) for c in p.coeffs]
    R = I * coeffs[-1]
    for c in reversed(coeffs[:-1]):
        R = R @ A + I * c
    return R


def poly_scale(p: Poly, A: np.ndarray) -> float:
    """Natural magnitude of p(A): sum |c_k| * ||A||**k (infinity norm)."""
    a = norm_inf(A)
    return sum(abs(c) * a ** k for k, c in enumerate(p.coeffs))
