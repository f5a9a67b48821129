"""
Coefficient domains with exact equality decisions.

Three modes share one interface:

- ``symbolic``: the rational function field ℚ(λ) (a sympy ``FracField``), so
  every identity proven here holds for generic index β = λ².
- ``number-field``: ℚ(λ) for a concrete algebraic λ, either λ = 2cos(π/m)
  or λ = √q for rational q.  Perfect squares collapse to ℚ itself.
- ``float``: Python complex numbers with a relative zero tolerance.

Scalars are the raw sympy domain elements (or ``complex``); the domain object
carries the operations.  Domains are immutable after creation.
"""
import logging
import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence

import mpmath
import numpy as np
import sympy
from sympy import QQ, Poly, Rational, Symbol
from sympy.polys.matrices import DomainMatrix
from sympy.polys.polyerrors import CoercionFailed, PolynomialError

from src.algebra.errors import (
    DomainMismatchError,
    DomainSpecError,
    FloatModeError,
    ScalarDivisionError,
    ScalarParseError,
)

logger = logging.getLogger(__name__)

LAMBDA = Symbol("λ")
_X = Symbol("x")

Scalar = Any

_COS_RE = re.compile(r"^index=4cos2\(pi/(?P<m>\d+)\)$")
_INDEX_RE = re.compile(r"^index=(?P<q>[0-9/.]+)$")
_FLOAT_RE = re.compile(r"^float:index=(?P<x>[^,]+)(?:,eps=(?P<eps>[^,]+))?$")
_PRECISION_DPS = 50

MODE_SYMBOLIC = "symbolic"
MODE_NUMBER_FIELD = "number-field"
MODE_FLOAT = "float"


class CoeffDomain:
    """
    A coefficient domain housing λ and β = λ².

    Attributes:
        mode: one of 'symbolic', 'number-field', 'float'
        descriptor: canonical descriptor string (round-trips through make_domain)
        field: the sympy domain (None in float mode)
        lam, beta: λ and λ² as elements of the domain
        minpoly: minimal polynomial of λ over ℚ (number-field mode, None if λ ∈ ℚ)
        eps: relative zero tolerance (float mode)
    """

    def __init__(
        self,
        mode: str,
        descriptor: str,
        field=None,
        lam: Scalar = None,
        lam_numeric=None,
        minpoly: Optional[Poly] = None,
        eps: Optional[float] = None,
        sample_lambda: int = 3,
        m: Optional[int] = None,
    ):
        self.mode = mode
        self.descriptor = descriptor
        self.field = field
        self.minpoly = minpoly
        self.eps = eps
        self.m = m
        self.sample_lambda = sample_lambda
        self._lam_numeric = lam_numeric

        if mode == MODE_FLOAT:
            self.zero: Scalar = 0j
            self.one: Scalar = 1 + 0j
        else:
            self.zero = field.zero
            self.one = field.one
        self.lam = lam
        self.beta = lam * lam
        self._lam_inv = self.one / lam
        self._powers: Dict[int, Scalar] = {0: self.one}

    # ── Identity ──────────────────────────────────────────────────────────

    def __repr__(self) -> str:
        return f"CoeffDomain({self.descriptor!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, CoeffDomain) and self.descriptor == other.descriptor

    def __hash__(self) -> int:
        return hash(self.descriptor)

    @property
    def is_exact(self) -> bool:
        return self.mode != MODE_FLOAT

    def require_exact(self, operation: str) -> None:
        if not self.is_exact:
            raise FloatModeError(f"{operation} requires an exact domain, got '{self.descriptor}'")

    # ── Conversion ────────────────────────────────────────────────────────

    def contains(self, x: Scalar) -> bool:
        if self.mode == MODE_FLOAT:
            return isinstance(x, (complex, float, int, np.number))
        return self.field.of_type(x)

    def convert(self, value) -> Scalar:
        """Convert ints, Fractions, sympy numbers/expressions or strings into the domain."""
        if isinstance(value, str):
            return self.parse(value)
        if self.mode == MODE_FLOAT:
            if isinstance(value, sympy.Basic):
                return complex(sympy.N(value.subs(LAMBDA, self._lam_numeric)))
            return complex(value)
        if self.field.of_type(value):
            return value
        if isinstance(value, bool):
            raise DomainMismatchError(f"cannot use {value!r} as a scalar")
        if isinstance(value, int):
            return self.field.convert(value)
        if isinstance(value, Fraction):
            return self.field.convert_from(QQ(value.numerator, value.denominator), QQ)
        if isinstance(value, sympy.Basic):
            return self._from_expr(value)
        if isinstance(value, (float, complex)):
            raise DomainMismatchError(
                f"float value {value!r} cannot enter exact domain '{self.descriptor}'"
            )
        raise DomainMismatchError(f"value {value!r} does not belong to domain '{self.descriptor}'")

    def _from_expr(self, expr: sympy.Basic) -> Scalar:
        if self.mode == MODE_SYMBOLIC:
            try:
                return self.field.from_sympy(expr)
            except (CoercionFailed, PolynomialError) as e:
                raise ScalarParseError(f"'{expr}' is not a rational function of λ: {e}") from e
        num, den = sympy.together(expr).as_numer_denom()
        try:
            num_poly = Poly(num, LAMBDA, domain=QQ)
            den_poly = Poly(den, LAMBDA, domain=QQ)
        except (PolynomialError, CoercionFailed) as e:
            raise ScalarParseError(f"'{expr}' is not a rational function of λ: {e}") from e
        value = self._horner(num_poly.all_coeffs())
        denominator = self._horner(den_poly.all_coeffs())
        return self.div(value, denominator)

    def _horner(self, coeffs: Sequence[Rational]) -> Scalar:
        acc = self.zero
        for c in coeffs:
            acc = acc * self.lam + self.convert(Fraction(int(c.p), int(c.q)))
        return acc

    # ── Arithmetic ────────────────────────────────────────────────────────

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return a + b

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return a - b

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return a * b

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        if self.is_zero(b):
            raise ScalarDivisionError(f"division by zero in domain '{self.descriptor}'")
        return a / b

    def neg(self, a: Scalar) -> Scalar:
        return -a

    def inv(self, a: Scalar) -> Scalar:
        return self.div(self.one, a)

    def lam_pow(self, k: int) -> Scalar:
        """λ^k for any integer k (cached)."""
        cached = self._powers.get(k)
        if cached is not None:
            return cached
        base = self.lam if k > 0 else self._lam_inv
        value = self.one
        for _ in range(abs(k)):
            value = value * base
        self._powers[k] = value
        return value

    def conj(self, a: Scalar) -> Scalar:
        """Complex conjugation; exact modes are real fields."""
        if self.mode == MODE_FLOAT:
            return complex(a).conjugate()
        return a

    def magnitude(self, values) -> float:
        """Largest |x| over values in float mode; 1.0 in exact modes."""
        if self.mode != MODE_FLOAT:
            return 1.0
        return max((abs(x) for x in values), default=1.0)

    def is_zero(self, x: Scalar, scale: float = 1.0) -> bool:
        """Float mode: |x| ≤ eps·max(scale, 1), scale being the size of the operands x came from."""
        if self.mode == MODE_FLOAT:
            return abs(x) <= self.eps * max(scale, 1.0)
        return not x

    def eq(self, a: Scalar, b: Scalar, scale: float = 1.0) -> bool:
        if self.mode == MODE_FLOAT:
            scale = max(scale, abs(a), abs(b))
        return self.is_zero(a - b, scale)

    # ── Numerics ──────────────────────────────────────────────────────────

    def numeric(self, x: Scalar) -> complex:
        """High-precision numeric value (symbolic mode: at λ = sample_lambda)."""
        if self.mode == MODE_FLOAT:
            return complex(x)
        return complex(self._mp_value(x))

    def _mp_value(self, x: Scalar):
        with mpmath.workdps(_PRECISION_DPS):
            if self.mode == MODE_SYMBOLIC:
                value = _specialize(self.field, x, self.sample_lambda)
                return mpmath.mpf(int(value.p)) / int(value.q)
            if self.minpoly is None:
                value = Rational(self.field.to_sympy(x))
                return mpmath.mpf(int(value.p)) / int(value.q)
            lam = self._lam_numeric_mp()
            acc = mpmath.mpf(0)
            for c in x.to_list():
                c = Rational(QQ.to_sympy(c))
                acc = acc * lam + mpmath.mpf(int(c.p)) / int(c.q)
            return acc

    def _lam_numeric_mp(self):
        if self.m is not None:
            return 2 * mpmath.cos(mpmath.pi / self.m)
        q = Rational(-self.minpoly.all_coeffs()[-1])
        return mpmath.sqrt(mpmath.mpf(int(q.p)) / int(q.q))

    def sign(self, x: Scalar) -> int:
        """Sign of the real part: -1, 0 or 1 (exact zero test first)."""
        if self.is_zero(x):
            return 0
        if self.mode == MODE_FLOAT:
            return 1 if complex(x).real > 0 else -1
        with mpmath.workdps(_PRECISION_DPS):
            return 1 if self._mp_value(x) > 0 else -1

    def sqrt_float(self, x: Scalar) -> Scalar:
        if self.mode != MODE_FLOAT:
            raise FloatModeError("square roots are only taken in float mode")
        return complex(np.sqrt(complex(x)))

    # ── Formatting ────────────────────────────────────────────────────────

    def to_expr(self, x: Scalar) -> sympy.Expr:
        """The scalar as a sympy expression in λ (exact modes)."""
        if self.mode == MODE_FLOAT:
            z = complex(x)
            return sympy.Float(z.real) if z.imag == 0 else sympy.Float(z.real) + sympy.I * sympy.Float(z.imag)
        if self.mode == MODE_SYMBOLIC or self.minpoly is None:
            return self.field.to_sympy(x)
        coeffs = x.to_list()
        degree = len(coeffs) - 1
        return sum(
            (QQ.to_sympy(c) * LAMBDA ** (degree - i) for i, c in enumerate(coeffs)),
            sympy.Integer(0),
        )

    def format(self, x: Scalar) -> str:
        """Audit-ready string: polynomial/rational form in λ, never decimals in exact modes."""
        if self.mode == MODE_FLOAT:
            z = complex(x)
            if abs(z.imag) <= self.eps * max(abs(z), 1.0):
                return repr(z.real)
            return f"{z.real!r}{z.imag:+}j"
        text = sympy.sstr(self.to_expr(x), order="lex")
        text = re.sub(r"\*\*\((-?\d+)\)", r"^\1", text)
        return text.replace("**", "^")

    def parse(self, text: str) -> Scalar:
        """Read a scalar written in λ (accepts λ, lambda, lam or l)."""
        source = re.sub(r"\blambda\b|\blam\b", "λ", str(text)).replace("^", "**")
        try:
            expr = sympy.sympify(source, locals={"λ": LAMBDA, "l": LAMBDA})
        except (sympy.SympifyError, SyntaxError, TypeError) as e:
            raise ScalarParseError(f"cannot parse scalar '{text}': {e}") from e
        extra = expr.free_symbols - {LAMBDA}
        if extra:
            raise ScalarParseError(f"scalar '{text}' uses unknown symbols {sorted(map(str, extra))}")
        if self.mode == MODE_FLOAT:
            return complex(sympy.N(expr.subs(LAMBDA, self._lam_numeric)))
        return self._from_expr(expr)

    # ── Linear algebra ────────────────────────────────────────────────────

    def to_domain_matrix(self, rows: Sequence[Sequence[Scalar]]) -> DomainMatrix:
        self.require_exact("exact linear algebra")
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        return DomainMatrix([list(r) for r in rows], (nrows, ncols), self.field)

    def to_numpy(self, rows: Sequence[Sequence[Scalar]]) -> np.ndarray:
        if self.mode == MODE_FLOAT:
            return np.array(rows, dtype=complex)
        return np.array([[complex(self.numeric(x)) for x in r] for r in rows], dtype=complex)

    def rank(self, rows: Sequence[Sequence[Scalar]]) -> int:
        """Rank: exact in exact modes, ε-thresholded singular values in float mode."""
        if not rows or not rows[0]:
            return 0
        if self.mode == MODE_FLOAT:
            arr = np.array(rows, dtype=complex)
            scale = max(float(np.abs(arr).max()), 1.0)
            return int(np.linalg.matrix_rank(arr, tol=self.eps * scale * max(arr.shape)))
        if self.mode == MODE_SYMBOLIC:
            specialized = self._specialized_matrix(rows)
            rank = specialized.rank()
            if rank == min(specialized.shape):
                return rank
        return self.to_domain_matrix(rows).rank()

    def pivot_columns(self, rows: Sequence[Sequence[Scalar]]) -> List[int]:
        """Greedy lexicographically-first maximal set of independent columns."""
        if not rows or not rows[0]:
            return []
        if self.mode == MODE_FLOAT:
            return _float_pivots(np.array(rows, dtype=complex), self.eps)
        if self.mode == MODE_SYMBOLIC:
            specialized = self._specialized_matrix(rows)
            _, pivots = specialized.rref()
            if len(pivots) == specialized.shape[1]:
                return list(pivots)
        _, pivots = self.to_domain_matrix(rows).rref()
        return list(pivots)

    def _specialized_matrix(self, rows: Sequence[Sequence[Scalar]]) -> DomainMatrix:
        """Symbolic matrix evaluated at λ = sample_lambda; full rank there implies generic full rank."""
        values = [
            [QQ.from_sympy(_specialize(self.field, x, self.sample_lambda)) for x in r]
            for r in rows
        ]
        return DomainMatrix(values, (len(values), len(values[0])), QQ)


@lru_cache(maxsize=4096)
def _specialize(field, x, sample: int) -> Rational:
    return Rational(field.to_sympy(x).subs(LAMBDA, sample))


def _float_pivots(arr: np.ndarray, eps: float) -> List[int]:
    basis: List[np.ndarray] = []
    pivots: List[int] = []
    scale = max(float(np.abs(arr).max()), 1.0)
    for j in range(arr.shape[1]):
        col = arr[:, j].astype(complex)
        residual = col.copy()
        for q in basis:
            residual = residual - np.vdot(q, residual) * q
        norm = float(np.linalg.norm(residual))
        if norm > eps * scale * max(arr.shape):
            basis.append(residual / norm)
            pivots.append(j)
    return pivots


# ── Domain construction ────────────────────────────────────────────────────


def _cos_minpoly(m: int) -> Poly:
    """
    Minimal polynomial of 2cos(π/m) over ℚ.

    2cos(π/m) is a root of 2·T_m(x/2) + 2 (T_m the Chebyshev polynomial);
    factor that over ℚ and keep the factor whose root lies closest to the
    target value.
    """
    target = 2 * math.cos(math.pi / m)
    cheb = sympy.chebyshevt_poly(m, _X)
    derived = Poly(sympy.expand(2 * cheb.subs(_X, _X / 2) + 2), _X, domain=QQ)
    _, factors = sympy.factor_list(derived)
    best, best_distance = None, math.inf
    for factor, _ in factors:
        coeffs = [float(c) for c in factor.all_coeffs()]
        distance = min(abs(r - target) for r in np.roots(coeffs)) if len(coeffs) > 1 else math.inf
        if distance < best_distance:
            best, best_distance = factor, distance
    return best.monic()


def _algebraic_field(minpoly: Poly, root: sympy.Expr):
    field = QQ.algebraic_field((minpoly, root))
    generator = field([field.dom.one, field.dom.zero])
    return field, generator


def make_domain(
    spec: str,
    *,
    eps: Optional[float] = None,
    sample_lambda: Optional[int] = None,
) -> CoeffDomain:
    """
    Build a coefficient domain from a descriptor string.

    Args:
        spec: "symbolic" | "index=q" (rational q > 1) | "index=4cos2(pi/m)" (m ≥ 4)
              | "float:index=x,eps=ε"
        eps: float-mode tolerance override (defaults to settings.tl_float_eps)
        sample_lambda: symbolic-mode evaluation point for sign decisions

    Returns:
        CoeffDomain in which λ² = β is exactly representable.

    Raises:
        DomainSpecError: malformed descriptor, m < 4 or q ≤ 1.
    """
    from src.config import get_settings

    settings = get_settings()
    sample = sample_lambda if sample_lambda is not None else settings.tl_symbolic_sample_lambda
    text = (spec or "").replace(" ", "")

    if text == "symbolic":
        field = QQ.frac_field(LAMBDA)
        return CoeffDomain(
            MODE_SYMBOLIC, "symbolic", field=field, lam=field.from_sympy(LAMBDA),
            lam_numeric=sample, sample_lambda=sample,
        )

    match = _COS_RE.match(text)
    if match:
        m = int(match.group("m"))
        if m < 4:
            raise DomainSpecError(f"index=4cos2(pi/m) needs m >= 4, got m={m}")
        minpoly = _cos_minpoly(m)
        lam_numeric = 2 * math.cos(math.pi / m)
        if minpoly.degree() == 1:
            root = Rational(-minpoly.all_coeffs()[-1])
            return CoeffDomain(
                MODE_NUMBER_FIELD, f"index=4cos2(pi/{m})", field=QQ, lam=QQ.from_sympy(root),
                lam_numeric=lam_numeric, sample_lambda=sample, m=m,
            )
        field, generator = _algebraic_field(minpoly, 2 * sympy.cos(sympy.pi / m))
        logger.debug("Number field for m=%s with minimal polynomial %s", m, minpoly.as_expr())
        return CoeffDomain(
            MODE_NUMBER_FIELD, f"index=4cos2(pi/{m})", field=field, lam=generator,
            lam_numeric=lam_numeric, minpoly=minpoly, sample_lambda=sample, m=m,
        )

    match = _INDEX_RE.match(text)
    if match:
        try:
            q = Fraction(match.group("q"))
        except (ValueError, ZeroDivisionError) as e:
            raise DomainSpecError(f"malformed index value in '{spec}'") from e
        if q <= 1:
            raise DomainSpecError(f"index must be > 1, got {q}")
        descriptor = f"index={q}"
        num_root, den_root = math.isqrt(q.numerator), math.isqrt(q.denominator)
        if num_root * num_root == q.numerator and den_root * den_root == q.denominator:
            return CoeffDomain(
                MODE_NUMBER_FIELD, descriptor, field=QQ, lam=QQ(num_root, den_root),
                lam_numeric=num_root / den_root, sample_lambda=sample,
            )
        rational_q = Rational(q.numerator, q.denominator)
        minpoly = Poly(_X**2 - rational_q, _X, domain=QQ)
        field, generator = _algebraic_field(minpoly, sympy.sqrt(rational_q))
        return CoeffDomain(
            MODE_NUMBER_FIELD, descriptor, field=field, lam=generator,
            lam_numeric=math.sqrt(float(q)), minpoly=minpoly, sample_lambda=sample,
        )

    match = _FLOAT_RE.match(text)
    if match:
        try:
            beta = float(match.group("x"))
            tolerance = float(match.group("eps")) if match.group("eps") else None
        except ValueError as e:
            raise DomainSpecError(f"malformed float descriptor '{spec}'") from e
        if beta <= 1:
            raise DomainSpecError(f"index must be > 1, got {beta}")
        tolerance = tolerance if tolerance is not None else (eps if eps is not None else settings.tl_float_eps)
        lam = complex(math.sqrt(beta))
        return CoeffDomain(
            MODE_FLOAT, f"float:index={beta!r},eps={tolerance!r}", lam=lam,
            lam_numeric=lam.real, eps=tolerance, sample_lambda=sample,
        )

    raise DomainSpecError(
        f"unknown domain descriptor '{spec}' "
        "(expected symbolic, index=q, index=4cos2(pi/m) or float:index=x,eps=e)"
    )


def scalar_arith(domain: CoeffDomain, a: Scalar, b: Scalar, op: str) -> Scalar:
    """
    Apply one of + - * / (also × ÷) to two scalars of `domain`.

    Raises:
        DomainMismatchError: an operand is not an element of the domain.
        ScalarDivisionError: division by zero.
    """
    for operand in (a, b):
        if not domain.contains(operand):
            raise DomainMismatchError(f"{operand!r} is not an element of '{domain.descriptor}'")
    if op == "+":
        return domain.add(a, b)
    if op in ("-", "−"):
        return domain.sub(a, b)
    if op in ("*", "×"):
        return domain.mul(a, b)
    if op in ("/", "÷"):
        return domain.div(a, b)
    raise ValueError(f"unknown operator {op!r}")
