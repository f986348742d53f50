"""Truncated formal power series over an exact-rational or big-float field.

A :class:`TruncatedSeries` stores the coefficients ``f_0 .. f_N`` of
``sum f_n t^n``.  Coefficients are plain Python numbers of the active
field: :class:`fractions.Fraction` in exact mode, ``mpmath`` ``mpf`` values
of a fixed-precision context in float mode.  Every operation returns a new
series and never touches indices above the truncation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from mpmath import MPContext

from .errors import SingularDenominator, UsageError

__all__ = [
    "ExactField",
    "FloatField",
    "EXACT",
    "float_field",
    "common_field",
    "TruncatedSeries",
    "add",
    "sub",
    "neg",
    "mul",
    "div",
    "exp_poly",
    "scale_arg",
    "egf_coeff",
    "constant",
    "from_coeffs",
]

PIVOT_TOLERANCE = 1e-30


class ExactField:
    """Rational numbers in lowest terms (``fractions.Fraction``)."""

    kind = "exact"
    precision = None

    def convert(self, value) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, str):
            return self.parse(value)
        if hasattr(value, "_mpf_"):
            raise UsageError("cannot convert a big-float value into the exact field")
        return Fraction(value)

    def parse(self, text: str) -> Fraction:
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"not an exact rational: {text!r}") from exc

    def format(self, value) -> str:
        return str(self.convert(value))

    def is_zero(self, value) -> bool:
        return value == 0

    def magnitude(self, value) -> float:
        return float(abs(value))

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def __eq__(self, other):
        return isinstance(other, ExactField)

    def __hash__(self):
        return hash("exact")

    def __repr__(self):
        return "ExactField()"


class FloatField:
    """Binary floating point with ``precision`` bits, backed by a private mpmath context."""

    kind = "float"

    def __init__(self, precision: int = 256):
        if precision < 64:
            raise UsageError(f"float precision must be >= 64 bits, got {precision}")
        self.precision = int(precision)
        self.ctx = MPContext()
        self.ctx.prec = self.precision
        # enough digits to round-trip a value of this precision
        self.digits = int(math.ceil(self.precision * math.log10(2))) + 2

    def convert(self, value):
        if isinstance(value, Fraction):
            return self.ctx.mpf(value.numerator) / value.denominator
        if isinstance(value, str):
            return self.parse(value)
        return self.ctx.mpf(value)

    def parse(self, text: str):
        text = text.strip()
        if text.startswith("ln(") and text.endswith(")"):
            inner = self.parse(text[3:-1])
            if inner <= 0:
                raise UsageError(f"logarithm of a non-positive number: {text!r}")
            return self.ctx.log(inner)
        if "/" in text:
            num, _, den = text.partition("/")
            return self.parse(num) / self.parse(den)
        try:
            return self.ctx.mpf(text)
        except (ValueError, TypeError) as exc:
            raise UsageError(f"not a number: {text!r}") from exc

    def format(self, value) -> str:
        return self.ctx.nstr(self.convert(value), self.digits)

    def is_zero(self, value) -> bool:
        return value == 0

    def magnitude(self, value):
        return abs(value)

    @property
    def zero(self):
        return self.ctx.zero

    @property
    def one(self):
        return self.ctx.one

    def __eq__(self, other):
        return isinstance(other, FloatField) and other.precision == self.precision

    def __hash__(self):
        return hash(("float", self.precision))

    def __repr__(self):
        return f"FloatField({self.precision})"


EXACT = ExactField()


@lru_cache(maxsize=None)
def float_field(precision: int = 256) -> FloatField:
    return FloatField(precision)


def common_field(f, g):
    """Field for combining values of ``f`` and ``g``; float precisions round down to the smaller one."""
    if f.kind != g.kind:
        raise UsageError(f"field mode mismatch: {f!r} vs {g!r}")
    if f.kind == "float" and f.precision != g.precision:
        return float_field(min(f.precision, g.precision))
    return f


@dataclass(frozen=True)
class TruncatedSeries:
    coeffs: tuple
    field: object = EXACT

    def __post_init__(self):
        conv = self.field.convert
        object.__setattr__(self, "coeffs", tuple(conv(c) for c in self.coeffs))
        if not self.coeffs:
            raise UsageError("a truncated series needs at least the constant coefficient")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def __add__(self, other):
        return add(self, _lift(other, self))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, _lift(other, self))

    def __rsub__(self, other):
        return sub(_lift(other, self), self)

    def __neg__(self):
        return neg(self)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        c = self.field.convert(other)
        return TruncatedSeries(tuple(c * a for a in self.coeffs), self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return div(self, other)
        c = self.field.convert(other)
        if self.field.is_zero(c):
            raise SingularDenominator("division of a series by zero", series=other)
        return TruncatedSeries(tuple(a / c for a in self.coeffs), self.field)

    def __rtruediv__(self, other):
        return div(_lift(other, self), self)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by ``t**k`` keeping the order (top coefficients drop out)."""
        if k < 0:
            raise UsageError("shift amount must be nonnegative")
        zero = self.field.zero
        N = self.order
        return TruncatedSeries(tuple([zero] * min(k, N + 1)) + self.coeffs[: max(N + 1 - k, 0)], self.field)

    def truncate(self, N: int) -> "TruncatedSeries":
        if N > self.order:
            raise UsageError(f"cannot extend a series of order {self.order} to {N}")
        return TruncatedSeries(self.coeffs[: N + 1], self.field)

    def egf(self) -> list:
        """All EGF-normalised coefficients ``n! f_n``."""
        return [math.factorial(n) * c for n, c in enumerate(self.coeffs)]


def _lift(value, like: TruncatedSeries) -> TruncatedSeries:
    if isinstance(value, TruncatedSeries):
        return value
    return constant(value, like.order, like.field)


def _check_pair(f: TruncatedSeries, g: TruncatedSeries):
    if f.order != g.order:
        raise UsageError(f"order mismatch: {f.order} vs {g.order}")
    return common_field(f.field, g.field)


def constant(value, N: int, field=EXACT) -> TruncatedSeries:
    zero = field.zero
    return TruncatedSeries((field.convert(value),) + (zero,) * N, field)


def from_coeffs(coeffs: Sequence, N: int | None = None, field=EXACT) -> TruncatedSeries:
    """Series with the given leading coefficients, zero-padded (or cut) to order ``N``."""
    coeffs = list(coeffs)
    if N is None:
        N = len(coeffs) - 1
    coeffs = (coeffs + [0] * (N + 1 - len(coeffs)))[: N + 1]
    return TruncatedSeries(tuple(coeffs), field)


def add(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    field = _check_pair(f, g)
    return TruncatedSeries(tuple(a + b for a, b in zip(f.coeffs, g.coeffs)), field)


def neg(f: TruncatedSeries) -> TruncatedSeries:
    return TruncatedSeries(tuple(-a for a in f.coeffs), f.field)


def sub(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return add(f, neg(g))


def mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the common order."""
    field = _check_pair(f, g)
    fc = [field.convert(a) for a in f.coeffs]
    gc = [field.convert(b) for b in g.coeffs]
    N = f.order
    out = []
    for n in range(N + 1):
        acc = field.zero
        for j in range(n + 1):
            a = fc[j]
            if a:
                b = gc[n - j]
                if b:
                    acc += a * b
        out.append(acc)
    return TruncatedSeries(tuple(out), field)


def div(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Quotient ``f / g`` by forward substitution; needs a nonzero constant term in ``g``."""
    field = _check_pair(f, g)
    fc = [field.convert(a) for a in f.coeffs]
    gc = [field.convert(b) for b in g.coeffs]
    g0 = gc[0]
    if field.kind == "exact":
        singular = g0 == 0
    else:
        scale = max(abs(b) for b in gc)
        singular = g0 == 0 or abs(g0) <= PIVOT_TOLERANCE * scale
    if singular:
        raise SingularDenominator(f"denominator series has zero constant term: {g!r}", series=g)
    h = []
    for n in range(f.order + 1):
        acc = fc[n]
        for j in range(1, n + 1):
            b = gc[j]
            if b:
                acc -= b * h[n - j]
        h.append(acc / g0)
    return TruncatedSeries(tuple(h), field)


def exp_poly(terms: Iterable[tuple[int, object]], N: int, field=EXACT) -> TruncatedSeries:
    """``exp(sum c_d t^d)`` truncated at order ``N``.

    Uses ``n E_n = sum_j j P_j E_{n-j}`` (from ``E' = P' E``), so the result is
    exact whenever the exponent coefficients are rational.
    """
    P = [field.zero] * (N + 1)
    for d, c in terms:
        if d < 1:
            raise UsageError(f"exponent term of degree {d}: exp_poly needs degrees >= 1")
        if d <= N:
            P[d] += field.convert(c)
    E = [field.one]
    for n in range(1, N + 1):
        acc = field.zero
        for j in range(1, n + 1):
            if P[j]:
                acc += j * P[j] * E[n - j]
        E.append(acc / n)
    return TruncatedSeries(tuple(E), field)


def scale_arg(f: TruncatedSeries, s) -> TruncatedSeries:
    """The series ``f(s t)``."""
    s = f.field.convert(s)
    out = []
    power = f.field.one
    for c in f.coeffs:
        out.append(c * power)
        power *= s
    return TruncatedSeries(tuple(out), f.field)


def egf_coeff(f: TruncatedSeries, n: int):
    if n < 0 or n > f.order:
        raise UsageError(f"coefficient index {n} outside 0..{f.order}")
    return math.factorial(n) * f.coeffs[n]
