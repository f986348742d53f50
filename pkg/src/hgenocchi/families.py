"""Evaluators for the unified Apostol Hermite-Genocchi family and its relatives.

The unified family ``M_n^(r)(x, y; k, a, b, c; alphas)`` has the exponential
generating function

    (-1)^r t^(rk) 2^(r(1-k)) / prod_i (alpha_i b^t - a^t) * c^(x t + y t^m).

Bases enter only through their logarithms ``lnA, lnB, lnC``.  In exact mode
these must be rationals (``a = 1, b = c = e`` gives ``0, 1, 1``); arbitrary
positive bases need float mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .errors import DivergentSum, SingularDenominator, TailNotConverged, UsageError
from .lattice import HomogeneousWeights, envelope_tail
from .series import (
    EXACT,
    TruncatedSeries,
    constant,
    egf_coeff,
    exp_poly,
    float_field,
    from_coeffs,
)

ALPHA_FLOAT_TOLERANCE = 1e-12


@dataclass(frozen=True)
class UnifiedParams:
    r: int
    k: int
    lnA: object
    lnB: object
    lnC: object
    alphas: tuple
    x: object = 0
    y: object = 0
    m: int = 2
    field: object = EXACT

    def __post_init__(self):
        conv = self.field.convert
        for name in ("lnA", "lnB", "lnC", "x", "y"):
            object.__setattr__(self, name, conv(getattr(self, name)))
        object.__setattr__(self, "alphas", tuple(conv(a) for a in self.alphas))
        if not isinstance(self.r, int) or self.r < 1:
            raise UsageError(f"r must be a positive integer, got {self.r!r}")
        if not isinstance(self.k, int) or self.k < 0:
            raise UsageError(f"k must be a nonnegative integer, got {self.k!r}")
        if not isinstance(self.m, int) or self.m < 1:
            raise UsageError(f"m must be an integer >= 1, got {self.m!r}")
        if len(self.alphas) != self.r:
            raise UsageError(f"expected {self.r} alphas, got {len(self.alphas)}")
        for i, a in enumerate(self.alphas):
            if self.field.kind == "exact":
                bad = a == 1
            else:
                bad = abs(a - 1) <= ALPHA_FLOAT_TOLERANCE
            if bad:
                raise UsageError(f"alpha_{i} = {a} but every alpha must differ from 1")

    def replace(self, **changes) -> "UnifiedParams":
        return replace(self, **changes)


@dataclass(frozen=True)
class HermiteSpec:
    n: int
    m: int
    x: object
    beta: object


def _denominator(p: UnifiedParams, M: int) -> TruncatedSeries:
    F = p.field
    bt = exp_poly([(1, p.lnB)], M, F)
    at = exp_poly([(1, p.lnA)], M, F)
    den = constant(1, M, F)
    for a in p.alphas:
        den = den * (a * bt - at)
    return den


def unified_series(p: UnifiedParams, N: int) -> TruncatedSeries:
    """Generating series of the unified family, truncated at order ``N``."""
    F = p.field
    shift = p.r * p.k
    if N < shift:
        return constant(0, N, F)
    M = N - shift
    prefactor = (-1) ** p.r * Fraction(2) ** (p.r * (1 - p.k))
    body = exp_poly([(1, p.x * p.lnC), (p.m, p.y * p.lnC)], M, F)
    den = _denominator(p, M)
    quotient = (F.convert(prefactor) * body) / den
    return _pad_shift(quotient, shift, N)


def _pad_shift(f: TruncatedSeries, k: int, N: int) -> TruncatedSeries:
    zero = f.field.zero
    return TruncatedSeries((zero,) * k + f.coeffs[: N + 1 - k], f.field)


def unified_coeffs(p: UnifiedParams, N: int) -> list:
    """EGF coefficients ``M_0 .. M_N`` from a single series expansion."""
    return unified_series(p, N).egf()


def unified_poly(p: UnifiedParams, n: int):
    return egf_coeff(unified_series(p, n), n)


def unified_numbers(p: UnifiedParams, n: int):
    """The unified numbers ``M_n^(r)(a, b; alphas)``: the family at ``x = y = 0, c = 1``."""
    if p.x != 0 or p.y != 0 or p.lnC != 0:
        raise UsageError("unified numbers need x = y = 0 and lnC = 0 (c = 1)")
    return unified_poly(p, n)


# classical Apostol families -------------------------------------------------

_KINDS = {
    # kind: (sign joining lambda*b^t and a^t, numerator constant, numerator has t)
    "bernoulli": (-1, 1, True),
    "euler": (+1, 2, False),
    "genocchi": (+1, 2, True),
}


def _apostol_factor(kind, lam, N, lnA, lnB, F) -> TruncatedSeries:
    """One factor t/(lam b^t - a^t), 2/(lam b^t + a^t) or 2t/(lam b^t + a^t)."""
    try:
        sign, num, has_t = _KINDS[kind]
    except KeyError:
        raise UsageError(f"unknown family kind {kind!r}") from None
    lam = F.convert(lam)
    D = lam * exp_poly([(1, lnB)], N + 1, F) + sign * exp_poly([(1, lnA)], N + 1, F)
    if has_t:
        if F.is_zero(D[0]):
            # lam b^t -/+ a^t = t * (D_1 + D_2 t + ...): cancel the t analytically
            reduced = TruncatedSeries(D.coeffs[1:], F)
            if F.is_zero(reduced[0]):
                raise SingularDenominator(f"{kind} denominator vanishes to second order", series=D)
            return constant(num, N, F) / reduced
        return (num * from_coeffs([0, 1], N, F)) / D.truncate(N)
    if F.is_zero(D[0]):
        raise SingularDenominator(f"{kind} denominator has zero constant term (lambda = {lam})", series=D)
    return constant(num, N, F) / D.truncate(N)


def apostol_series(
    kind: str,
    order: int,
    lam,
    N: int,
    *,
    x=0,
    y=0,
    m: int = 2,
    lnA=0,
    lnB=1,
    lnC=1,
    field=EXACT,
) -> TruncatedSeries:
    """``F(t)^order * c^(x t + y t^m)`` for the Apostol-type factor ``F`` of ``kind``."""
    if not isinstance(order, int) or order < 1:
        raise UsageError(f"order must be a positive integer, got {order!r}")
    F = field
    lnA, lnB, lnC = F.convert(lnA), F.convert(lnB), F.convert(lnC)
    factor = _apostol_factor(kind, lam, N, lnA, lnB, F)
    out = factor
    for _ in range(order - 1):
        out = out * factor
    return out * exp_poly([(1, F.convert(x) * lnC), (m, F.convert(y) * lnC)], N, F)


def apostol_hermite(kind, order, lam, n, *, x=0, y=0, m=2, lnA=0, lnB=1, lnC=1, field=EXACT):
    """Hermite-based Apostol polynomial with bases a, b, c (EGF coefficient ``n``)."""
    s = apostol_series(kind, order, lam, n, x=x, y=y, m=m, lnA=lnA, lnB=lnB, lnC=lnC, field=field)
    return egf_coeff(s, n)


def reference_family(kind: str, order: int, lam, x, n: int, field=EXACT):
    """Classical generalized Apostol-Bernoulli / Euler / Genocchi polynomial."""
    return apostol_hermite(kind, order, lam, n, x=x, field=field)


def bs_unified_family(r: int, k: int, alphas: Sequence, x, n: int, field=EXACT):
    """Unified Apostol-Bernoulli/Euler/Genocchi family with generating function

    2^(r(1-k)) t^(rk) / prod_i (alpha_i e^t - 1) * e^(x t).

    Built as a product of per-factor reciprocals, so it shares no quotient
    with :func:`unified_series`.
    """
    F = field
    if n < r * k:
        return F.zero
    M = n - r * k
    et = exp_poly([(1, 1)], M, F)
    out = constant(Fraction(2) ** (r * (1 - k)), M, F) * exp_poly([(1, x)], M, F)
    for a in alphas:
        out = out * (constant(1, M, F) / (F.convert(a) * et - 1))
    # t^(rk) shifts the EGF index: n! [t^n] = n! [t^M] of the unshifted product
    return math.factorial(n) * out[M]


# Hermite polynomials ------------------------------------------------------------

def hermite_kampe(n: int, x, y, lnC=1, field=EXACT):
    """``H_n(x, y, c)``: EGF coefficient of ``c^(x t + y t^2)``."""
    lnC = field.convert(lnC)
    s = exp_poly([(1, field.convert(x) * lnC), (2, field.convert(y) * lnC)], n, field)
    return egf_coeff(s, n)


def gen_hermite(spec: HermiteSpec):
    """``H_{n,m}(x, beta) = sum_k beta^k n! / (k! (n - mk)!) x^(n - mk)`` as a finite sum."""
    n, m, x, beta = spec.n, spec.m, spec.x, spec.beta
    if n < 0 or m < 1:
        raise UsageError(f"need n >= 0 and m >= 1, got n={n}, m={m}")
    total = 0 * x
    for k in range(n // m + 1):
        weight = math.factorial(n) // (math.factorial(k) * math.factorial(n - m * k))
        total += weight * beta**k * x ** (n - m * k)
    return total


def _hermite(n, m, x, beta):
    return gen_hermite(HermiteSpec(n, m, x, beta))


def explicit_lattice(p: UnifiedParams, n: int, epsilon=1e-12, s_max: int = 100_000):
    """The family at ``k = 0, a = 1, b = c = e`` as the lattice sum

        2^r sum_{x_1..x_r >= 0} prod alpha_{i-1}^{x_i} H_{n,m}(x + X, y),

    grouped by ``s = X`` with complete homogeneous weights and cut once the
    certified tail bound drops below ``epsilon`` (absolute).  Always
    evaluated in float mode (256 bits if ``p`` is exact).
    """
    if p.k != 0 or p.lnA != 0 or p.lnB != 1 or p.lnC != 1:
        raise UsageError("explicit_lattice needs k = 0, lnA = 0, lnB = lnC = 1")
    F = p.field if p.field.kind == "float" else float_field(256)
    alphas = [F.convert(a) for a in p.alphas]
    amax = max(abs(a) for a in alphas)
    if amax >= 1:
        raise DivergentSum(f"lattice sum diverges: max |alpha| = {amax} >= 1")
    shift, beta = F.convert(p.x), F.convert(p.y)
    scale = 2**p.r
    h = HomogeneousWeights(alphas, F.one)
    total = F.zero
    bound = lambda s: _hermite(n, p.m, abs(shift) + s, abs(beta))
    for s in range(s_max + 1):
        total += h[s] * _hermite(n, p.m, shift + s, beta)
        tail = envelope_tail(s, r=p.r, amax=amax, degree=n, shift=abs(shift), magnitude=bound)
        if tail is not None and scale * tail <= epsilon:
            return scale * total
    raise TailNotConverged(f"explicit lattice sum not within {epsilon} after {s_max} shells")
