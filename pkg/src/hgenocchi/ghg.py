"""The generalized Hermite-Genocchi (GHG) distribution on the lattice N^r.

    P(x) = 2^r B prod_i alpha_i^{x_i} H_{n,m}(x_1 + ... + x_r + gamma, beta)

with ``1/B = M_n^(r)(gamma, beta; alphas)``, the unified family at
``k = 0, a = 1, b = c = e`` and ``h(t, y) = y t^m``.  The 2^r carried by
that family is part of ``1/B``, so the pmf sums to one.

Everything runs in float mode (mpmath, 256 bits by default).  Infinite sums
are grouped by the shell ``s = x_1 + ... + x_r`` and stopped once the
certified tail bound of :mod:`hgenocchi.lattice` falls below ``epsilon``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb, prod

from .errors import DivergentSum, TailNotConverged, UndefinedHazard, UsageError
from .families import HermiteSpec, UnifiedParams, gen_hermite, unified_coeffs, unified_poly
from .lattice import HomogeneousWeights, envelope_tail
from .series import float_field

DEFAULT_EPSILON = 1e-12
DEFAULT_TOLERANCE = 1e-9
S_MAX = 200_000
BOX_MAX_PREFIXES = 2_000_000

NORMALIZER_METHODS = ("series", "homogeneous-reduction", "lattice-bruteforce")
CLASSES = ("MNBU", "MNWU", "MNBUE", "MNWUE", "MIHR", "MDHR")


@dataclass(frozen=True)
class GHGParams:
    r: int
    m: int
    alphas: tuple
    gamma: object = 0
    beta: object = 0
    n: int = 0
    precision: int = 256

    def __post_init__(self):
        F = float_field(self.precision)
        object.__setattr__(self, "alphas", tuple(_num(F, a) for a in self.alphas))
        object.__setattr__(self, "gamma", _num(F, self.gamma))
        object.__setattr__(self, "beta", _num(F, self.beta))

    @property
    def field(self):
        return float_field(self.precision)

    @classmethod
    def from_dict(cls, data: dict) -> tuple["GHGParams", float | None]:
        """Parse ``{r, m, alphas, gamma, beta, n, epsilon?}``; returns ``(params, epsilon)``."""
        required = {"r", "m", "alphas", "n"}
        missing = required - set(data)
        if missing:
            raise UsageError(f"params missing {sorted(missing)}")
        unknown = set(data) - required - {"gamma", "beta", "epsilon", "precision"}
        if unknown:
            raise UsageError(f"unknown params keys {sorted(unknown)}")
        p = cls(
            r=data["r"],
            m=data["m"],
            alphas=tuple(data["alphas"]),
            gamma=data.get("gamma", 0),
            beta=data.get("beta", 0),
            n=data["n"],
            precision=data.get("precision", 256),
        )
        eps = data.get("epsilon")
        return p, (float(eps) if eps is not None else None)

    def to_dict(self) -> dict:
        fmt = self.field.format
        return {
            "r": self.r,
            "m": self.m,
            "alphas": [fmt(a) for a in self.alphas],
            "gamma": fmt(self.gamma),
            "beta": fmt(self.beta),
            "n": self.n,
        }


def _num(F, value):
    # JSON floats go through their shortest repr so 0.3 means the decimal 0.3
    if isinstance(value, float):
        value = repr(value)
    return F.convert(value)


@dataclass(frozen=True)
class LatticePoint:
    x: tuple

    def __post_init__(self):
        x = tuple(self.x)
        if any(not isinstance(v, int) or v < 0 for v in x):
            raise UsageError(f"lattice point needs nonnegative integers, got {x}")
        object.__setattr__(self, "x", x)


@dataclass(frozen=True)
class NormalizerResult:
    B: object
    inverse: object
    method: str
    truncation_used: int
    tail_bound: object


@dataclass(frozen=True)
class LemmaCDF:
    """Marginal CDF by the lemma formula, as printed and exponent-corrected."""

    printed: object
    corrected: object
    direct: object
    residual_printed: object
    residual_corrected: object


@dataclass(frozen=True)
class ClassifyResult:
    cls: str
    holds: bool
    witness: dict | None = None

    @property
    def verdict(self) -> str:
        return "holds-on-grid" if self.holds else "violated"


def validate(p: GHGParams) -> GHGParams:
    if not isinstance(p.r, int) or p.r < 1:
        raise UsageError(f"r must be a positive integer, got {p.r!r}")
    if not isinstance(p.m, int) or p.m < 2:
        raise UsageError(f"m must be an integer >= 2, got {p.m!r}")
    if not isinstance(p.n, int) or p.n < 0:
        raise UsageError(f"n must be a nonnegative integer, got {p.n!r}")
    if len(p.alphas) != p.r:
        raise UsageError(f"expected {p.r} alphas, got {len(p.alphas)}")
    for i, a in enumerate(p.alphas):
        if a >= 1:
            raise DivergentSum(f"alpha_{i} = {a}: the normalizing lattice sum diverges for alpha >= 1")
        if a <= 0:
            raise UsageError(f"alpha_{i} = {a}: weights must lie in (0, 1)")
    if p.gamma < 0:
        raise UsageError(f"gamma must be >= 0, got {p.gamma}")
    if p.beta < 0:
        raise UsageError(f"beta must be >= 0, got {p.beta}")
    return p


def _point(p: GHGParams, x) -> tuple:
    x = x.x if isinstance(x, LatticePoint) else LatticePoint(tuple(x)).x
    if len(x) != p.r:
        raise UsageError(f"lattice point has {len(x)} coordinates, expected {p.r}")
    return x


def _hermite(p: GHGParams, c):
    return gen_hermite(HermiteSpec(p.n, p.m, c, p.beta))


def _scale(p: GHGParams):
    return p.field.convert(2**p.r)


# the family as a polynomial in its first argument ------------------------------


@lru_cache(maxsize=256)
def _family_coeffs(p: GHGParams, weights: tuple) -> tuple:
    up = UnifiedParams(p.r, 0, 0, 1, 1, weights, 0, p.beta, p.m, p.field)
    return tuple(unified_coeffs(up, p.n))


def family_value(p: GHGParams, shift, weights=None):
    """``M_n^(r)(shift, beta; weights)`` (weights default to the alphas).

    Expands ``e^(shift t)`` against the family at zero shift, so one series
    expansion serves every abscissa.
    """
    weights = p.alphas if weights is None else tuple(p.field.convert(w) for w in weights)
    Q = _family_coeffs(p, weights)
    shift = p.field.convert(shift)
    n = p.n
    return sum(comb(n, l) * Q[l] * shift ** (n - l) for l in range(n + 1))


@lru_cache(maxsize=256)
def _inverse_B(p: GHGParams):
    validate(p)
    return unified_poly(UnifiedParams(p.r, 0, 0, 1, 1, p.alphas, p.gamma, p.beta, p.m, p.field), p.n)


# adaptive shell sums ------------------------------------------------------------


def _shell_sum(term, *, p, amax, shift, degree, magnitude, epsilon, extra=0, scale=None, start=0, r=None,
               absolute=False):
    """``sum_{s >= start} term(s)`` cut when the certified tail is ``<= epsilon * max(|partial|, scale)``,
    or ``<= epsilon`` outright when ``absolute``."""
    total = p.field.zero
    r = p.r if r is None else r
    for s in range(start, S_MAX + 1):
        total += term(s)
        tail = envelope_tail(s, r=r, amax=amax, degree=degree, shift=shift, magnitude=magnitude, extra=extra)
        if tail is None:
            continue
        if absolute:
            if tail <= epsilon:
                return total, s, tail
            continue
        ref = abs(total) if scale is None else max(abs(total), scale)
        if ref > 0 and tail <= epsilon * ref:
            return total, s, tail
    raise TailNotConverged(f"tail bound above {epsilon} after {S_MAX} shells")


class _NewtonWeights:
    """``h_s`` from power sums: ``s h_s = sum_{i=1}^{s} p_i h_{s-i}``."""

    def __init__(self, weights, one):
        self.weights = list(weights)
        self.powers = [one] * len(self.weights)
        self.power_sums = [None]
        self.values = [one]

    def __getitem__(self, s):
        while len(self.values) <= s:
            k = len(self.values)
            self.powers = [pw * w for pw, w in zip(self.powers, self.weights)]
            self.power_sums.append(sum(self.powers, 0 * self.values[0]))
            acc = sum(self.power_sums[i] * self.values[k - i] for i in range(1, k + 1))
            self.values.append(acc / k)
        return self.values[s]


def normalizer(p: GHGParams, method: str = "series", epsilon=DEFAULT_EPSILON) -> NormalizerResult:
    """The normalizing constant ``B`` (``1/B`` is the full weighted lattice sum, 2^r included).

    The summing methods stop once the certified bound on the omitted part
    of ``1/B`` is at most ``epsilon`` (absolute).
    """
    validate(p)
    F = p.field
    scale = _scale(p)
    amax = max(p.alphas)
    H = lambda s: _hermite(p, s + p.gamma)
    if method == "series":
        inv = _inverse_B(p)
        return NormalizerResult(1 / inv, inv, method, p.n, F.zero)
    if method == "homogeneous-reduction":
        h = _NewtonWeights(p.alphas, F.one)
        total, S, tail = _shell_sum(
            lambda s: h[s] * H(s), p=p, amax=amax, shift=p.gamma, degree=p.n, magnitude=H,
            epsilon=epsilon / scale, absolute=True,
        )
        inv = scale * total
        return NormalizerResult(1 / inv, inv, method, S, scale * tail)
    if method == "lattice-bruteforce":
        inv, S, tail = _bruteforce(p, epsilon)
        return NormalizerResult(1 / inv, inv, method, S, tail)
    raise UsageError(f"unknown normalizer method {method!r}; choose from {NORMALIZER_METHODS}")


def _bruteforce(p: GHGParams, epsilon):
    """Direct sum over the box [0, S]^r; S certified so that the outside mass is below epsilon."""
    F = p.field
    ctx = F.ctx
    scale = _scale(p)
    amax = max(p.alphas)
    H = lambda s: _hermite(p, s + p.gamma)
    S = 0
    while True:
        tail = envelope_tail(S, r=p.r, amax=amax, degree=p.n, shift=p.gamma, magnitude=H)
        if tail is not None and scale * tail <= epsilon:
            break
        S += 1
        if S > S_MAX:
            raise TailNotConverged("box size for the brute-force normalizer exceeds S_MAX")
    if (S + 1) ** (p.r - 1) > BOX_MAX_PREFIXES:
        raise TailNotConverged(f"brute-force box [0, {S}]^{p.r} is too large")
    Hs = [H(s) for s in range(p.r * S + 1)]
    powers = [[a**j for j in range(S + 1)] for a in p.alphas]
    last = powers[-1]
    total = F.zero
    for prefix in itertools.product(range(S + 1), repeat=p.r - 1):
        w = prod((powers[j][v] for j, v in enumerate(prefix)), start=F.one)
        s0 = sum(prefix)
        total += w * ctx.fdot(last, Hs[s0 : s0 + S + 1])
    return scale * total, S, scale * tail


# pmf, generating functions, moments ---------------------------------------------


def pmf(p: GHGParams, x) -> object:
    validate(p)
    x = _point(p, x)
    weight = prod((a**v for a, v in zip(p.alphas, x)), start=p.field.one)
    return _scale(p) * weight * _hermite(p, sum(x) + p.gamma) / _inverse_B(p)


def pgf(p: GHGParams, t) -> object:
    """``E[prod t_i^X_i] = B * M_n^(r)(gamma, beta; t * alphas)`` (componentwise product)."""
    validate(p)
    F = p.field
    t = [F.convert(_plain(v)) for v in t]
    if len(t) != p.r:
        raise UsageError(f"pgf argument needs {p.r} components")
    weights = [ti * a for ti, a in zip(t, p.alphas)]
    for i, w in enumerate(weights):
        if abs(w) >= 1:
            raise DivergentSum(f"|t_{i} alpha_{i}| = {abs(w)} >= 1: pgf diverges")
    return family_value(p, p.gamma, weights) / _inverse_B(p)


def mgf(p: GHGParams, t) -> object:
    validate(p)
    F = p.field
    t = [F.convert(_plain(v)) for v in t]
    if len(t) != p.r:
        raise UsageError(f"mgf argument needs {p.r} components")
    for i, (ti, a) in enumerate(zip(t, p.alphas)):
        if F.ctx.exp(ti) * a >= 1:
            raise DivergentSum(f"e^t_{i} alpha_{i} >= 1: mgf diverges")
    return pgf(p, [F.ctx.exp(ti) for ti in t])


def _plain(v):
    return repr(v) if isinstance(v, float) else v


def _falling(u, ell):
    out = 1
    for j in range(ell):
        out *= u - j
    return out


def _coordinate_sum(p, i, f, degree, epsilon, start_u=0, start=0):
    """``sum_s H(s + gamma) sum_{u = start_u}^{s} f(u) alpha_i^u h_{s-u}(alphas without i)``."""
    F = p.field
    a_i = p.alphas[i]
    rest = HomogeneousWeights(p.alphas[:i] + p.alphas[i + 1 :], F.one)
    pw = [F.one]
    H = lambda s: _hermite(p, s + p.gamma)

    def term(s):
        while len(pw) <= s:
            pw.append(pw[-1] * a_i)
        inner = F.zero
        for u in range(start_u, s + 1):
            fu = f(u)
            if fu:
                inner += fu * pw[u] * rest[s - u]
        return H(s) * inner

    mass = _inverse_B(p) / _scale(p)
    total, _, _ = _shell_sum(
        term, p=p, amax=max(p.alphas), shift=p.gamma, degree=p.n, magnitude=H,
        epsilon=epsilon, extra=degree, scale=mass, start=start,
    )
    return total / mass


def moment(p: GHGParams, i: int, ell: int, kind: str = "raw", epsilon=DEFAULT_EPSILON):
    """``E[X_i^ell]`` (raw) or ``E[(X_i)_ell]`` (falling factorial) by a direct lattice sum."""
    validate(p)
    _coord(p, i)
    if ell < 0:
        raise UsageError("moment order must be >= 0")
    if kind == "raw":
        f = lambda u: u**ell
    elif kind == "factorial":
        f = lambda u: _falling(u, ell)
    else:
        raise UsageError(f"moment kind must be raw or factorial, got {kind!r}")
    return _coordinate_sum(p, i, f, ell, epsilon)


def mean_variance(p: GHGParams, i: int, epsilon=DEFAULT_EPSILON):
    mean = moment(p, i, 1, "raw", epsilon)
    second = moment(p, i, 2, "raw", epsilon)
    var = second - mean**2
    if var < 0 and -var <= 10 * epsilon * max(second, 1):
        var = 0 * var
    return mean, var


def _coord(p, i):
    if not isinstance(i, int) or not 0 <= i < p.r:
        raise UsageError(f"coordinate index must be in 0..{p.r - 1}, got {i!r}")


# CDFs, reliability, hazard -----------------------------------------------------


def marginal_cdf(p: GHGParams, i: int, x: int, method: str = "direct", epsilon=DEFAULT_EPSILON):
    """``P(X_i <= x)``.

    ``direct`` subtracts the tail lattice sum over ``l_i > x``.  ``lemma``
    returns a :class:`LemmaCDF` with the closed form as printed
    (``alpha_i^x``) and with the exponent its derivation produces
    (``alpha_i^(x+1)``), each with its residual against ``direct``.
    """
    validate(p)
    _coord(p, i)
    if not isinstance(x, int) or x < 0:
        raise UsageError(f"x must be a nonnegative integer, got {x!r}")
    if method == "direct":
        tail = _coordinate_sum(p, i, lambda u: 1, 0, epsilon, start_u=x + 1, start=x + 1)
        return 1 - tail
    if method == "lemma":
        direct = marginal_cdf(p, i, x, "direct", epsilon)
        a = p.alphas[i]
        M = family_value(p, p.gamma + x + 1)
        inv = _inverse_B(p)
        printed = 1 - a**x * M / inv
        corrected = 1 - a ** (x + 1) * M / inv
        return LemmaCDF(printed, corrected, direct, abs(printed - direct), abs(corrected - direct))
    raise UsageError(f"unknown cdf method {method!r}")


def joint_cdf_independent(ps, x, epsilon=DEFAULT_EPSILON):
    """``P(X_1 <= x_1, ..., X_r <= x_r)`` for independent one-dimensional GHG coordinates."""
    ps = list(ps)
    x = tuple(x)
    if len(ps) != len(x):
        raise UsageError("need one parameter set per coordinate")
    out = None
    for q, xi in zip(ps, x):
        if q.r != 1:
            raise UsageError("joint_cdf_independent takes one-dimensional GHG parameter sets")
        c = marginal_cdf(q, 0, xi, "direct", epsilon)
        out = c if out is None else out * c
    return out


def reliability(p: GHGParams, x, method: str = "formula", epsilon=DEFAULT_EPSILON):
    """``R(x) = P(X_1 >= x_1, ..., X_r >= x_r)``."""
    validate(p)
    x = _point(p, x)
    F = p.field
    weight = prod((a**v for a, v in zip(p.alphas, x)), start=F.one)
    if method == "formula":
        return weight * family_value(p, p.gamma + sum(x)) / _inverse_B(p)
    if method == "direct":
        return weight * _shifted_total(p, sum(x), epsilon) * _scale(p) / _inverse_B(p)
    raise UsageError(f"unknown reliability method {method!r}")


def _shifted_total(p, shift, epsilon):
    """``sum_{l >= 0} prod alpha^l H(|l| + shift + gamma)`` grouped by shells."""
    h = HomogeneousWeights(p.alphas, p.field.one)
    c = p.gamma + shift
    H = lambda s: _hermite(p, s + c)
    total, _, _ = _shell_sum(
        lambda s: h[s] * H(s), p=p, amax=max(p.alphas), shift=c, degree=p.n, magnitude=H, epsilon=epsilon
    )
    return total


def hazard(p: GHGParams, x, method: str = "formula", epsilon=DEFAULT_EPSILON) -> list:
    """``h_i(x) = 1 - R(x + e_i) / R(x)`` for every coordinate ``i``."""
    validate(p)
    x = _point(p, x)
    if method == "formula":
        s = sum(x) + p.gamma
        base = family_value(p, s)
        if base == 0:
            raise UndefinedHazard(f"reliability vanishes at {x}")
        nxt = family_value(p, s + 1)
        return [1 - a * nxt / base for a in p.alphas]
    if method == "direct":
        R = reliability(p, x, "direct", epsilon)
        if R == 0:
            raise UndefinedHazard(f"reliability vanishes at {x}")
        out = []
        for i in range(p.r):
            y = list(x)
            y[i] += 1
            out.append(1 - reliability(p, y, "direct", epsilon) / R)
        return out
    raise UsageError(f"unknown hazard method {method!r}")


# aging classes -----------------------------------------------------------------


def _grid(p, grid):
    if not isinstance(grid, int) or grid < 1:
        raise UsageError(f"grid bound must be a positive integer, got {grid!r}")
    return list(itertools.product(range(grid), repeat=p.r))


def classify(p: GHGParams, grid: int, cls: str, tol=DEFAULT_TOLERANCE, epsilon=DEFAULT_EPSILON) -> ClassifyResult:
    """Check an aging-class inequality on the box ``{0..grid-1}^r``.

    Points are scanned lexicographically in ``(x, t[, i])`` order and the
    first violation beyond relative tolerance ``tol`` is the witness.
    """
    validate(p)
    if cls not in CLASSES:
        raise UsageError(f"unknown class {cls!r}; choose from {CLASSES}")
    pts = _grid(p, grid)
    cache = {}

    def M(c):
        if c not in cache:
            cache[c] = family_value(p, p.gamma + c)
        return cache[c]

    better = cls in ("MNBU", "MNBUE", "MIHR")
    if cls in ("MNBU", "MNWU"):
        M0 = M(0)
        for x in pts:
            for t in pts:
                lhs = M0 * M(sum(x) + sum(t))
                rhs = M(sum(x)) * M(sum(t))
                if _violates(lhs, rhs, better, tol):
                    return ClassifyResult(cls, False, {"x": list(x), "t": list(t)})
        return ClassifyResult(cls, True)
    if cls in ("MNBUE", "MNWUE"):
        M0 = M(0)
        life = {}
        for s in range(p.r * (grid - 1) + 1):
            life[s] = _residual_life_sum(p, s, epsilon)
        base = life[0]
        for x in pts:
            lhs = M0 * life[sum(x)]
            rhs = M(sum(x)) * base
            if _violates(lhs, rhs, better, tol):
                return ClassifyResult(cls, False, {"x": list(x)})
        return ClassifyResult(cls, True)
    # MIHR / MDHR: survival ratio q_i(y) = alpha_i M(|y| + 1) / M(|y|)
    if any(M(s) == 0 for s in range(2 * p.r * (grid - 1) + 1)):
        raise UndefinedHazard("reliability vanishes on the grid")
    q = [M(s + 1) / M(s) for s in range(2 * p.r * (grid - 1) + 1)]
    for x in pts:
        for t in pts:
            for i in range(p.r):
                lhs = p.alphas[i] * q[sum(x) + sum(t)]
                rhs = p.alphas[i] * q[sum(x)]
                if _violates(lhs, rhs, better, tol):
                    return ClassifyResult(cls, False, {"x": list(x), "t": list(t), "i": i})
    return ClassifyResult(cls, True)


def _violates(lhs, rhs, better, tol):
    """``better``: the class needs lhs <= rhs; otherwise lhs >= rhs."""
    if better:
        return lhs > rhs * (1 + tol)
    return lhs < rhs * (1 - tol)


def _residual_life_sum(p, shift, epsilon):
    """``sum_t prod alpha^t M(shift + |t| + gamma)``."""
    h = HomogeneousWeights(p.alphas, p.field.one)
    c = p.gamma + shift
    M = lambda s: family_value(p, c + s)
    total, _, _ = _shell_sum(
        lambda s: h[s] * M(s), p=p, amax=max(p.alphas), shift=c, degree=p.n, magnitude=M, epsilon=epsilon
    )
    return total


def hazard_monotonicity(p: GHGParams, grid: int, increasing: bool = True, tol=DEFAULT_TOLERANCE, epsilon=1e-20):
    """MIHR (MDHR) by direct hazards: ``h_i(x + t) >= (<=) h_i(x)`` on the grid.

    Reliabilities come from direct tail lattice sums, independent of the
    family route used by :func:`classify`.
    """
    validate(p)
    pts = _grid(p, grid)
    F = p.field
    totals = {}
    norm = _scale(p) / _inverse_B(p)

    def R(y):
        # direct reliability factors as prod alpha^y times a tail total depending on |y| only
        s = sum(y)
        if s not in totals:
            totals[s] = _shifted_total(p, s, epsilon) * norm
        return prod((a**v for a, v in zip(p.alphas, y)), start=F.one) * totals[s]

    ratios = {}

    def q(y, i):
        if (y, i) not in ratios:
            z = list(y)
            z[i] += 1
            base = R(y)
            if base == 0:
                raise UndefinedHazard(f"reliability vanishes at {y}")
            ratios[y, i] = R(tuple(z)) / base
        return ratios[y, i]

    cls = "MIHR" if increasing else "MDHR"
    for x in pts:
        for t in pts:
            xt = tuple(a + b for a, b in zip(x, t))
            for i in range(p.r):
                if _violates(q(xt, i), q(x, i), increasing, tol):
                    return ClassifyResult(cls, False, {"x": list(x), "t": list(t), "i": i})
    return ClassifyResult(cls, True)
