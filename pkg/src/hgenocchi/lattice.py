"""Certified geometric tail bounds and complete homogeneous weights.

Every infinite lattice sum in the package has the shape

    sum_{s >= 0} h_s(alpha) * P(s)

where ``h_s`` is the complete homogeneous symmetric polynomial of the weights
and ``P`` grows at most like a degree-``d`` polynomial in ``s + c`` with
nonnegative coefficients.  Using ``|h_s| <= C(s+r-1, r-1) amax^s`` the
envelope ``E(s) = C(s+r-1, r-1) amax^s P(s) s^extra`` satisfies
``E(s+1) / E(s) <= rho(s)`` with ``rho`` decreasing, which gives the bound
``sum_{s > S} E(s) <= E(S+1) / (1 - rho(S+1))`` once ``rho(S+1) < 1``.
"""

from __future__ import annotations

from math import comb
from typing import Callable, Sequence


def ratio_bound(s: int, *, r: int, amax, degree: int, shift, extra: int = 0):
    """Upper bound ``rho(s)`` on ``E(s+1)/E(s)``; needs ``s >= 1``."""
    rho = amax * (s + r) / (s + 1)
    if degree:
        rho *= ((s + 1 + shift) / (s + shift)) ** degree
    if extra:
        rho *= ((s + 1) / s) ** extra
    return rho


def envelope_tail(
    S: int,
    *,
    r: int,
    amax,
    degree: int,
    shift,
    magnitude: Callable[[int], object],
    extra: int = 0,
):
    """Bound on ``sum_{s > S} C(s+r-1, r-1) amax^s magnitude(s) s^extra``.

    ``magnitude(s)`` must be nonnegative and grow no faster than
    ``(s + shift)^degree`` in the ratio sense.  Returns ``None`` when the
    geometric ratio has not yet dropped below one.
    """
    if amax == 0:
        return 0 * amax
    s = S + 1
    rho = ratio_bound(s, r=r, amax=amax, degree=degree, shift=shift, extra=extra)
    if rho >= 1:
        return None
    E = comb(s + r - 1, r - 1) * amax**s * magnitude(s)
    if extra:
        E *= s**extra
    return E / (1 - rho)


class HomogeneousWeights:
    """Streaming ``h_0, h_1, ...`` of a weight vector, one variable at a time.

    Adds one variable per row: ``h_s^{(j)} = h_s^{(j-1)} + a_j h_{s-1}^{(j)}``.
    """

    def __init__(self, weights: Sequence, one):
        self.weights = list(weights)
        self.one = one
        self.rows = [[] for _ in self.weights]
        self.values = []

    def __getitem__(self, s: int):
        while len(self.values) <= s:
            self._advance()
        return self.values[s]

    def _advance(self):
        s = len(self.values)
        prev = self.one if s == 0 else 0 * self.one
        for j, a in enumerate(self.weights):
            row = self.rows[j]
            cur = prev + (a * row[s - 1] if s else 0 * self.one)
            row.append(cur)
            prev = cur
        self.values.append(prev)
