"""Independent reference computations used to freeze expected values.

Nothing here imports the package: these routes share no code with the
series engine they check.
"""

from fractions import Fraction
from math import comb, factorial

import sympy as sp


def bernoulli_numbers(N):
    """B_0..B_N (B_1 = -1/2) by the Akiyama-Tanigawa algorithm."""
    out = []
    a = [Fraction(0)] * (N + 1)
    for m in range(N + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    # Akiyama-Tanigawa yields B_1 = +1/2
    if N >= 1:
        out[1] = -out[1]
    return out


def genocchi_numbers(N):
    """G_n = 2 (1 - 2^n) B_n, the EGF coefficients of 2t/(e^t+1)."""
    B = bernoulli_numbers(N)
    return [2 * (1 - 2**n) * B[n] for n in range(N + 1)]


def genocchi_poly(n, x):
    G = genocchi_numbers(n)
    return sum(comb(n, j) * G[j] * Fraction(x) ** (n - j) for j in range(n + 1))


def hermite_kdf(n, x, y):
    """H_n(x, y) = sum_k n! / (k! (n-2k)!) x^(n-2k) y^k."""
    x, y = Fraction(x), Fraction(y)
    return sum(
        Fraction(factorial(n), factorial(k) * factorial(n - 2 * k)) * x ** (n - 2 * k) * y**k
        for k in range(n // 2 + 1)
    )


def geometric_moment(power, q=Fraction(1, 2)):
    """sum_{x>=0} x^power q^x via the Eulerian closed form for small powers."""
    q = Fraction(q)
    closed = {
        0: 1 / (1 - q),
        1: q / (1 - q) ** 2,
        2: q * (1 + q) / (1 - q) ** 3,
        3: q * (1 + 4 * q + q**2) / (1 - q) ** 4,
    }
    return closed[power]


def sympy_family(r, k, alphas, x, y, m, n):
    """EGF coefficient n of the unified family at a = 1, b = c = e, by sympy."""
    t = sp.symbols("t")
    den = sp.prod([sp.Rational(a) * sp.exp(t) - 1 for a in alphas])
    g = (-1) ** r * t ** (r * k) * sp.Integer(2) ** (r * (1 - k)) / den * sp.exp(sp.Rational(x) * t + sp.Rational(y) * t**m)
    coeff = sp.series(g, t, 0, n + 1).removeO().coeff(t, n)
    return Fraction(str(sp.nsimplify(coeff * sp.factorial(n))))
