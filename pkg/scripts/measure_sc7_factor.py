"""Measure the constant relating the unified family at (k=1, a=1, b=c=e, alpha=-lambda)
to the Hermite-based Apostol-Genocchi polynomial of order r.

The printed claim is (-2)^r; the measurement gives 2^-r for every r and n >= r.
"""

import argparse
from fractions import Fraction

from hgenocchi.families import UnifiedParams, apostol_hermite, unified_coeffs


def measure(r, lam, x, y, n_max):
    alphas = (-lam,) * r
    fam = unified_coeffs(UnifiedParams(r, 1, 0, 1, 1, alphas, x, y), n_max)
    out = []
    for n in range(n_max + 1):
        ref = apostol_hermite("genocchi", r, lam, n, x=x, y=y)
        out.append((n, fam[n] / ref if ref else None))
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--r-max", type=int, default=4)
    ap.add_argument("--n-max", type=int, default=8)
    args = ap.parse_args()
    lam, x, y = Fraction(1, 3), Fraction(2, 5), Fraction(-1, 2)
    for r in range(1, args.r_max + 1):
        factors = {f for _, f in measure(r, lam, x, y, args.n_max) if f is not None}
        print(f"r={r}: measured {sorted(map(str, factors))}  printed {(-2) ** r}  2^-r = {Fraction(1, 2**r)}")


if __name__ == "__main__":
    main()
