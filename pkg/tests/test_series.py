from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from hgenocchi.errors import SingularDenominator, UsageError
from hgenocchi.series import (
    EXACT,
    add,
    common_field,
    constant,
    div,
    egf_coeff,
    exp_poly,
    float_field,
    from_coeffs,
    mul,
    neg,
    scale_arg,
    sub,
)

from oracles import genocchi_numbers, hermite_kdf

N = 12


def exp_series(N, s=1, field=EXACT):
    return from_coeffs([Fraction(s) ** n / factorial(n) for n in range(N + 1)], N, field)


def test_add_cancellation():
    f = from_coeffs([1, 1], 4)
    g = from_coeffs([1, -1], 4)
    assert add(f, g) == constant(2, 4)


def test_add_zero_identity():
    f = from_coeffs([3, Fraction(1, 2), -7], 5)
    assert add(f, constant(0, 5)) == f


def test_even_part_of_exp():
    total = add(exp_series(10), exp_series(10, -1))
    expected = [Fraction(2, factorial(n)) if n % 2 == 0 else 0 for n in range(11)]
    assert list(total.coeffs) == expected


def test_mul_difference_of_squares():
    assert mul(from_coeffs([1, 1], 6), from_coeffs([1, -1], 6)) == from_coeffs([1, 0, -1], 6)


def test_mul_identity():
    f = from_coeffs([2, 3, 5, 7], 8)
    assert mul(f, constant(1, 8)) == f


def test_exp_squared_is_exp_2t():
    assert mul(exp_series(N), exp_series(N)) == exp_series(N, 2)


def test_geometric_series():
    q = div(constant(1, N), from_coeffs([1, -1], N))
    assert list(q.coeffs) == [1] * (N + 1)


def test_self_division():
    f = from_coeffs([Fraction(3, 2), -1, 4, 0, 9], N)
    assert div(f, f) == constant(1, N)


def test_genocchi_numbers_by_division():
    et = exp_poly([(1, 1)], N)
    q = div(from_coeffs([0, 2], N), et + 1)
    assert q.egf()[:7] == [0, 1, -1, 0, 1, 0, -3]
    assert q.egf() == genocchi_numbers(N)
    assert egf_coeff(q, 2) == -1


def test_singular_denominator_names_series():
    g = from_coeffs([0, 1], 4)
    with pytest.raises(SingularDenominator) as info:
        div(constant(1, 4), g)
    assert info.value.series == g


def test_float_pivot_tolerance():
    F = float_field(128)
    g = from_coeffs([F.convert("1e-40"), 1], 4, F)
    with pytest.raises(SingularDenominator):
        div(constant(1, 4, F), g)


def test_exp_poly_empty_is_one():
    assert exp_poly([], 7) == constant(1, 7)


def test_exp_poly_plain_exponential():
    x = Fraction(3, 4)
    assert exp_poly([(1, x)], 9) == exp_series(9, x)


def test_exp_poly_hermite():
    x, y = Fraction(2, 3), Fraction(-5, 2)
    s = exp_poly([(1, x), (2, y)], 8)
    assert s.egf()[:4] == [1, x, x**2 + 2 * y, x**3 + 6 * x * y]
    assert s.egf() == [hermite_kdf(n, x, y) for n in range(9)]


def test_exp_poly_rejects_constant_term():
    with pytest.raises(UsageError):
        exp_poly([(0, 1)], 4)


def test_scale_arg_examples():
    f = exp_series(N)
    assert scale_arg(f, 1) == f
    assert scale_arg(f, 2) == exp_series(N, 2)
    geo = div(constant(1, N), from_coeffs([1, -1], N))
    assert list(scale_arg(geo, Fraction(1, 2)).coeffs) == [Fraction(1, 2**n) for n in range(N + 1)]


def test_egf_coeff_examples():
    assert all(egf_coeff(exp_series(N), n) == 1 for n in range(N + 1))
    one = constant(1, N)
    assert egf_coeff(one, 0) == 1
    assert all(egf_coeff(one, n) == 0 for n in range(1, N + 1))
    with pytest.raises(UsageError):
        egf_coeff(one, N + 1)


def test_mode_and_order_mismatch():
    with pytest.raises(UsageError):
        add(constant(1, 3), constant(1, 4))
    with pytest.raises(UsageError):
        add(constant(1, 3), constant(1, 3, float_field(128)))
    with pytest.raises(UsageError):
        common_field(EXACT, float_field(64))


def test_float_precision_takes_minimum():
    assert common_field(float_field(128), float_field(256)) == float_field(128)


def test_float_exp_inverse():
    F = float_field(256)
    prod = exp_poly([(1, 1)], 20, F) * exp_poly([(1, -1)], 20, F)
    assert abs(prod[0] - 1) < 1e-70
    assert all(abs(c) < 1e-70 for c in prod.coeffs[1:])


# properties ---------------------------------------------------------------------

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
ORDER = 8


def series(nonzero_head=False):
    head = rationals.filter(lambda v: v != 0) if nonzero_head else rationals
    return st.tuples(head, st.lists(rationals, min_size=ORDER, max_size=ORDER)).map(
        lambda hv: from_coeffs([hv[0], *hv[1]], ORDER)
    )


@settings(max_examples=60, deadline=None)
@given(series(), series(nonzero_head=True))
def test_division_round_trip(f, g):
    assert mul(div(f, g), g) == f


@settings(max_examples=60, deadline=None)
@given(series(), series())
def test_mul_commutes(f, g):
    assert mul(f, g) == mul(g, f)


@settings(max_examples=40, deadline=None)
@given(series(), series(), series())
def test_mul_associates_and_distributes(f, g, h):
    assert mul(mul(f, g), h) == mul(f, mul(g, h))
    assert mul(f, add(g, h)) == add(mul(f, g), mul(f, h))


@settings(max_examples=60, deadline=None)
@given(series(), series())
def test_sub_is_add_neg(f, g):
    assert sub(f, g) == add(f, neg(g))
    assert sub(f, f) == constant(0, ORDER)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 4), rationals), max_size=3))
def test_exp_of_negated_exponent_is_inverse(terms):
    up = exp_poly(terms, ORDER)
    down = exp_poly([(d, -c) for d, c in terms], ORDER)
    assert mul(up, down) == constant(1, ORDER)


@settings(max_examples=40, deadline=None)
@given(series(), series(), rationals)
def test_scale_arg_is_ring_homomorphism(f, g, s):
    assert scale_arg(mul(f, g), s) == mul(scale_arg(f, s), scale_arg(g, s))
    assert scale_arg(add(f, g), s) == add(scale_arg(f, s), scale_arg(g, s))


@settings(max_examples=40, deadline=None)
@given(series(), series())
def test_egf_product_is_binomial_convolution(f, g):
    a, b, c = f.egf(), g.egf(), mul(f, g).egf()
    for n in range(ORDER + 1):
        assert c[n] == sum(comb(n, j) * a[j] * b[n - j] for j in range(n + 1))


@settings(max_examples=40, deadline=None)
@given(series())
def test_exact_format_parse_round_trip(f):
    assert all(EXACT.parse(EXACT.format(c)) == c for c in f.coeffs)
