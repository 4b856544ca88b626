"""Dyadic carrier type: exactness, canonical form, rounding contracts."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from certreal.dyadic import (BigDyadic, EXPONENT_LIMIT, ONE, TWO, ZERO,
                             div_nearest, dyadic, from_fraction_nearest,
                             from_int, power_of_two, round_ceil, round_floor,
                             round_to, to_decimal_string)
from certreal.errors import ExponentOverflow

mantissas = st.integers(-(1 << 200), 1 << 200)
exponents = st.integers(-400, 400)
values = st.builds(dyadic, mantissas, exponents)
grids = st.integers(0, 300)


@given(mantissas, exponents)
def test_canonical_form(m, e):
    d = dyadic(m, e)
    assert d.mantissa == 0 or d.mantissa & 1
    if d.mantissa == 0:
        assert d.exponent == 0
    assert d.as_fraction() == Fraction(m) * Fraction(2) ** e


@given(values, values)
def test_add_sub_mul_exact(a, b):
    assert (a + b).as_fraction() == a.as_fraction() + b.as_fraction()
    assert (a - b).as_fraction() == a.as_fraction() - b.as_fraction()
    assert (a * b).as_fraction() == a.as_fraction() * b.as_fraction()


@given(values, st.integers(-300, 300))
def test_scale2_mul_int(a, s):
    assert a.scale2(s).as_fraction() == a.as_fraction() * Fraction(2) ** s
    assert a.mul_int(s).as_fraction() == a.as_fraction() * s


@given(values, values)
def test_total_order_matches_fractions(a, b):
    af, bf = a.as_fraction(), b.as_fraction()
    assert (a < b) == (af < bf)
    assert (a <= b) == (af <= bf)
    assert (a > b) == (af > bf)
    assert a.compare(b) == (af > bf) - (af < bf)


@given(values)
def test_neg_abs_floor_ceil(a):
    f = a.as_fraction()
    assert (-a).as_fraction() == -f
    assert abs(a).as_fraction() == abs(f)
    assert a.floor() == f.numerator // f.denominator
    assert a.ceil() == -((-f).numerator // f.denominator)


@given(values)
def test_ceil_log2(a):
    if a.is_zero():
        with pytest.raises(ValueError):
            a.ceil_log2()
        return
    t = a.ceil_log2()
    f = abs(a.as_fraction())
    assert f <= Fraction(2) ** t
    # minimality: one less does not bound it
    assert f > Fraction(2) ** (t - 1)


@given(st.integers(-(1 << 120), 1 << 120), st.integers(1, 1 << 80))
def test_div_nearest(a, b):
    q = div_nearest(a, b)
    err = Fraction(a, b) - q
    assert abs(err) <= Fraction(1, 2)
    if abs(err) == Fraction(1, 2):
        assert q % 2 == 0


@given(values, grids)
def test_round_to_contract(a, k):
    q = round_to(a, k)
    assert abs(q.as_fraction() - a.as_fraction()) <= Fraction(1, 2 ** (k + 1))
    assert q.is_zero() or q.exponent >= -k
    # idempotent once on the grid
    assert round_to(q, k) == q


@given(values, grids)
def test_directed_rounding(a, k):
    lo, hi = round_floor(a, k), round_ceil(a, k)
    f = a.as_fraction()
    step = Fraction(1, 2 ** k)
    assert lo.as_fraction() <= f <= hi.as_fraction()
    assert f - lo.as_fraction() < step
    assert hi.as_fraction() - f < step


@given(values, st.integers(0, 40))
def test_decimal_rendering_nearest(a, digits):
    text = to_decimal_string(a, digits)
    parsed = Fraction(text)
    assert abs(parsed - a.as_fraction()) <= Fraction(1, 2 * 10 ** digits)


def test_decimal_rendering_details():
    assert to_decimal_string(dyadic(1, -1), 1) == "0.5"
    assert to_decimal_string(dyadic(-1, -1), 1) == "-0.5"
    assert to_decimal_string(dyadic(1, -3), 2) == "0.12"  # ties to even
    assert to_decimal_string(dyadic(3, 0), 0) == "3"
    # a negative value that rounds to zero loses its sign
    assert to_decimal_string(dyadic(-1, -30), 2) == "0.00"
    with pytest.raises(ValueError):
        to_decimal_string(ONE, -1)


@given(st.fractions(), grids)
def test_from_fraction_nearest(f, k):
    q = from_fraction_nearest(f, k)
    assert abs(q.as_fraction() - f) <= Fraction(1, 2 ** (k + 1))


def test_constants_and_constructors():
    assert ZERO.is_zero() and ZERO.sign() == 0
    assert ONE.as_fraction() == 1 and TWO.as_fraction() == 2
    assert from_int(-12).as_fraction() == -12
    assert power_of_two(-5).as_fraction() == Fraction(1, 32)
    assert str(dyadic(12, 0)) == "3*2^2"
    assert repr(dyadic(3, -1)) == "BigDyadic(3, -1)"
    assert dyadic(5) == BigDyadic(5, 0)


def test_exponent_limits():
    with pytest.raises(ExponentOverflow):
        dyadic(1, EXPONENT_LIMIT + 1)
    with pytest.raises(ExponentOverflow):
        dyadic(1, -(EXPONENT_LIMIT + 1))
    # alignment guard: no multi-megabyte integers from one stray add
    with pytest.raises(ExponentOverflow):
        dyadic(1, 0) + dyadic(1, -(1 << 27))
    with pytest.raises(ExponentOverflow):
        round_to(dyadic(1, -(1 << 27)), 0)


def test_div_nearest_rejects_bad_divisor():
    with pytest.raises(ValueError):
        div_nearest(1, 0)
    with pytest.raises(ValueError):
        div_nearest(1, -2)
