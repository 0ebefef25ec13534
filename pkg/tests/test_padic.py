"""Arithmetic on truncated p-adic numbers."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affinetree.errors import (
    DivisionByZero,
    MalformedSyntax,
    PrimeMismatch,
)
from affinetree.padic import (
    PAdic,
    PrecisionBudget,
    fraction_truncate,
    int_valuation,
    is_prime,
    parse_padic,
)

B = PrecisionBudget()


def test_is_prime_small():
    assert [n for n in range(2, 30) if is_prime(n)] == \
        [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert not is_prime(1)
    assert is_prime(2 ** 61 - 1)


def test_int_valuation():
    assert int_valuation(12, 2) == 2
    assert int_valuation(12, 3) == 1
    assert int_valuation(-8, 2) == 3
    assert int_valuation(7, 2) == 0


@pytest.mark.parametrize("num,den,p,v", [
    (4, 1, 2, 2), (3, 4, 2, -2), (1, 1, 2, 0), (18, 5, 3, 2), (5, 27, 3, -3),
])
def test_valuation_and_norm(num, den, p, v):
    x = PAdic.from_rational(num, den, p)
    assert x.valuation == v
    assert x.norm() == Fraction(p) ** -v


def test_zero_properties():
    z = PAdic.zero(2)
    assert z.is_zero and z.is_exact_zero
    x = PAdic.from_int(6, 2)
    assert (z + x) == x
    assert (z * x).is_exact_zero


def test_exact_rational_shadow_survives_cancellation():
    # 1 - 1 + small: plain modular arithmetic would lose all digits at 1 - 1
    one = PAdic.from_int(1, 2)
    small = PAdic.from_rational(1, 1, 2) * PAdic.from_fraction(
        Fraction(2) ** 40, 2)
    y = one - one + small
    assert y.valuation == 40
    assert y.exact == Fraction(2) ** 40


def test_inverse_round_trip():
    x = PAdic.from_rational(3, 8, 5)
    assert (x * x.inverse()).exact == 1
    with pytest.raises(DivisionByZero):
        PAdic.zero(5).inverse()


def test_prime_mismatch():
    with pytest.raises(PrimeMismatch):
        PAdic.from_int(1, 2) + PAdic.from_int(1, 3)


def test_residue():
    x = PAdic.from_rational(11, 1, 2)   # ...1011
    assert x.residue(2) == 3
    assert x.residue(4) == 11


def test_fraction_truncate_keeps_low_digits():
    # digits of 11/4 below exponent 1: 1/4 + 1/2 + 0 = 3/4... base 2
    assert fraction_truncate(Fraction(11, 4), 2, 1) == Fraction(3, 4)
    assert fraction_truncate(Fraction(11, 4), 2, 3) == Fraction(11, 4)
    # denominator coprime to p is resolved through a modular inverse
    assert fraction_truncate(Fraction(1, 3), 2, 2) == 3  # 1/3 = ...0101011
    assert fraction_truncate(Fraction(0), 2, 5) == 0


def test_render_and_parse_round_trip():
    x = parse_padic("3/4", 2, B)
    assert x.exact == Fraction(3, 4)
    y = parse_padic("2^-2 * (1.1)_2", 2, B)
    assert y.valuation == -2 and list(y.digits()) == [1, 1]
    z = PAdic.from_fraction(Fraction(3, 4), 2, B)
    assert parse_padic(z.render(), 2, B) == z
    with pytest.raises(MalformedSyntax):
        parse_padic("not a number", 2, B)


def test_with_known_exponent_drops_shadow():
    x = PAdic.from_int(5, 2).with_known_exponent(10)
    assert x.exact is None
    assert x.known_exponent == 10


rationals = st.fractions(min_value=-10 ** 6, max_value=10 ** 6,
                         max_denominator=10 ** 4)


@settings(max_examples=200, deadline=None)
@given(rationals, rationals, st.sampled_from([2, 3, 5]))
def test_field_ops_match_exact_rationals(a, b, p):
    x, y = PAdic.from_fraction(a, p), PAdic.from_fraction(b, p)
    assert (x + y).exact == a + b
    assert (x * y).exact == a * b
    assert (x - y).exact == a - b
    assert (-x).exact == -a


@settings(max_examples=200, deadline=None)
@given(rationals, st.sampled_from([2, 3, 5]))
def test_norm_is_ultrametric_scale(a, p):
    x = PAdic.from_fraction(a, p)
    if a == 0:
        assert x.norm() == 0
    else:
        v = x.valuation
        assert a * Fraction(p) ** -v != 0
        assert x.norm() == Fraction(p) ** -v
