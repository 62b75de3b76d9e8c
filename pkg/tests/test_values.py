import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nsleak.errors import InputError
from nsleak.values import IdentifiabilityCeiling, LeakageValue, PrivacyBudget, _compare_exp2_bracketed


def test_equality_is_by_cross_product():
    assert LeakageValue(6, 2) == LeakageValue(3, 1)
    assert LeakageValue(3, 2) != LeakageValue(4, 3)
    assert hash(LeakageValue(6, 2)) == hash(LeakageValue(3, 1))


def test_integer_bits_comparison():
    assert LeakageValue(2, 1) == 1
    assert LeakageValue(1, 1) == 0
    assert LeakageValue(1, 4) == -2
    assert LeakageValue(3, 1) > 1
    assert LeakageValue(3, 1) < 2
    assert hash(LeakageValue(8, 2)) == hash(2)


def test_arithmetic():
    assert LeakageValue(3) + LeakageValue(3) == LeakageValue(9)
    assert LeakageValue(3) - LeakageValue(2) == LeakageValue(3, 2)


@pytest.mark.parametrize("text,num,den", [("log2(3/2)", 3, 2), ("log2(3)", 3, 1), (" log2( 8 / 4 ) ", 8, 4)])
def test_parse(text, num, den):
    assert LeakageValue.parse(text) == LeakageValue(num, den)


@given(st.integers(1, 10**12), st.integers(1, 10**12))
def test_string_round_trip_and_decimal(num, den):
    v = LeakageValue(num, den)
    assert LeakageValue.parse(str(v)) == v
    exact = math.log2(num) - math.log2(den)
    assert abs(float(v.decimal()) - exact) <= 5e-7


def test_rejects_non_positive():
    with pytest.raises(InputError):
        LeakageValue(0, 1)


@pytest.mark.parametrize("bad", ["0", "-1/2", "log2(1)", "log2(1/2)"])
def test_budget_must_be_positive(bad):
    with pytest.raises(InputError):
        PrivacyBudget.parse(bad)


def test_budget_compare_exact_forms():
    b = PrivacyBudget.log2_of(3)
    assert b.compare_exp2(Fraction(3)) == 0
    assert b.compare_exp2(Fraction(2)) == 1
    one = PrivacyBudget.rational(1)
    assert one.compare_exp2(Fraction(2)) == 0
    assert one.compare_exp2(Fraction(3)) == -1
    half = PrivacyBudget.rational("1/2")
    # sqrt(2) = 1.41421...
    assert half.compare_exp2(Fraction(141421, 100000)) == 1
    assert half.compare_exp2(Fraction(141422, 100000)) == -1


@given(st.fractions(min_value=Fraction(1, 64), max_value=8), st.fractions(min_value=Fraction(1, 8), max_value=300))
def test_budget_compare_matches_float_when_far(eps, x):
    eps, x = Fraction(eps), Fraction(x)
    gap = 2 ** float(eps) - float(x)
    got = PrivacyBudget.rational(eps).compare_exp2(x)
    if abs(gap) > 1e-9:
        assert got == (1 if gap > 0 else -1)


def test_bracketing_agrees_with_power_comparison():
    for eps, x in [(Fraction(1, 3), Fraction(5, 4)), (Fraction(7, 5), Fraction(8, 3)), (Fraction(22, 7), Fraction(9))]:
        exact = PrivacyBudget.rational(eps).compare_exp2(x)
        assert _compare_exp2_bracketed(eps, x) == exact


def test_huge_denominator_uses_bracketing():
    eps = Fraction(10**7 + 1, 10**7)  # just above 1
    b = PrivacyBudget.rational(eps)
    assert b.compare_exp2(Fraction(2)) == 1
    assert b.compare_exp2(Fraction(20001, 10000)) == -1


def test_ceiling_exact_and_comparison():
    c = IdentifiabilityCeiling(3, PrivacyBudget.log2_of(3))
    assert c.exact() == LeakageValue(3)
    assert c.compare(LeakageValue(3)) == 0
    c1 = IdentifiabilityCeiling(3, PrivacyBudget.rational(1))
    # log2(3 * 1/2 + 1) = log2(5/2)
    assert c1.exact() is None
    assert abs(float(c1) - math.log2(2.5)) < 1e-12
    assert c1.compare(LeakageValue(5, 2)) == 0
    assert c1.compare(LeakageValue(2)) == 1
    assert c1.compare(LeakageValue(3)) == -1
