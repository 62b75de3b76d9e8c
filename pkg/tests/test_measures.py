import math
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nsleak.errors import InputError
from nsleak.measures import (
    USTAR,
    argmin_observation,
    h0,
    h0_cond,
    i0,
    identifiability_bound,
    is_identifiable,
    leakage,
    maximal_leakage,
    min_epsilon,
    worst_attribute,
)
from nsleak.uv import AttributeMap, apply_attribute, conditional, is_unrelated, marginal
from nsleak.values import LeakageValue, PrivacyBudget

from conftest import rel_xy
from strategies import relations


def test_h0():
    assert h0({"x1", "x2", "x3"}) == LeakageValue(3)
    assert abs(float(h0({"x1", "x2", "x3"})) - 1.585) < 1e-3
    assert h0({"a"}) == 0
    assert h0(range(8)) == 3
    with pytest.raises(InputError):
        h0(set())


def test_h0_cond(cor1, identity3, square):
    assert h0_cond(cor1, "X", "Y") == 1
    assert h0_cond(identity3, "X", "Y") == 0
    assert h0_cond(square, "X", "Y") == 1


def test_i0(cor1, identity3, square):
    assert i0(cor1, "X", "Y") == LeakageValue(3, 2)
    assert i0(square, "X", "Y") == 0
    assert i0(identity3, "X", "Y") == h0(marginal(identity3, "X"))


def test_leakage(cor1, rel2):
    assert leakage(cor1, "X", "Y") == LeakageValue(3)
    assert leakage(rel2, "X", "Y") == LeakageValue(3, 2)
    const = apply_attribute(cor1, AttributeMap.from_dict({"x1": "u", "x2": "u", "x3": "u"}))
    assert leakage(const, "U", "Y") == 0


def test_maximal_leakage(cor1, square):
    assert maximal_leakage(cor1, "X", "Y") == LeakageValue(3)
    assert maximal_leakage(cor1, "Y", "X") == 1
    assert maximal_leakage(square, "X", "Y") == 0


def test_same_variable_rejected(cor1):
    with pytest.raises(InputError):
        leakage(cor1, "X", "X")


def test_worst_attribute_examples(cor1, rel2, identity3):
    assert argmin_observation(cor1, "X", "Y") == "y2"
    g = worst_attribute(cor1, "X", "Y")
    assert dict(g.image) == {"x1": "x1", "x2": "x2", "x3": USTAR}
    assert leakage(apply_attribute(cor1, g), "U", "Y") == LeakageValue(3)

    assert argmin_observation(rel2, "X", "Y") == "y1"
    g = worst_attribute(rel2, "X", "Y")
    assert dict(g.image) == {"x1": USTAR, "x2": USTAR, "x3": "x3"}
    assert leakage(apply_attribute(rel2, g), "U", "Y") == 1 == maximal_leakage(rel2, "X", "Y")

    g = worst_attribute(identity3, "X", "Y")
    assert len(set(g.image.values())) == 3
    assert leakage(apply_attribute(identity3, g), "U", "Y") == LeakageValue(3)


def test_worst_attribute_fresh_symbol_collision():
    rel = rel_xy([(USTAR, "a"), ("x", "b"), ("x", "a")])
    g = worst_attribute(rel, "X", "Y")
    # y* = "b" collapses {x}; the kept symbol USTAR must not merge with it
    assert g("x") != g(USTAR)


def test_identifiability(cor1, rel2, identity3):
    assert is_identifiable(cor1, "X", "Y", PrivacyBudget.log2_of(3))
    assert not is_identifiable(cor1, "X", "Y", PrivacyBudget.rational(1))
    assert is_identifiable(cor1, "X", "Y", PrivacyBudget.rational(Fraction(1585, 1000)))
    assert not is_identifiable(cor1, "X", "Y", PrivacyBudget.rational(Fraction(1584, 1000)))
    assert is_identifiable(rel2, "X", "Y", PrivacyBudget.log2_of(Fraction(3, 2)))
    assert not is_identifiable(rel2, "X", "Y", PrivacyBudget.rational(Fraction(58, 100)))
    assert is_identifiable(rel2, "X", "Y", PrivacyBudget.rational(Fraction(59, 100)))
    assert not is_identifiable(identity3, "X", "Y", PrivacyBudget.rational(Fraction(158, 100)))
    assert is_identifiable(identity3, "X", "Y", PrivacyBudget.log2_of(3))


def test_min_epsilon(cor1, rel2, square):
    assert min_epsilon(cor1, "X", "Y") == (LeakageValue(3), False)
    assert min_epsilon(rel2, "X", "Y") == (LeakageValue(3, 2), False)
    thr = min_epsilon(square, "X", "Y")
    assert thr.value == 0 and thr.open_bound


def test_identifiability_bound(cor1, rel2):
    c = identifiability_bound(3, PrivacyBudget.log2_of(3))
    assert c.exact() == LeakageValue(3)
    assert c.compare(maximal_leakage(cor1, "X", "Y")) == 0
    c = identifiability_bound(3, PrivacyBudget.log2_of(Fraction(3, 2)))
    assert c.exact() == 1
    assert c.dominates(maximal_leakage(rel2, "X", "Y"))
    tiny = identifiability_bound(3, PrivacyBudget.rational(Fraction(1, 10**6)))
    assert float(tiny) < 1e-5
    with pytest.raises(InputError):
        identifiability_bound(0, PrivacyBudget.rational(1))


# invariants


def _sup_over_functions(rel):
    """Definition-level supremum: every function from [[X]] into |[[X]]| labels."""
    xs = sorted(marginal(rel, "X"))
    best = None
    for labels in product(range(len(xs)), repeat=len(xs)):
        g = AttributeMap.from_dict({x: f"u{k}" for x, k in zip(xs, labels)})
        v = leakage(apply_attribute(rel, g), "U", "Y")
        if best is None or v > best:
            best = v
    return best


@given(relations(max_x=4, max_y=3))
def test_closed_form_matches_function_supremum(rel):
    assert maximal_leakage(rel, "X", "Y") == _sup_over_functions(rel)


@given(relations())
def test_basic_properties(rel):
    lstar = maximal_leakage(rel, "X", "Y")
    assert lstar.is_nonnegative()
    assert leakage(rel, "X", "Y").is_nonnegative()
    assert leakage(rel, "X", "Y") <= lstar
    assert lstar <= h0(marginal(rel, "X"))
    assert lstar.is_zero() == is_unrelated(rel, "X", "Y")


@given(relations())
def test_worst_attribute_achieves_closed_form(rel):
    g = worst_attribute(rel, "X", "Y")
    assert leakage(apply_attribute(rel, g), "U", "Y") == maximal_leakage(rel, "X", "Y")


@given(relations(), st.fractions(min_value=Fraction(1, 16), max_value=5))
def test_identifiable_implies_ceiling(rel, eps):
    budget = PrivacyBudget.rational(eps)
    n = len(marginal(rel, "X"))
    m = min(len(conditional(rel, "X", {"Y": y})) for y in marginal(rel, "Y"))
    # float cross-check away from the boundary
    if abs(m * 2 ** float(eps) - n) > 1e-9:
        assert is_identifiable(rel, "X", "Y", budget) == (m * 2 ** float(eps) >= n)
    if is_identifiable(rel, "X", "Y", budget):
        lstar = maximal_leakage(rel, "X", "Y")
        assert identifiability_bound(n, budget).dominates(lstar)
        assert float(lstar) <= math.log2(n * (1 - 2 ** -float(eps)) + 1) + 1e-9


@given(relations())
def test_ceiling_tight_at_min_epsilon(rel):
    thr = min_epsilon(rel, "X", "Y")
    assert thr.value == leakage(rel, "X", "Y")
    if not thr.open_bound:
        budget = PrivacyBudget.log2_of(thr.value.ratio)
        assert is_identifiable(rel, "X", "Y", budget)
        n = len(marginal(rel, "X"))
        assert identifiability_bound(n, budget).compare(maximal_leakage(rel, "X", "Y")) == 0
