"""Non-stochastic entropy and leakage measures over a :class:`~nsleak.uv.Relation`.

All results are :class:`~nsleak.values.LeakageValue` instances, i.e. exact
``log2`` of a ratio of cardinalities.
"""

from __future__ import annotations

from collections.abc import Iterable
from fractions import Fraction
from typing import NamedTuple

from .errors import InputError
from .uv import AttributeMap, Relation, Vars, conditional_ranges, marginal
from .values import IdentifiabilityCeiling, LeakageValue, PrivacyBudget

__all__ = [
    "USTAR",
    "EpsilonThreshold",
    "h0",
    "h0_cond",
    "i0",
    "leakage",
    "argmin_observation",
    "maximal_leakage",
    "worst_attribute",
    "is_identifiable",
    "min_epsilon",
    "identifiability_bound",
    "budget_from_threshold",
]

USTAR = "__ustar"


def _distinct(a: Vars, b: Vars) -> None:
    na = {a} if isinstance(a, str) else set(a)
    nb = {b} if isinstance(b, str) else set(b)
    if na & nb:
        raise InputError("target and observed variables must be distinct")


def h0(rng: Iterable) -> LeakageValue:
    """Hartley entropy ``log2 |range|``."""
    n = len(frozenset(rng))
    if n == 0:
        raise InputError("the Hartley entropy of an empty range is undefined")
    return LeakageValue(n, 1)


def h0_cond(rel: Relation, target: Vars, given: Vars) -> LeakageValue:
    """Worst-case conditional range size, ``max_y log2 |[[X|y]]|``."""
    _distinct(target, given)
    ranges = conditional_ranges(rel, target, given)
    return LeakageValue(max(len(r) for r in ranges.values()), 1)


def i0(rel: Relation, a: Vars, b: Vars) -> LeakageValue:
    return h0(marginal(rel, a)) - h0_cond(rel, a, b)


def argmin_observation(rel: Relation, target: Vars, observed: Vars):
    """The observation with the smallest conditional range of ``target``.

    Ties go to the byte-order smallest observation.
    """
    _distinct(target, observed)
    ranges = conditional_ranges(rel, target, observed)
    # conditional_ranges is already in byte order, and min() keeps the first minimum
    return min(ranges, key=lambda y: len(ranges[y]))


def leakage(rel: Relation, target: Vars, observed: Vars) -> LeakageValue:
    """Brute-force guessing leakage ``log2(|[[U]]| / min_y |[[U|y]]|)``."""
    _distinct(target, observed)
    ranges = conditional_ranges(rel, target, observed)
    return LeakageValue(len(marginal(rel, target)), min(len(r) for r in ranges.values()))


def maximal_leakage(rel: Relation, x: Vars, y: Vars) -> LeakageValue:
    """Leakage maximised over all attributes of ``x``.

    Closed form ``log2(|[[X]]| - min_y |[[X|y]]| + 1)``.
    """
    _distinct(x, y)
    ranges = conditional_ranges(rel, x, y)
    n = len(marginal(rel, x))
    return LeakageValue(n - min(len(r) for r in ranges.values()) + 1, 1)


def worst_attribute(rel: Relation, x: str, y: Vars) -> AttributeMap:
    """The attribute that attains :func:`maximal_leakage`.

    Collapses the smallest conditional range ``[[X|y*]]`` to one fresh symbol
    and leaves every other symbol of ``[[X]]`` fixed.
    """
    if not isinstance(x, str):
        raise InputError("worst_attribute needs a single source variable")
    y_star = argmin_observation(rel, x, y)
    collapsed = conditional_ranges(rel, x, y)[y_star]
    domain = marginal(rel, x)
    kept = domain - collapsed
    fresh = USTAR
    suffix = 0
    while fresh in kept:
        suffix += 1
        fresh = f"{USTAR}{suffix}"
    return AttributeMap(domain, {s: (fresh if s in collapsed else s) for s in domain})


class EpsilonThreshold(NamedTuple):
    """Smallest privacy budget for identifiability.

    ``open_bound`` is set when the infimum (zero) is not itself admissible.
    """

    value: LeakageValue
    open_bound: bool


def _sizes(rel: Relation, x: Vars, y: Vars) -> tuple[int, int]:
    _distinct(x, y)
    ranges = conditional_ranges(rel, x, y)
    return len(marginal(rel, x)), min(len(r) for r in ranges.values())


def is_identifiable(rel: Relation, x: Vars, y: Vars, budget: PrivacyBudget) -> bool:
    """``|[[X|y]]| >= |[[X]]| * 2**-eps`` for every observation ``y``."""
    n, m = _sizes(rel, x, y)
    return budget.compare_exp2(Fraction(n, m)) >= 0


def min_epsilon(rel: Relation, x: Vars, y: Vars) -> EpsilonThreshold:
    n, m = _sizes(rel, x, y)
    value = LeakageValue(n, m)
    return EpsilonThreshold(value, open_bound=value.is_zero())


def identifiability_bound(size_x: int, budget: PrivacyBudget) -> IdentifiabilityCeiling:
    """Ceiling on maximal leakage of any ``budget``-identifiable mapping."""
    if size_x < 1:
        raise InputError("the range size must be positive")
    return IdentifiabilityCeiling(size_x, budget)


def budget_from_threshold(threshold: EpsilonThreshold) -> PrivacyBudget | None:
    """The tightest admissible budget, or None when only the open bound exists."""
    if threshold.open_bound:
        return None
    return PrivacyBudget.log2_of(threshold.value.ratio)

