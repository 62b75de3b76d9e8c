"""Stochastic counterparts: guessing entropy and maximal (Sibson order-infinity) leakage.

Probabilities are :class:`fractions.Fraction` throughout; nothing here is
sampled or rounded.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import NamedTuple

from .errors import InputError
from .measures import h0, h0_cond, maximal_leakage
from .uv import Relation, Vars, _names, _projector, _selector, marginal, sorted_symbols, symbol_key
from .values import LeakageValue

__all__ = [
    "RationalDist",
    "StochasticChannel",
    "guessing_entropy",
    "cond_guessing_entropy",
    "stochastic_bf_leakage",
    "maximal_stochastic_leakage",
    "LeakageComparison",
    "relate_maximal_leakages",
]


@dataclass(frozen=True)
class RationalDist:
    """Exact probability weights on the tuples of a relation."""

    rel: Relation
    weights: Mapping[tuple[str, ...], Fraction]

    def __post_init__(self) -> None:
        clean = {}
        for t, w in self.weights.items():
            t = tuple(t)
            if t not in self.rel.tuples:
                raise InputError(f"weight given for {list(t)}, which is not a tuple of the relation")
            w = Fraction(w)
            if w < 0:
                raise InputError(f"negative weight {w} on {list(t)}")
            clean[t] = w
        total = sum(clean.values(), Fraction(0))
        if total != 1:
            raise InputError(f"weights sum to {total}, not 1")
        object.__setattr__(self, "weights", MappingProxyType(clean))

    def __reduce__(self):
        return (RationalDist, (self.rel, dict(self.weights)))

    @classmethod
    def uniform(cls, rel: Relation) -> RationalDist:
        w = Fraction(1, len(rel.tuples))
        return cls(rel, {t: w for t in rel.tuples})

    def marginal(self, vars: Vars) -> dict:
        proj = _projector(*_selector(self.rel, vars))
        out: dict = {}
        for t, w in self.weights.items():
            k = proj(t)
            out[k] = out.get(k, 0) + w
        return out

    def conditional(self, target: Vars, given: Vars, value) -> dict:
        """``P(target | given = value)``; the evidence must have positive mass."""
        pt = _projector(*_selector(self.rel, target))
        pg = _projector(*_selector(self.rel, given))
        out: dict = {}
        mass = Fraction(0)
        for t, w in self.weights.items():
            if pg(t) == value:
                out[pt(t)] = out.get(pt(t), 0) + w
                mass += w
        if mass == 0:
            raise InputError(f"P({'/'.join(_names(given))} = {value!r}) is zero")
        return {k: v / mass for k, v in out.items()}


def guessing_entropy(probs: Mapping) -> Fraction:
    """Expected number of guesses when guessing in order of decreasing probability."""
    ps = [Fraction(p) for p in probs.values()]
    if any(p < 0 for p in ps) or sum(ps) != 1:
        raise InputError("guessing entropy needs a probability distribution")
    # ties are ordered by symbol; this cannot change the sum
    order = sorted(probs, key=lambda s: (-Fraction(probs[s]), symbol_key(s)))
    return sum((i * Fraction(probs[s]) for i, s in enumerate(order, start=1)), Fraction(0))


def cond_guessing_entropy(dist: RationalDist, target: Vars, given: Vars, value) -> Fraction:
    return guessing_entropy(dist.conditional(target, given, value))


def stochastic_bf_leakage(dist: RationalDist, target: Vars, observed: Vars) -> Fraction:
    """``H_G(U) - E_Y[H_G(U | Y = y)]``."""
    prior = guessing_entropy(dist.marginal(target))
    posterior = Fraction(0)
    for y, py in dist.marginal(observed).items():
        if py > 0:
            posterior += py * cond_guessing_entropy(dist, target, observed, y)
    return prior - posterior


@dataclass(frozen=True)
class StochasticChannel:
    """Per-source rows of exact transition probabilities."""

    source: str
    target: str
    rows: Mapping[str, Mapping[str, Fraction]]

    def __post_init__(self) -> None:
        if not self.rows:
            raise InputError("a channel needs at least one row")
        clean = {}
        for x, row in self.rows.items():
            r = {y: Fraction(p) for y, p in row.items()}
            if any(p < 0 for p in r.values()):
                raise InputError(f"row {x!r} has a negative probability")
            if sum(r.values(), Fraction(0)) != 1:
                raise InputError(f"row {x!r} sums to {sum(r.values(), Fraction(0))}, not 1")
            clean[x] = MappingProxyType(r)
        object.__setattr__(self, "rows", MappingProxyType(clean))

    def __reduce__(self):
        return (StochasticChannel, (self.source, self.target, {x: dict(r) for x, r in self.rows.items()}))

    @classmethod
    def from_dist(cls, dist: RationalDist, source: str, target: str) -> StochasticChannel:
        px = dist.marginal(source)
        rows = {x: dist.conditional(target, source, x) for x, p in px.items() if p > 0}
        return cls(source, target, rows)

    @property
    def outputs(self) -> frozenset[str]:
        return frozenset().union(*(r.keys() for r in self.rows.values()))


def maximal_stochastic_leakage(ch: StochasticChannel, support: Iterable[str]) -> LeakageValue:
    """``log2 sum_y max_{x in support} P(y|x)``.

    Only the support of the input prior matters, so it is passed as a set.
    """
    support = sorted_symbols(set(support))
    if not support:
        raise InputError("the input support is empty")
    missing = [x for x in support if x not in ch.rows]
    if missing:
        raise InputError(f"channel has no row for {missing}")
    total = sum(
        (max(ch.rows[x].get(y, Fraction(0)) for x in support) for y in ch.outputs),
        Fraction(0),
    )
    return LeakageValue.of(total)


class LeakageComparison(NamedTuple):
    lhs: LeakageValue
    rhs: LeakageValue
    holds: bool


def relate_maximal_leakages(rel: Relation, x: Vars, y: Vars) -> LeakageComparison:
    """Compare maximal leakage with ``H0(Y) + H0(X|Y)``.

    ``H0(Y)`` is the supremum of the stochastic maximal leakage over all
    channels with output range ``[[Y]]``, so the right-hand side bounds the
    non-stochastic maximal leakage from above.
    """
    lhs = maximal_leakage(rel, x, y)
    rhs = h0(marginal(rel, y)) + h0_cond(rel, x, y)
    return LeakageComparison(lhs, rhs, lhs <= rhs)
