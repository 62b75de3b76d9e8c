"""Finite uncertain variables represented by their joint range.

A :class:`Relation` is the set of jointly realizable symbol tuples of some
uncertain variables. Every measure in the package is computed from marginal
and conditional ranges of a relation, never from the declared alphabets,
which may be strictly larger.

Variable selectors accept either one name (``"X"``), in which case ranges
hold bare symbols, or a sequence of names (``("X1", "X2")``), in which case
ranges hold symbol tuples.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Union

from .errors import IncompatibleEvidenceError, InputError

Vars = Union[str, Sequence[str]]

__all__ = [
    "Relation",
    "Channel",
    "AttributeMap",
    "symbol_key",
    "sorted_symbols",
    "marginal",
    "conditional",
    "conditional_ranges",
    "channel_from_relation",
    "compose_chain",
    "compose_markov",
    "is_unrelated",
    "is_markov",
    "apply_attribute",
    "product_relation",
]


def symbol_key(s):
    """Byte-order sort key for a symbol or a tuple of symbols."""
    if isinstance(s, tuple):
        return tuple(x.encode("utf-8") for x in s)
    return s.encode("utf-8")


def sorted_symbols(symbols: Iterable) -> list:
    return sorted(symbols, key=symbol_key)


def _check_symbol(s, where: str) -> None:
    if not isinstance(s, str) or not s:
        raise InputError(f"{where}: symbols must be non-empty strings, got {s!r}")


@dataclass(frozen=True)
class Relation:
    """A finite joint range over named variables.

    Build with :meth:`from_tuples`; duplicate input tuples are dropped and
    counted in ``duplicates``.
    """

    variables: tuple[str, ...]
    alphabets: tuple[frozenset[str], ...]
    tuples: frozenset[tuple[str, ...]]
    duplicates: int = field(default=0, compare=False)

    def __post_init__(self) -> None:
        if not self.variables:
            raise InputError("a relation needs at least one variable")
        for v in self.variables:
            if not isinstance(v, str) or not v:
                raise InputError(f"variable names must be non-empty strings, got {v!r}")
        if len(set(self.variables)) != len(self.variables):
            raise InputError(f"duplicate variable names in {list(self.variables)}")
        if len(self.alphabets) != len(self.variables):
            raise InputError("one alphabet per variable is required")
        if not self.tuples:
            raise InputError("a relation needs at least one tuple")
        for v, alpha in zip(self.variables, self.alphabets):
            for s in alpha:
                _check_symbol(s, f"alphabet of {v}")
        for t in self.tuples:
            if len(t) != len(self.variables):
                raise InputError(f"tuple {list(t)} has {len(t)} coordinates, expected {len(self.variables)}")
            for v, alpha, s in zip(self.variables, self.alphabets, t):
                if s not in alpha:
                    raise InputError(f"tuple {list(t)}: symbol {s!r} not in alphabet of {v}")

    @classmethod
    def from_tuples(
        cls,
        variables: Sequence[str],
        tuples: Iterable[Sequence[str]],
        alphabets: Mapping[str, Iterable[str]] | None = None,
    ) -> Relation:
        variables = tuple(variables)
        rows = [tuple(t) for t in tuples]
        for t in rows:
            for s in t:
                _check_symbol(s, f"tuple {list(t)}")
        unique = frozenset(rows)
        if alphabets is None:
            alphas = tuple(frozenset(t[i] for t in unique) for i in range(len(variables)))
        else:
            unknown = set(alphabets) - set(variables)
            if unknown:
                raise InputError(f"alphabets given for unknown variables {sorted(unknown)}")
            missing = set(variables) - set(alphabets)
            if missing:
                raise InputError(f"no alphabet given for {sorted(missing)}")
            alphas = []
            for v in variables:
                symbols = list(alphabets[v])
                if len(set(symbols)) != len(symbols):
                    raise InputError(f"alphabet of {v} lists a symbol twice")
                alphas.append(frozenset(symbols))
            alphas = tuple(alphas)
        return cls(variables, alphas, unique, duplicates=len(rows) - len(unique))

    def index(self, var: str) -> int:
        try:
            return self.variables.index(var)
        except ValueError:
            raise InputError(f"unknown variable {var!r}; relation has {list(self.variables)}") from None

    def alphabet(self, var: str) -> frozenset[str]:
        return self.alphabets[self.index(var)]

    def sorted_tuples(self) -> list[tuple[str, ...]]:
        return sorted(self.tuples, key=symbol_key)

    def restrict(self, var: str, allowed: Iterable[str]) -> Relation:
        """Keep only tuples whose ``var`` coordinate lies in ``allowed``."""
        i = self.index(var)
        allowed = frozenset(allowed)
        kept = frozenset(t for t in self.tuples if t[i] in allowed)
        return Relation(self.variables, self.alphabets, kept)

    def __len__(self) -> int:
        return len(self.tuples)


def _selector(rel: Relation, vars: Vars) -> tuple[tuple[int, ...], bool]:
    if isinstance(vars, str):
        return (rel.index(vars),), True
    vars = tuple(vars)
    if not vars:
        raise InputError("empty variable selection")
    if len(set(vars)) != len(vars):
        raise InputError(f"variable selected twice in {list(vars)}")
    return tuple(rel.index(v) for v in vars), False


def _projector(idx: tuple[int, ...], scalar: bool):
    if scalar:
        i = idx[0]
        return lambda t: t[i]
    return lambda t: tuple(t[i] for i in idx)


def _names(vars: Vars) -> tuple[str, ...]:
    return (vars,) if isinstance(vars, str) else tuple(vars)


def marginal(rel: Relation, vars: Vars) -> frozenset:
    """Projection of the joint range onto ``vars``."""
    proj = _projector(*_selector(rel, vars))
    return frozenset(proj(t) for t in rel.tuples)


def conditional(rel: Relation, target: Vars, given: Mapping[str, str]) -> frozenset:
    """The conditional range of ``target`` given a partial assignment.

    Raises :class:`IncompatibleEvidenceError` when no tuple agrees with
    ``given``; conditional ranges exist only for realizable evidence.
    """
    proj = _projector(*_selector(rel, target))
    checks = [(rel.index(v), s) for v, s in given.items()]
    out = frozenset(proj(t) for t in rel.tuples if all(t[i] == s for i, s in checks))
    if not out:
        raise IncompatibleEvidenceError(f"evidence {dict(given)} is not realizable in the relation")
    return out


def conditional_ranges(rel: Relation, target: Vars, given: Vars) -> dict:
    """Map each realizable value of ``given`` to the conditional range of ``target``.

    Keys are in byte order.
    """
    pt = _projector(*_selector(rel, target))
    pg = _projector(*_selector(rel, given))
    acc: dict = {}
    for t in rel.tuples:
        acc.setdefault(pg(t), set()).add(pt(t))
    return {k: frozenset(acc[k]) for k in sorted_symbols(acc)}


@dataclass(frozen=True)
class Channel:
    """A set-valued map from source symbols to non-empty sets of target symbols."""

    source: str
    target: str
    map: Mapping[str, frozenset[str]]

    def __post_init__(self) -> None:
        if self.source == self.target:
            raise InputError("channel source and target must differ")
        fixed = {}
        for x, ys in self.map.items():
            _check_symbol(x, f"channel {self.source}->{self.target}")
            ys = frozenset(ys)
            if not ys:
                raise InputError(f"channel {self.source}->{self.target}: {x!r} has an empty image")
            for y in ys:
                _check_symbol(y, f"channel image of {x!r}")
            fixed[x] = ys
        if not fixed:
            raise InputError("a channel needs at least one source symbol")
        object.__setattr__(self, "map", MappingProxyType(fixed))

    def __reduce__(self):
        return (Channel, (self.source, self.target, dict(self.map)))

    def __getitem__(self, x: str) -> frozenset[str]:
        try:
            return self.map[x]
        except KeyError:
            raise InputError(f"channel {self.source}->{self.target} has no image for {x!r}") from None

    @property
    def inputs(self) -> frozenset[str]:
        return frozenset(self.map)

    @property
    def outputs(self) -> frozenset[str]:
        return frozenset().union(*self.map.values())

    def restrict(self, inputs: Iterable[str]) -> Channel:
        return Channel(self.source, self.target, {x: self[x] for x in inputs})

    def to_relation(self, inputs: Iterable[str] | None = None) -> Relation:
        """Joint range of (source, target) when the source ranges over ``inputs``."""
        xs = self.inputs if inputs is None else frozenset(inputs)
        rows = [(x, y) for x in xs for y in self[x]]
        return Relation.from_tuples((self.source, self.target), rows)


def channel_from_relation(rel: Relation, source: str, target: str) -> Channel:
    if source == target:
        raise InputError("source and target must be distinct variables")
    return Channel(source, target, conditional_ranges(rel, target, source))


def compose_chain(base: Relation, *channels: Channel) -> Relation:
    """Cascade channels behind a one-variable range into a joint relation.

    The result is over ``(X, Y, Z, ...)`` with one coordinate per channel
    target and every realizable path as a tuple.
    """
    if len(base.variables) != 1:
        raise InputError("the base range must have exactly one variable")
    names = [base.variables[0]]
    for k in channels:
        if k.source != names[-1]:
            raise InputError(f"channel {k.source}->{k.target} does not start at {names[-1]}")
        if k.target in names:
            raise InputError(f"variable {k.target} appears twice in the chain")
        names.append(k.target)
    paths = [(x,) for x in sorted_symbols(marginal(base, names[0]))]
    for k in channels:
        paths = [p + (y,) for p in paths for y in sorted_symbols(k[p[-1]])]
    alphabets = {names[0]: base.alphabets[0]}
    for k in channels:
        alphabets[k.target] = k.outputs
    return Relation.from_tuples(names, paths, alphabets)


def compose_markov(base: Relation, k1: Channel, k2: Channel) -> Relation:
    return compose_chain(base, k1, k2)


def is_unrelated(rel: Relation, a: Vars, b: Vars) -> bool:
    """True iff the joint range of ``a`` and ``b`` is the product of their marginals."""
    na, nb = _names(a), _names(b)
    if set(na) & set(nb):
        raise InputError("unrelatedness needs disjoint variable sets")
    joint = marginal(rel, na + nb)
    return len(joint) == len(marginal(rel, na)) * len(marginal(rel, nb))


def is_markov(rel: Relation, a: Vars, b: Vars, c: Vars) -> bool:
    """True iff ``a - b - c`` is a Markov uncertainty chain."""
    na, nb, nc = _names(a), _names(b), _names(c)
    if len(set(na + nb + nc)) != len(na) + len(nb) + len(nc):
        raise InputError("Markov chain variables must be disjoint")
    given_b = conditional_ranges(rel, na, nb)
    given_bc = conditional_ranges(rel, na, nb + nc)
    k = len(nb)
    return all(rng == given_b[bc[:k]] for bc, rng in given_bc.items())


@dataclass(frozen=True)
class AttributeMap:
    """A total function on a set of symbols; ``U = g(X)``."""

    domain: frozenset[str]
    image: Mapping[str, str]

    def __post_init__(self) -> None:
        image = dict(self.image)
        domain = frozenset(self.domain)
        if set(image) != domain:
            missing = sorted_symbols(domain - set(image))
            extra = sorted_symbols(set(image) - domain)
            raise InputError(f"attribute map is not total on its domain (missing {missing}, extra {extra})")
        for x, u in image.items():
            _check_symbol(u, f"attribute image of {x!r}")
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "image", MappingProxyType(image))

    def __reduce__(self):
        return (AttributeMap, (self.domain, dict(self.image)))

    @classmethod
    def from_dict(cls, image: Mapping[str, str]) -> AttributeMap:
        return cls(frozenset(image), image)

    def __call__(self, x: str) -> str:
        try:
            return self.image[x]
        except KeyError:
            raise InputError(f"symbol {x!r} is outside the attribute's domain") from None

    def fibers(self) -> list[frozenset[str]]:
        """The induced partition of the domain, blocks ordered by smallest member."""
        acc: dict[str, set[str]] = {}
        for x, u in self.image.items():
            acc.setdefault(u, set()).add(x)
        blocks = [frozenset(b) for b in acc.values()]
        return sorted(blocks, key=lambda b: symbol_key(min(b, key=symbol_key)))


def apply_attribute(rel: Relation, g: AttributeMap, source: str = "X", name: str = "U") -> Relation:
    """Prepend the coordinate ``name = g(source)`` to every tuple."""
    if name in rel.variables:
        raise InputError(f"variable {name!r} already exists")
    i = rel.index(source)
    rows = [(g(t[i]),) + t for t in rel.tuples]
    alphabets = {name: frozenset(g.image.values())}
    alphabets.update(zip(rel.variables, rel.alphabets))
    return Relation.from_tuples((name,) + rel.variables, rows, alphabets)


def product_relation(*rels: Relation) -> Relation:
    """The joint range of mutually unrelated relations (variable names must be distinct)."""
    names: list[str] = []
    alphabets: dict[str, frozenset[str]] = {}
    for r in rels:
        for v, a in zip(r.variables, r.alphabets):
            if v in alphabets:
                raise InputError(f"variable {v!r} occurs in more than one factor")
            names.append(v)
            alphabets[v] = a
    rows: list[tuple[str, ...]] = [()]
    for r in rels:
        rows = [p + t for p in rows for t in r.tuples]
    return Relation.from_tuples(names, rows, alphabets)
