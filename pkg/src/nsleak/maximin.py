"""Overlap partitions, maximin information and the zero-error capacity bound."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations

from .errors import InputError, SearchCapError
from .measures import budget_from_threshold, identifiability_bound, is_identifiable, maximal_leakage, min_epsilon
from .uv import AttributeMap, Channel, Relation, Vars, conditional_ranges, marginal, sorted_symbols, symbol_key
from .values import IdentifiabilityCeiling, LeakageValue, PrivacyBudget

__all__ = [
    "UnionFind",
    "Partition",
    "overlap_partition",
    "maximin_info",
    "common_variable",
    "maximin_symmetry_check",
    "one_shot_supremum",
    "CapacityReport",
    "zero_error_capacity_bound",
    "DEFAULT_MAX_ALPHABET",
]

DEFAULT_MAX_ALPHABET = 16


class UnionFind:
    """Disjoint sets over ``0..n-1`` with path compression and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.components = n

    def find(self, a: int) -> int:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.components -= 1
        return True


def _block_key(block: frozenset):
    return symbol_key(min(block, key=symbol_key))


@dataclass(frozen=True)
class Partition:
    """A partition of ``ground`` with blocks sorted by their smallest member."""

    ground: frozenset
    blocks: tuple[frozenset, ...]

    def __post_init__(self) -> None:
        blocks = tuple(frozenset(b) for b in self.blocks)
        seen: set = set()
        for b in blocks:
            if not b:
                raise InputError("partition blocks must be non-empty")
            if seen & b:
                raise InputError("partition blocks must be disjoint")
            seen |= b
        if seen != set(self.ground):
            raise InputError("partition blocks must cover the ground set")
        object.__setattr__(self, "ground", frozenset(self.ground))
        object.__setattr__(self, "blocks", tuple(sorted(blocks, key=_block_key)))

    @classmethod
    def from_labels(cls, ground: Sequence, labels: Sequence[int]) -> Partition:
        """Build from one block label per element of ``ground``."""
        acc: dict[int, set] = {}
        for s, lab in zip(ground, labels):
            acc.setdefault(lab, set()).add(s)
        return cls(frozenset(ground), tuple(frozenset(b) for b in acc.values()))

    def __len__(self) -> int:
        return len(self.blocks)

    def block_of(self, s) -> int:
        for i, b in enumerate(self.blocks):
            if s in b:
                return i
        raise KeyError(s)

    def refines(self, other: Partition) -> bool:
        """True when every block of ``self`` lies inside a block of ``other``."""
        return all(any(b <= c for c in other.blocks) for b in self.blocks)

    def as_lists(self) -> list[list]:
        return [sorted_symbols(b) for b in self.blocks]


def overlap_partition(rel: Relation, x: Vars, y: Vars) -> Partition:
    """Connected components of ``[[X]]`` under overlapping conditional ranges."""
    ground = sorted_symbols(marginal(rel, x))
    pos = {s: i for i, s in enumerate(ground)}
    uf = UnionFind(len(ground))
    for rng in conditional_ranges(rel, x, y).values():
        it = iter(rng)
        first = pos[next(it)]
        for s in it:
            uf.union(first, pos[s])
    return Partition.from_labels(ground, [uf.find(i) for i in range(len(ground))])


def maximin_info(rel: Relation, x: Vars, y: Vars) -> LeakageValue:
    return LeakageValue(len(overlap_partition(rel, x, y)), 1)


def common_variable(rel: Relation, x: str, y: Vars) -> AttributeMap:
    """Label each symbol of ``[[X]]`` by its overlap block, ``b0, b1, ...``."""
    part = overlap_partition(rel, x, y)
    image = {s: f"b{i}" for i, b in enumerate(part.blocks) for s in b}
    return AttributeMap(part.ground, image)


def maximin_symmetry_check(rel: Relation, x: Vars, y: Vars) -> bool:
    return len(overlap_partition(rel, x, y)) == len(overlap_partition(rel, y, x))


def one_shot_supremum(rel: Relation, x: Vars, y: Vars) -> LeakageValue:
    """Largest leakage among attributes that are recovered exactly from one observation.

    Equal to the maximin information; the oracle module checks this by
    exhaustive search.
    """
    return maximin_info(rel, x, y)


@dataclass(frozen=True)
class CapacityReport:
    """Result of the subset search behind the zero-error capacity bound."""

    capacity: LeakageValue
    witness: tuple[str, ...]
    max_leakage_sup: LeakageValue
    ceiling: IdentifiabilityCeiling | None
    budget: PrivacyBudget | None
    identifiable: bool | None

    @property
    def within_max_leakage(self) -> bool:
        return self.capacity <= self.max_leakage_sup

    @property
    def within_ceiling(self) -> bool | None:
        if self.ceiling is None or not self.identifiable:
            return None
        return self.ceiling.dominates(self.capacity)


def _subset_key(subset: tuple[str, ...]):
    return (len(subset), tuple(symbol_key(s) for s in subset))


def _search_stratum(k: Channel, symbols: tuple[str, ...], size: int):
    best = best_sub = None
    best_lstar = None
    for sub in combinations(symbols, size):
        rel = k.to_relation(sub)
        val = maximin_info(rel, k.source, k.target)
        if best is None or val > best:
            best, best_sub = val, sub
        lstar = maximal_leakage(rel, k.source, k.target)
        if best_lstar is None or lstar > best_lstar:
            best_lstar = lstar
    return best, best_sub, best_lstar


def zero_error_capacity_bound(
    alphabet: Iterable[str],
    k: Channel,
    *,
    max_alphabet: int = DEFAULT_MAX_ALPHABET,
    budget: PrivacyBudget | None = None,
    workers: int | None = None,
) -> CapacityReport:
    """Maximise maximin information over every non-empty input subset.

    The search is exhaustive, so ``alphabet`` is capped at ``max_alphabet``
    symbols. ``budget`` defaults to the tightest budget for which the channel
    on the full alphabet is identifiable. Strata of equal subset size can be
    fanned out over ``workers`` processes.
    """
    symbols = tuple(sorted_symbols(set(alphabet)))
    if not symbols:
        raise InputError("the input alphabet is empty")
    if len(symbols) > max_alphabet:
        raise SearchCapError(
            f"alphabet has {len(symbols)} symbols, above the subset-search cap of {max_alphabet}; "
            "raise the cap explicitly (--max-alphabet) to search 2^n subsets"
        )
    for s in symbols:
        k[s]
    sizes = range(1, len(symbols) + 1)
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_search_stratum, [k] * len(sizes), [symbols] * len(sizes), sizes))
    else:
        results = [_search_stratum(k, symbols, n) for n in sizes]

    best = best_sub = None
    sup_lstar = None
    for val, sub, lstar in results:
        if best is None or val > best or (val == best and _subset_key(sub) < _subset_key(best_sub)):
            best, best_sub = val, sub
        if sup_lstar is None or lstar > sup_lstar:
            sup_lstar = lstar

    full = k.to_relation(symbols)
    if budget is None:
        budget = budget_from_threshold(min_epsilon(full, k.source, k.target))
    if budget is None:
        ceiling, identifiable = None, None
    else:
        identifiable = is_identifiable(full, k.source, k.target, budget)
        ceiling = identifiability_bound(len(symbols), budget)
    return CapacityReport(best, best_sub, sup_lstar, ceiling, budget, identifiable)
