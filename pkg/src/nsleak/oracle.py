"""Brute-force oracles and seeded property campaigns.

The leakage of an attribute ``U = g(X)`` depends on ``g`` only through the
partition of ``[[X]]`` into fibers of ``g``: ``|[[U]]|`` is the number of
fibers and ``|[[U|y]]|`` the number of fibers meeting ``[[X|y]]``. Searching
over all set partitions (enumerated as restricted growth strings) is
therefore an exhaustive search over all attributes.

Random instances come from :class:`SeededRng`, a thin wrapper that only uses
``random.Random.getrandbits`` (MT19937). Bounded draws are by rejection, so
the streams do not depend on CPython's ``randrange``/``shuffle`` internals.
"""

from __future__ import annotations

import random
from collections.abc import Callable, Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, NamedTuple

from .errors import InputError, SearchCapError
from .maximin import Partition, common_variable, maximin_info, overlap_partition
from .measures import (
    budget_from_threshold,
    h0,
    identifiability_bound,
    is_identifiable,
    leakage,
    maximal_leakage,
    min_epsilon,
    worst_attribute,
)
from .stochastic import relate_maximal_leakages
from .uv import (
    AttributeMap,
    Channel,
    Relation,
    apply_attribute,
    compose_chain,
    conditional_ranges,
    is_markov,
    is_unrelated,
    marginal,
    product_relation,
    sorted_symbols,
)
from .values import LeakageValue, PrivacyBudget

PRNG_ALGORITHM = "mt19937-getrandbits-rejection/v1"
DEFAULT_PARTITION_CAP = 10
MAX_COUNTEREXAMPLES = 10

__all__ = [
    "PRNG_ALGORITHM",
    "DEFAULT_PARTITION_CAP",
    "bell",
    "iter_partitions",
    "BruteForceResult",
    "brute_force_max_leakage",
    "brute_force_one_shot",
    "SeededRng",
    "InstanceSpec",
    "random_relation",
    "random_channel",
    "random_attribute",
    "random_markov_chain",
    "identity_relation",
    "full_marginal_relations",
    "CampaignReport",
    "CAMPAIGNS",
    "property_campaign",
]


# -- partitions ---------------------------------------------------------------


def bell(n: int) -> int:
    """Bell number B(n) via the Bell triangle."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def iter_partitions(n: int, prefix: Sequence[int] = ()) -> Iterator[tuple[int, ...]]:
    """Yield every restricted growth string of length ``n`` in lexicographic order.

    A string ``a`` has ``a[0] == 0`` and ``a[i] <= max(a[:i]) + 1``; each one
    labels the blocks of exactly one set partition of ``range(n)``. With
    ``prefix`` only strings starting with it are produced.
    """
    if n == 0:
        if prefix:
            raise InputError("prefix longer than the string")
        yield ()
        return
    k = len(prefix)
    if k > n:
        raise InputError("prefix longer than the string")
    a = list(prefix) + [0] * (n - k)
    top = [0] * n
    for i in range(n):
        if i == 0:
            if a[0] != 0:
                raise InputError("restricted growth strings start with 0")
            top[0] = 0
        else:
            if a[i] > top[i - 1] + 1 or a[i] < 0:
                raise InputError(f"{list(prefix)} is not a restricted growth prefix")
            top[i] = max(top[i - 1], a[i])
    lo = max(k, 1)
    while True:
        yield tuple(a)
        i = n - 1
        while i >= lo and a[i] > top[i - 1]:
            i -= 1
        if i < lo:
            return
        a[i] += 1
        top[i] = max(top[i - 1], a[i])
        for j in range(i + 1, n):
            a[j] = 0
            top[j] = top[i]


def _strata(n: int, depth: int = 3) -> list[tuple[int, ...]]:
    return list(iter_partitions(min(n, depth))) if n else [()]


class BruteForceResult(NamedTuple):
    value: LeakageValue
    witness: Partition


def _scan(ground, conds, prefix, one_shot: bool):
    """Best (num, den, labels) over one stratum; first maximum wins."""
    best = None
    for labels in iter_partitions(len(ground), prefix):
        if one_shot:
            if any(len({labels[i] for i in c}) != 1 for c in conds):
                continue
            num, den = max(labels) + 1, 1
        else:
            num = max(labels) + 1
            den = min(len({labels[i] for i in c}) for c in conds)
        if best is None or num * best[1] > best[0] * den:
            best = (num, den, labels)
    return best


def _brute_force(rel: Relation, x, y, cap: int, workers: int | None, one_shot: bool) -> BruteForceResult:
    ground = sorted_symbols(marginal(rel, x))
    if len(ground) > cap:
        raise SearchCapError(
            f"|[[X]]| = {len(ground)} exceeds the partition cap {cap} "
            f"(B({len(ground)}) = {bell(len(ground))} partitions); raise the cap explicitly"
        )
    pos = {s: i for i, s in enumerate(ground)}
    conds = [tuple(pos[s] for s in r) for r in conditional_ranges(rel, x, y).values()]
    strata = _strata(len(ground))
    if workers and workers > 1 and len(strata) > 1:
        n = len(strata)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan, [ground] * n, [conds] * n, strata, [one_shot] * n))
    else:
        parts = [_scan(ground, conds, p, one_shot) for p in strata]
    best = None
    for cand in parts:
        if cand is not None and (best is None or cand[0] * best[1] > best[0] * cand[1]):
            best = cand
    num, den, labels = best
    return BruteForceResult(LeakageValue(num, den), Partition.from_labels(ground, labels))


def brute_force_max_leakage(
    rel: Relation, x, y, *, cap: int = DEFAULT_PARTITION_CAP, workers: int | None = None
) -> BruteForceResult:
    """Maximise the guessing leakage over every attribute of ``x`` by enumeration."""
    return _brute_force(rel, x, y, cap, workers, one_shot=False)


def brute_force_one_shot(
    rel: Relation, x, y, *, cap: int = DEFAULT_PARTITION_CAP, workers: int | None = None
) -> BruteForceResult:
    """Maximise ``log2 |P|`` over partitions that keep each ``[[X|y]]`` inside one block."""
    return _brute_force(rel, x, y, cap, workers, one_shot=True)


# -- random instances -----------------------------------------------------------


class SeededRng:
    """Portable integer draws on top of MT19937 ``getrandbits``."""

    def __init__(self, seed: int):
        self.seed = seed
        self._r = random.Random(seed)

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("n must be positive")
        if n == 1:
            return 0
        bits = (n - 1).bit_length()
        while True:
            v = self._r.getrandbits(bits)
            if v < n:
                return v

    def between(self, lo: int, hi: int) -> int:
        return lo + self.below(hi - lo + 1)

    def bernoulli(self, p: Fraction) -> bool:
        return self.below(p.denominator) < p.numerator

    def choice(self, seq: Sequence):
        return seq[self.below(len(seq))]

    def shuffled(self, seq: Sequence) -> list:
        out = list(seq)
        for i in range(len(out) - 1, 0, -1):
            j = self.below(i + 1)
            out[i], out[j] = out[j], out[i]
        return out

    def seed64(self) -> int:
        return self._r.getrandbits(64)


def _symbols(name: str, n: int) -> list[str]:
    return [f"{name.lower()}{i}" for i in range(1, n + 1)]


_DEFAULT_NAMES = ("X", "Y", "Z", "W", "V", "T")


@dataclass(frozen=True)
class InstanceSpec:
    sizes: tuple[int, ...]
    density: Fraction = Fraction(1, 2)
    seed: int = 0
    names: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "sizes", tuple(self.sizes))
        object.__setattr__(self, "density", Fraction(self.density))
        if not self.sizes or any(s < 1 for s in self.sizes):
            raise InputError("every size must be at least 1")
        if not 0 < self.density <= 1:
            raise InputError("density must lie in (0, 1]")
        if self.names is not None and len(self.names) != len(self.sizes):
            raise InputError("one name per size is required")

    def variable_names(self) -> tuple[str, ...]:
        if self.names is not None:
            return tuple(self.names)
        if len(self.sizes) <= len(_DEFAULT_NAMES):
            return _DEFAULT_NAMES[: len(self.sizes)]
        return tuple(f"V{i}" for i in range(1, len(self.sizes) + 1))


def random_relation(spec: InstanceSpec) -> Relation:
    """A seeded relation whose marginals cover every declared symbol.

    One tuple per index ``0..max(sizes)-1`` is placed first (through random
    permutations of each alphabet), which covers every symbol; every other
    cell of the product is then kept with probability ``density``.
    """
    rng = SeededRng(spec.seed)
    names = spec.variable_names()
    alphabets = [_symbols(v, n) for v, n in zip(names, spec.sizes)]
    perms = [rng.shuffled(a) for a in alphabets]
    m = max(spec.sizes)
    rows = {tuple(p[k % len(p)] for p in perms) for k in range(m)}
    for cell in product(*alphabets):
        if cell not in rows and rng.bernoulli(spec.density):
            rows.add(cell)
    return Relation.from_tuples(names, sorted(rows), dict(zip(names, alphabets)))


def random_channel(rng: SeededRng, source: str, target: str, inputs, outputs, density: Fraction) -> Channel:
    outputs = list(outputs)
    m = {}
    for x in inputs:
        image = [y for y in outputs if rng.bernoulli(density)]
        m[x] = image or [rng.choice(outputs)]
    return Channel(source, target, m)


def random_attribute(rng: SeededRng, domain, n_values: int, name: str = "U") -> AttributeMap:
    values = _symbols(name, n_values)
    return AttributeMap.from_dict({x: rng.choice(values) for x in sorted_symbols(domain)})


def random_markov_chain(spec: InstanceSpec) -> Relation:
    """A seeded relation over ``(U, X, Y, Z)`` forming the chain ``U - X - Y - Z``.

    ``spec.sizes`` gives the alphabet sizes of ``U, X, Y, Z``; ``X`` realizes
    its whole alphabet, ``Y`` and ``Z`` come from random channels and ``U`` from
    a random attribute of ``X``.
    """
    if len(spec.sizes) != 4:
        raise InputError("a Markov chain spec needs four sizes (U, X, Y, Z)")
    nu, nx, ny, nz = spec.sizes
    rng = SeededRng(spec.seed)
    xs, ys, zs = _symbols("X", nx), _symbols("Y", ny), _symbols("Z", nz)
    base = Relation.from_tuples(("X",), [(x,) for x in xs])
    k1 = random_channel(rng, "X", "Y", xs, ys, spec.density)
    k2 = random_channel(rng, "Y", "Z", ys, zs, spec.density)
    rel = compose_chain(base, k1, k2)
    g = random_attribute(rng, xs, nu)
    return apply_attribute(rel, g, source="X", name="U")


def identity_relation(n: int) -> Relation:
    """``Y = X`` on ``n`` symbols."""
    xs = _symbols("X", n)
    return Relation.from_tuples(("X", "Y"), [(x, x) for x in xs])


def full_marginal_relations(nx: int, ny: int) -> Iterator[Relation]:
    """Every relation on ``nx x ny`` symbols whose marginals are the full alphabets."""
    xs, ys = _symbols("X", nx), _symbols("Y", ny)
    cells = [(x, y) for x in xs for y in ys]
    row_masks = [sum(1 << (i * ny + j) for j in range(ny)) for i in range(nx)]
    col_masks = [sum(1 << (i * ny + j) for i in range(nx)) for j in range(ny)]
    for mask in range(1, 1 << len(cells)):
        if all(mask & r for r in row_masks) and all(mask & c for c in col_masks):
            rows = [cells[b] for b in range(len(cells)) if mask >> b & 1]
            yield Relation.from_tuples(("X", "Y"), rows)


def _exhaustive_family(max_x: int = 4, max_y: int = 3) -> Iterator[Relation]:
    for nx in range(1, max_x + 1):
        for ny in range(1, max_y + 1):
            yield from full_marginal_relations(nx, ny)


# -- campaigns -------------------------------------------------------------------

_DENSITIES = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1))


@dataclass
class CampaignReport:
    """Outcome of one property campaign; violations are findings, not errors."""

    name: str
    property: str
    seed: int
    instances: int = 0
    violations: int = 0
    counterexamples: list[tuple[Relation, str]] = field(default_factory=list)
    notes: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.property} ({self.instances} instances, {self.violations} violations)"


@dataclass(frozen=True)
class _Campaign:
    property: str
    instances: Callable[[int, int], Iterator[tuple[Any, ...]]]
    check: Callable[..., list[str]]


def _random_xy(rng: SeededRng, max_x: int, max_y: int) -> Relation:
    spec = InstanceSpec((rng.between(1, max_x), rng.between(1, max_y)), rng.choice(_DENSITIES), rng.seed64())
    return random_relation(spec)


def _random_xy_instances(trials: int, seed: int, max_x: int = 6, max_y: int = 5):
    rng = SeededRng(seed)
    for _ in range(trials):
        yield (_random_xy(rng, max_x, max_y),)


# dpi


def _dpi_instances(trials: int, seed: int):
    rng = SeededRng(seed)
    for _ in range(trials):
        sizes = (rng.between(1, 4), rng.between(1, 6), rng.between(1, 5), rng.between(1, 5))
        yield (random_markov_chain(InstanceSpec(sizes, rng.choice(_DENSITIES), rng.seed64())),)


def _dpi_check(rel: Relation) -> list[str]:
    out = []
    if not (is_markov(rel, "U", "X", "Y") and is_markov(rel, "X", "Y", "Z")):
        out.append("generated chain is not Markov")
    luz, luy = leakage(rel, "U", "Z"), leakage(rel, "U", "Y")
    if not luz <= luy:
        out.append(f"L(U->Z) = {luz} > L(U->Y) = {luy}")
    lxz, lxy = maximal_leakage(rel, "X", "Z"), maximal_leakage(rel, "X", "Y")
    if not lxz <= lxy:
        out.append(f"L*(X->Z) = {lxz} > L*(X->Y) = {lxy}")
    return out


# bounding


def _bounding_instances(trials: int, seed: int):
    rng = SeededRng(seed)
    for _ in range(trials):
        rel = _random_xy(rng, 6, 5)
        g = random_attribute(rng, marginal(rel, "X"), rng.between(1, 4))
        nx, ny = rng.between(1, 4), rng.between(1, 4)
        prod = Relation.from_tuples(("X", "Y"), product(_symbols("X", nx), _symbols("Y", ny)))
        g2 = random_attribute(rng, marginal(prod, "X"), rng.between(1, 4))
        yield (apply_attribute(rel, g), apply_attribute(prod, g2))


def _bounding_check(rel: Relation, unrelated: Relation) -> list[str]:
    out = []
    v = leakage(rel, "U", "Y")
    if not v.is_nonnegative():
        out.append(f"L(U->Y) = {v} < 0")
    w = leakage(unrelated, "U", "Y")
    if not w.is_zero():
        out.append(f"unrelated X, Y but L(U->Y) = {w}")
    return out


# properties


def _properties_instances(trials: int, seed: int):
    for rel in _exhaustive_family(3, 3):
        yield ("exhaustive", rel)
    for n in range(1, 9):
        yield ("identity", identity_relation(n))
    for (rel,) in _random_xy_instances(trials, seed, 8, 5):
        yield ("random", rel)


def _properties_check(kind: str, rel: Relation) -> list[str]:
    out = []
    lstar = maximal_leakage(rel, "X", "Y")
    hx = h0(marginal(rel, "X"))
    if not lstar.is_nonnegative():
        out.append(f"L* = {lstar} < 0")
    if lstar.is_zero() != is_unrelated(rel, "X", "Y"):
        out.append(f"L* = {lstar} but unrelated = {is_unrelated(rel, 'X', 'Y')}")
    if not lstar <= hx:
        out.append(f"L* = {lstar} > H0(X) = {hx}")
    if kind == "identity" and lstar != hx:
        out.append(f"Y = X but L* = {lstar} != H0(X) = {hx}")
    return out


# closed form and one-shot share the instance family


def _oracle_instances(trials: int, seed: int):
    for rel in _exhaustive_family(4, 3):
        yield (rel,)
    rng = SeededRng(seed)
    for _ in range(trials):
        yield (_random_xy(rng, 8, 5),)


def _closed_form_check(rel: Relation) -> list[str]:
    out = []
    closed = maximal_leakage(rel, "X", "Y")
    brute = brute_force_max_leakage(rel, "X", "Y")
    if brute.value != closed:
        out.append(f"brute force {brute.value} != closed form {closed}")
    g = worst_attribute(rel, "X", "Y")
    achieved = leakage(apply_attribute(rel, g), "U", "Y")
    if achieved != closed:
        out.append(f"worst attribute achieves {achieved}, closed form {closed}")
    return out


def _one_shot_check(rel: Relation) -> list[str]:
    out = []
    brute = brute_force_one_shot(rel, "X", "Y")
    imax = maximin_info(rel, "X", "Y")
    if brute.value != imax:
        out.append(f"one-shot brute force {brute.value} != maximin {imax}")
    if not brute.value <= maximal_leakage(rel, "X", "Y"):
        out.append("one-shot supremum exceeds maximal leakage")
    if brute.witness != overlap_partition(rel, "X", "Y"):
        out.append("finest feasible partition differs from the overlap partition")
    return out


# identifiability


def _identifiability_instances(trials: int, seed: int):
    rng = SeededRng(seed)
    for _ in range(trials):
        rel = _random_xy(rng, 8, 5)
        eps = Fraction(rng.between(1, 16), rng.between(1, 4))
        yield (rel, eps)


def _identifiability_check(rel: Relation, eps: Fraction) -> list[str]:
    out = []
    lstar = maximal_leakage(rel, "X", "Y")
    n = len(marginal(rel, "X"))
    thr = min_epsilon(rel, "X", "Y")
    tight = budget_from_threshold(thr)
    if tight is None:
        if not lstar.is_zero():
            out.append(f"open threshold but L* = {lstar}")
    else:
        if not is_identifiable(rel, "X", "Y", tight):
            out.append(f"not identifiable at its own threshold {thr.value}")
        if identifiability_bound(n, tight).compare(lstar) != 0:
            out.append(f"ceiling at threshold {thr.value} differs from L* = {lstar}")
    budget = PrivacyBudget.rational(eps)
    ok = is_identifiable(rel, "X", "Y", budget)
    # identifiable exactly when 2^eps >= n / m
    expected = thr.open_bound or budget.compare_exp2(thr.value.ratio) >= 0
    if ok != expected:
        out.append(f"identifiability at eps={eps} is {ok}, threshold says {expected}")
    if ok and not identifiability_bound(n, budget).dominates(lstar):
        out.append(f"eps={eps}-identifiable but L* = {lstar} exceeds the ceiling")
    return out


# relating maximal leakages


def _prop6_check(rel: Relation) -> list[str]:
    cmp = relate_maximal_leakages(rel, "X", "Y")
    return [] if cmp.holds else [f"L* = {cmp.lhs} > H0(Y) + H0(X|Y) = {cmp.rhs}"]


def _prop6_instances(trials: int, seed: int):
    for n in range(1, 9):
        yield (identity_relation(n),)
    yield from _random_xy_instances(trials, seed, 8, 6)


# additivity


def _additivity_instances(trials: int, seed: int):
    rng = SeededRng(seed)
    for t in range(trials):
        k = 2 + t % 2
        factors = []
        for i in range(1, k + 1):
            spec = InstanceSpec(
                (rng.between(1, 3), rng.between(1, 3)),
                rng.choice(_DENSITIES),
                rng.seed64(),
                names=(f"X{i}", f"Y{i}"),
            )
            factors.append(random_relation(spec))
        yield (tuple(factors),)


def _additivity_check(factors: tuple[Relation, ...]) -> list[str]:
    prod = product_relation(*factors)
    xs = tuple(f.variables[0] for f in factors)
    ys = tuple(f.variables[1] for f in factors)
    lhs = maximal_leakage(prod, xs, ys)
    rhs = LeakageValue(1)
    for x, y in zip(xs, ys):
        rhs = rhs + leakage(prod, x, y)
    if lhs == rhs:
        return []
    alt = LeakageValue(1)
    for f, x, y in zip(factors, xs, ys):
        alt = alt + maximal_leakage(f, x, y)
    return [f"L*(product) = {lhs} != sum of L(Xi->Yi) = {rhs} (sum of L*(Xi->Yi) = {alt})"]


def _additivity_relation(factors: tuple[Relation, ...]) -> Relation:
    return product_relation(*factors)


# maximin symmetry


def _relabel(rel: Relation, rng_seed: int) -> tuple[Relation, dict[str, str]]:
    rng = SeededRng(rng_seed)
    xs = sorted_symbols(rel.alphabet("X"))
    renamed = rng.shuffled([f"r{i}" for i in range(len(xs))])
    fwd = dict(zip(xs, renamed))
    i = rel.index("X")
    rows = [t[:i] + (fwd[t[i]],) + t[i + 1 :] for t in rel.tuples]
    return Relation.from_tuples(rel.variables, rows), {v: k for k, v in fwd.items()}


def _symmetry_instances(trials: int, seed: int):
    rng = SeededRng(seed)
    for _ in range(trials):
        yield (_random_xy(rng, 8, 6), rng.seed64())


def _symmetry_check(rel: Relation, relabel_seed: int) -> list[str]:
    out = []
    part = overlap_partition(rel, "X", "Y")
    ranges = conditional_ranges(rel, "X", "Y")
    for y, r in ranges.items():
        if sum(1 for b in part.blocks if b & r) != 1:
            out.append(f"[[X|{y}]] meets more than one block")
    if len(part) != len(overlap_partition(rel, "Y", "X")):
        out.append("|[[X|Y]]*| != |[[Y|X]]*|")
    other, back = _relabel(rel, relabel_seed)
    again = overlap_partition(other, "X", "Y")
    mapped = Partition(part.ground, tuple(frozenset(back[s] for s in b) for b in again.blocks))
    if mapped != part:
        out.append("overlap partition changes under symbol relabelling")
    g = common_variable(rel, "X", "Y")
    with_u = apply_attribute(rel, g)
    if any(len(r) != 1 for r in conditional_ranges(with_u, "U", "Y").values()):
        out.append("common variable is not determined by Y")
    if h0(marginal(with_u, "U")) != maximin_info(rel, "X", "Y"):
        out.append("H0(common variable) != maximin information")
    return out


CAMPAIGNS: dict[str, _Campaign] = {
    "dpi": _Campaign(
        "post-processing never increases leakage or maximal leakage",
        _dpi_instances,
        _dpi_check,
    ),
    "bounding": _Campaign(
        "leakage is non-negative and vanishes for unrelated variables",
        _bounding_instances,
        _bounding_check,
    ),
    "properties": _Campaign(
        "maximal leakage is non-negative, zero iff unrelated, at most H0(X), equal when Y = X",
        _properties_instances,
        _properties_check,
    ),
    "closed-form": _Campaign(
        "closed form of maximal leakage equals the exhaustive supremum over attributes",
        _oracle_instances,
        _closed_form_check,
    ),
    "one-shot": _Campaign(
        "maximin information equals the one-shot supremum and is at most maximal leakage",
        _oracle_instances,
        _one_shot_check,
    ),
    "identifiability": _Campaign(
        "identifiable mappings respect the identifiability ceiling, tight at the minimal budget",
        _identifiability_instances,
        _identifiability_check,
    ),
    "prop6": _Campaign(
        "maximal leakage is at most H0(Y) + H0(X|Y)",
        _prop6_instances,
        _prop6_check,
    ),
    "additivity": _Campaign(
        "maximal leakage of unrelated products equals the sum of per-factor leakages",
        _additivity_instances,
        _additivity_check,
    ),
    "maximin-symmetry": _Campaign(
        "overlap partitions are valid, unique and symmetric; the common variable is one-shot",
        _symmetry_instances,
        _symmetry_check,
    ),
}

DEFAULT_TRIALS = {"additivity": 200}


def _run_one(name: str, args: tuple) -> list[str]:
    return CAMPAIGNS[name].check(*args)


def _instance_relation(name: str, args: tuple) -> Relation:
    if name == "additivity":
        return _additivity_relation(args[0])
    return next(a for a in args if isinstance(a, Relation))


def property_campaign(
    name: str, trials: int | None = None, seed: int = 0, *, workers: int | None = None
) -> CampaignReport:
    """Run a named campaign; deterministic in ``seed``.

    ``trials`` counts random instances; some campaigns add a fixed exhaustive
    family on top. Violating instances are kept (up to a small limit) so the
    caller can write them out as relation files.
    """
    if name not in CAMPAIGNS:
        raise InputError(f"unknown campaign {name!r}; choose from {sorted(CAMPAIGNS)}")
    camp = CAMPAIGNS[name]
    if trials is None:
        trials = DEFAULT_TRIALS.get(name, 1000)
    instances = list(camp.instances(trials, seed))
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, [name] * len(instances), instances, chunksize=32))
    else:
        results = [camp.check(*args) for args in instances]
    report = CampaignReport(name, camp.property, seed, instances=len(instances))
    for args, problems in zip(instances, results):
        if problems:
            report.violations += 1
            if len(report.counterexamples) < MAX_COUNTEREXAMPLES:
                report.counterexamples.append((_instance_relation(name, args), "; ".join(problems)))
    return report
