"""JSON file formats for relations, channels, distributions and attribute maps.

Every loader rejects unknown keys and reports the offending field path, e.g.
``tuples[2][1]: symbol 'x9' not in alphabet of X``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .errors import InputError
from .stochastic import RationalDist, StochasticChannel
from .uv import AttributeMap, Channel, Relation, sorted_symbols
from .values import LeakageValue, fraction_str, parse_fraction

__all__ = [
    "SchemaError",
    "read_json",
    "write_json",
    "relation_from_obj",
    "relation_to_obj",
    "channel_from_obj",
    "channel_to_obj",
    "dist_from_obj",
    "dist_to_obj",
    "stochastic_channel_from_obj",
    "stochastic_channel_to_obj",
    "attribute_from_obj",
    "attribute_to_obj",
    "load_relation",
    "load_channel",
    "load_dist",
    "load_stochastic_channel",
    "load_attribute",
]

TUPLE_SEP = "|"


class SchemaError(InputError):
    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where
        self.message = message


def read_json(path: str | Path) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    except UnicodeDecodeError as exc:
        raise InputError(f"{path}: not valid UTF-8") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from exc


def write_json(obj: Any, path: str | Path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def _expect_keys(obj: Any, where: str, required: set[str], optional: frozenset[str] = frozenset()) -> None:
    if not isinstance(obj, dict):
        raise SchemaError(where, f"expected an object, got {type(obj).__name__}")
    missing = required - obj.keys()
    if missing:
        raise SchemaError(where, f"missing key(s) {sorted(missing)}")
    unknown = obj.keys() - required - optional
    if unknown:
        raise SchemaError(where, f"unknown key(s) {sorted(unknown)}")


def _str_list(obj: Any, where: str) -> list[str]:
    if not isinstance(obj, list):
        raise SchemaError(where, "expected a list")
    for i, s in enumerate(obj):
        if not isinstance(s, str) or not s:
            raise SchemaError(f"{where}[{i}]", f"expected a non-empty string, got {s!r}")
    return obj


def relation_from_obj(obj: Any, where: str = "") -> Relation:
    _expect_keys(obj, where, {"variables", "tuples"}, frozenset({"alphabets"}))
    pre = f"{where}." if where else ""
    variables = _str_list(obj["variables"], f"{pre}variables")
    if len(set(variables)) != len(variables):
        raise SchemaError(f"{pre}variables", "variable names must be distinct")
    alphabets = None
    if "alphabets" in obj:
        _expect_keys(obj["alphabets"], f"{pre}alphabets", set(variables))
        alphabets = {}
        for v in variables:
            symbols = _str_list(obj["alphabets"][v], f"{pre}alphabets.{v}")
            if len(set(symbols)) != len(symbols):
                raise SchemaError(f"{pre}alphabets.{v}", "symbols must be unique")
            alphabets[v] = symbols
    tuples = obj["tuples"]
    if not isinstance(tuples, list) or not tuples:
        raise SchemaError(f"{pre}tuples", "expected a non-empty list")
    for i, t in enumerate(tuples):
        _str_list(t, f"{pre}tuples[{i}]")
        if len(t) != len(variables):
            raise SchemaError(f"{pre}tuples[{i}]", f"has {len(t)} coordinates, expected {len(variables)}")
        if alphabets is not None:
            for j, (v, s) in enumerate(zip(variables, t)):
                if s not in alphabets[v]:
                    raise SchemaError(f"{pre}tuples[{i}][{j}]", f"symbol {s!r} not in alphabet of {v}")
    return Relation.from_tuples(variables, tuples, alphabets)


def relation_to_obj(rel: Relation) -> dict:
    return {
        "variables": list(rel.variables),
        "alphabets": {v: sorted_symbols(a) for v, a in zip(rel.variables, rel.alphabets)},
        "tuples": [list(t) for t in rel.sorted_tuples()],
    }


def channel_from_obj(obj: Any, where: str = "") -> Channel:
    _expect_keys(obj, where, {"from", "to", "map"})
    pre = f"{where}." if where else ""
    for key in ("from", "to"):
        if not isinstance(obj[key], str) or not obj[key]:
            raise SchemaError(f"{pre}{key}", "expected a variable name")
    m = obj["map"]
    if not isinstance(m, dict) or not m:
        raise SchemaError(f"{pre}map", "expected a non-empty object")
    images = {}
    for x, ys in m.items():
        _str_list(ys, f"{pre}map.{x}")
        if not ys:
            raise SchemaError(f"{pre}map.{x}", "image must be non-empty")
        images[x] = ys
    return Channel(obj["from"], obj["to"], images)


def channel_to_obj(k: Channel) -> dict:
    return {
        "from": k.source,
        "to": k.target,
        "map": {x: sorted_symbols(k.map[x]) for x in sorted_symbols(k.map)},
    }


def _fraction(value: Any, where: str) -> Fraction:
    if not isinstance(value, str):
        raise SchemaError(where, f"rationals are written as strings like \"1/3\", got {value!r}")
    try:
        return parse_fraction(value)
    except InputError as exc:
        raise SchemaError(where, str(exc)) from None


def dist_from_obj(obj: Any, rel: Relation, where: str = "") -> RationalDist:
    _expect_keys(obj, where, {"weights"})
    pre = f"{where}." if where else ""
    w = obj["weights"]
    if not isinstance(w, dict) or not w:
        raise SchemaError(f"{pre}weights", "expected a non-empty object")
    weights = {}
    for key, value in w.items():
        t = tuple(key.split(TUPLE_SEP))
        if t not in rel.tuples:
            raise SchemaError(f"{pre}weights.{key}", "not a tuple of the relation")
        weights[t] = _fraction(value, f"{pre}weights.{key}")
    try:
        return RationalDist(rel, weights)
    except InputError as exc:
        raise SchemaError(f"{pre}weights", str(exc)) from None


def dist_to_obj(dist: RationalDist) -> dict:
    return {
        "weights": {
            TUPLE_SEP.join(t): fraction_str(dist.weights[t])
            for t in dist.rel.sorted_tuples()
            if t in dist.weights
        }
    }


def stochastic_channel_from_obj(obj: Any, where: str = "") -> StochasticChannel:
    _expect_keys(obj, where, {"from", "to", "map"})
    pre = f"{where}." if where else ""
    m = obj["map"]
    if not isinstance(m, dict) or not m:
        raise SchemaError(f"{pre}map", "expected a non-empty object")
    rows = {}
    for x, row in m.items():
        if not isinstance(row, dict) or not row:
            raise SchemaError(f"{pre}map.{x}", "expected a non-empty object of probabilities")
        rows[x] = {y: _fraction(p, f"{pre}map.{x}.{y}") for y, p in row.items()}
    try:
        return StochasticChannel(obj["from"], obj["to"], rows)
    except InputError as exc:
        raise SchemaError(f"{pre}map", str(exc)) from None


def stochastic_channel_to_obj(ch: StochasticChannel) -> dict:
    return {
        "from": ch.source,
        "to": ch.target,
        "map": {
            x: {y: fraction_str(ch.rows[x][y]) for y in sorted_symbols(ch.rows[x])}
            for x in sorted_symbols(ch.rows)
        },
    }


def attribute_from_obj(obj: Any, where: str = "") -> tuple[AttributeMap, LeakageValue | None]:
    _expect_keys(obj, where, {"domain", "map"}, frozenset({"achieved_leakage"}))
    pre = f"{where}." if where else ""
    domain = _str_list(obj["domain"], f"{pre}domain")
    m = obj["map"]
    if not isinstance(m, dict):
        raise SchemaError(f"{pre}map", "expected an object")
    achieved = None
    if "achieved_leakage" in obj:
        try:
            achieved = LeakageValue.parse(obj["achieved_leakage"])
        except (InputError, TypeError):
            raise SchemaError(f"{pre}achieved_leakage", "expected 'log2(p/q)'") from None
    try:
        return AttributeMap(frozenset(domain), m), achieved
    except InputError as exc:
        raise SchemaError(f"{pre}map", str(exc)) from None


def attribute_to_obj(g: AttributeMap, achieved: LeakageValue | None = None) -> dict:
    out: dict[str, Any] = {
        "domain": sorted_symbols(g.domain),
        "map": {x: g(x) for x in sorted_symbols(g.domain)},
    }
    if achieved is not None:
        out["achieved_leakage"] = str(achieved)
    return out


def _load(path, parse, *extra):
    obj = read_json(path)
    try:
        return parse(obj, *extra)
    except SchemaError as exc:
        raise SchemaError(f"{path}: {exc.where}" if exc.where else str(path), exc.message) from None
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None


def load_relation(path) -> Relation:
    return _load(path, relation_from_obj)


def load_channel(path) -> Channel:
    return _load(path, channel_from_obj)


def load_dist(path, rel: Relation) -> RationalDist:
    return _load(path, lambda obj: dist_from_obj(obj, rel))


def load_stochastic_channel(path) -> StochasticChannel:
    return _load(path, stochastic_channel_from_obj)


def load_attribute(path) -> tuple[AttributeMap, LeakageValue | None]:
    return _load(path, attribute_from_obj)

