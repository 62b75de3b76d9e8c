"""Reports shared by the CLI subcommands.

A :class:`Report` carries exact values as strings (``"log2(p/q)"`` or
``"p/q"``) next to 6-decimal renderings. The JSON form holds every field of
the human form and parses back to an equal report.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any

from .values import IdentifiabilityCeiling, LeakageValue, fraction_str, render_decimal

__all__ = ["Measure", "Check", "Report", "measure"]


@dataclass(frozen=True)
class Measure:
    name: str
    exact: str
    decimal: str
    note: str = ""


def measure(name: str, value: LeakageValue | Fraction | IdentifiabilityCeiling, note: str = "") -> Measure:
    if isinstance(value, LeakageValue):
        return Measure(name, str(value), value.decimal(), note)
    if isinstance(value, IdentifiabilityCeiling):
        return Measure(name, str(value), value.decimal(), note)
    value = Fraction(value)
    return Measure(name, fraction_str(value), render_decimal(float(value)), note)


@dataclass(frozen=True)
class Check:
    name: str
    detail: str
    passed: bool


@dataclass
class Report:
    command: str
    instance: dict[str, Any] = field(default_factory=dict)
    measures: list[Measure] = field(default_factory=list)
    witnesses: dict[str, Any] = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_obj(self) -> dict:
        return {
            "command": self.command,
            "instance": self.instance,
            "measures": [asdict(m) for m in self.measures],
            "witnesses": self.witnesses,
            "checks": [asdict(c) for c in self.checks],
        }

    @classmethod
    def from_obj(cls, obj: dict) -> Report:
        return cls(
            obj["command"],
            dict(obj["instance"]),
            [Measure(**m) for m in obj["measures"]],
            dict(obj["witnesses"]),
            [Check(**c) for c in obj["checks"]],
        )

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), indent=2, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> Report:
        return cls.from_obj(json.loads(text))

    def to_human(self) -> str:
        lines = [f"nsleak {self.command}"]
        if self.instance:
            lines.append("  " + ", ".join(f"{k}={_fmt(v)}" for k, v in self.instance.items()))
        if self.measures:
            width = max(len(m.name) for m in self.measures)
            ewidth = max(len(m.exact) for m in self.measures)
            lines.append("")
            for m in self.measures:
                row = f"  {m.name:<{width}}  {m.exact:<{ewidth}}  {m.decimal}"
                if m.note:
                    row += f"  ({m.note})"
                lines.append(row.rstrip())
        if self.witnesses:
            lines.append("")
            for k, v in self.witnesses.items():
                lines.append(f"  {k}: {_fmt(v)}")
        if self.checks:
            lines.append("")
            for c in self.checks:
                lines.append(f"  [{'pass' if c.passed else 'FAIL'}] {c.name}: {c.detail}")
        return "\n".join(lines)

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "json" else self.to_human()


def _fmt(v: Any) -> str:
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}->{_fmt(x)}" for k, x in v.items()) + "}"
    if isinstance(v, list):
        return "{" + ", ".join(_fmt(x) for x in v) + "}"
    return str(v)
