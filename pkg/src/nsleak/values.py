"""Exact log-domain values and privacy budgets.

Every leakage quantity in this package is the base-2 logarithm of a positive
rational. Values are kept as integer pairs and compared through integer
cross-products, so equalities such as ``log2(3) == log2(3/1)`` are decided
exactly. Floats appear only when rendering.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

import mpmath

from .errors import InputError

__all__ = [
    "LeakageValue",
    "PrivacyBudget",
    "IdentifiabilityCeiling",
    "parse_fraction",
    "fraction_str",
    "render_decimal",
]

_LOG_RE = re.compile(r"^\s*log2\(\s*(\d+)\s*(?:/\s*(\d+)\s*)?\)\s*$")


def parse_fraction(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"``, an integer or a finite decimal into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise InputError(f"not a rational number: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise InputError(f"rationals must be given as strings, got {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational number: {text!r}") from exc


def fraction_str(x: Fraction) -> str:
    """Always ``"p/q"``, including integers."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _log2_int(n: int) -> float:
    # math.log2 accepts arbitrarily large ints without overflowing.
    return math.log2(n)


def render_decimal(x: float) -> str:
    return f"{x:.6f}"


@total_ordering
@dataclass(frozen=True, eq=False)
class LeakageValue:
    """The exact value ``log2(num / den)``.

    ``num`` and ``den`` are kept as given (typically raw cardinalities, e.g.
    ``|[[U]]|`` and ``min_y |[[U|y]]|``); comparisons never reduce or round.
    """

    num: int
    den: int = 1

    def __post_init__(self) -> None:
        if not isinstance(self.num, int) or not isinstance(self.den, int):
            raise TypeError("LeakageValue takes integer cardinalities")
        if self.num < 1 or self.den < 1:
            raise InputError(f"log2({self.num}/{self.den}) is undefined")

    @classmethod
    def of(cls, ratio: Fraction | int) -> LeakageValue:
        ratio = Fraction(ratio)
        return cls(ratio.numerator, ratio.denominator)

    @classmethod
    def parse(cls, text: str) -> LeakageValue:
        m = _LOG_RE.match(text)
        if not m:
            raise InputError(f"expected 'log2(p/q)', got {text!r}")
        return cls(int(m.group(1)), int(m.group(2) or 1))

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.num, self.den)

    def is_zero(self) -> bool:
        return self.num == self.den

    def is_nonnegative(self) -> bool:
        return self.num >= self.den

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LeakageValue):
            return self.num * other.den == other.num * self.den
        if isinstance(other, int) and not isinstance(other, bool):
            # integer bits: log2(num/den) == k
            if other >= 0:
                return self.num == self.den * (1 << other)
            return self.num * (1 << -other) == self.den
        return NotImplemented

    def __lt__(self, other: object) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            other = LeakageValue.of(Fraction(2) ** other)
        if not isinstance(other, LeakageValue):
            return NotImplemented
        return self.num * other.den < other.num * self.den

    def __hash__(self) -> int:
        # consistent with equality against integer bit counts
        r = self.ratio
        for part in (r.numerator, r.denominator):
            if part & (part - 1):
                return hash(r)
        return hash(r.numerator.bit_length() - r.denominator.bit_length())

    def __add__(self, other: LeakageValue) -> LeakageValue:
        return LeakageValue(self.num * other.num, self.den * other.den)

    def __sub__(self, other: LeakageValue) -> LeakageValue:
        return LeakageValue(self.num * other.den, self.den * other.num)

    def __float__(self) -> float:
        return _log2_int(self.num) - _log2_int(self.den)

    def __str__(self) -> str:
        r = self.ratio
        return f"log2({r.numerator}/{r.denominator})"

    def __repr__(self) -> str:
        return f"LeakageValue({self.num}, {self.den})"

    def decimal(self) -> str:
        return render_decimal(float(self))


def _compare_exp2_rational(eps: Fraction, x: Fraction) -> int:
    """Sign of ``2**eps - x`` for rational ``eps`` and positive rational ``x``."""
    a, b = eps.numerator, eps.denominator
    c, d = x.numerator, x.denominator
    if b == 1:
        lhs = Fraction(2) ** a
        return (lhs > x) - (lhs < x)
    # 2**(a/b) is irrational here, so the comparison is never an equality.
    if b * max(c.bit_length(), d.bit_length(), abs(a)) <= 1 << 16:
        left = (1 << a) * d**b if a >= 0 else d**b
        right = c**b if a >= 0 else c**b * (1 << -a)
        return (left > right) - (left < right)
    return _compare_exp2_bracketed(eps, x)


def _compare_exp2_bracketed(eps: Fraction, x: Fraction, max_prec: int = 1 << 16) -> int:
    prec = 64
    while prec <= max_prec:
        with mpmath.workprec(prec):
            e = mpmath.iv.mpf(eps.numerator) / eps.denominator
            diff = mpmath.iv.exp(e * mpmath.iv.log(2)) - mpmath.iv.mpf(x.numerator) / x.denominator
            if diff.a > 0:
                return 1
            if diff.b < 0:
                return -1
        prec *= 2
    raise ArithmeticError(f"could not separate 2**{eps} from {x} at {max_prec} bits")


@dataclass(frozen=True)
class PrivacyBudget:
    """A positive budget ``epsilon``, either rational or of the form ``log2(p/q)``.

    Exactly one of ``epsilon`` and ``log_ratio`` is set. Comparisons against
    ``2**epsilon`` are exact in both cases.
    """

    epsilon: Fraction | None = None
    log_ratio: Fraction | None = None

    def __post_init__(self) -> None:
        if (self.epsilon is None) == (self.log_ratio is None):
            raise InputError("give exactly one of epsilon and log_ratio")
        if self.epsilon is not None and self.epsilon <= 0:
            raise InputError(f"privacy budget must be positive, got {self.epsilon}")
        if self.log_ratio is not None and self.log_ratio <= 1:
            raise InputError(f"privacy budget must be positive, got log2({self.log_ratio})")

    @classmethod
    def rational(cls, eps: Fraction | int | str) -> PrivacyBudget:
        return cls(epsilon=parse_fraction(eps))

    @classmethod
    def log2_of(cls, ratio: Fraction | int | str) -> PrivacyBudget:
        return cls(log_ratio=parse_fraction(ratio))

    @classmethod
    def parse(cls, text: str) -> PrivacyBudget:
        """Accepts ``"1/2"``, ``"0.5"`` or ``"log2(3/2)"``."""
        m = _LOG_RE.match(text)
        if m:
            return cls.log2_of(Fraction(int(m.group(1)), int(m.group(2) or 1)))
        return cls.rational(text)

    def compare_exp2(self, x: Fraction) -> int:
        """Sign of ``2**epsilon - x`` (``x > 0``)."""
        x = Fraction(x)
        if self.log_ratio is not None:
            return (self.log_ratio > x) - (self.log_ratio < x)
        return _compare_exp2_rational(self.epsilon, x)

    def __float__(self) -> float:
        if self.log_ratio is not None:
            return math.log2(self.log_ratio.numerator) - math.log2(self.log_ratio.denominator)
        return float(self.epsilon)

    def __str__(self) -> str:
        if self.log_ratio is not None:
            return str(LeakageValue.of(self.log_ratio))
        return str(self.epsilon)


@dataclass(frozen=True)
class IdentifiabilityCeiling:
    """The ceiling ``log2(size * (1 - 2**-epsilon) + 1)`` on maximal leakage."""

    size: int
    budget: PrivacyBudget

    def exact(self) -> LeakageValue | None:
        """Exact value when the budget is a log-ratio, else None."""
        r = self.budget.log_ratio
        if r is None:
            return None
        return LeakageValue.of(self.size * (1 - 1 / r) + 1)

    def compare(self, value: LeakageValue) -> int:
        """Sign of ``ceiling - value``, decided exactly."""
        # log2(k) <= log2(n(1 - 2^-e) + 1)  <=>  n - k + 1 >= n 2^-e
        k = value.ratio
        slack = self.size - k + 1
        if slack <= 0:
            return -1
        return self.budget.compare_exp2(Fraction(self.size) / slack)

    def dominates(self, value: LeakageValue) -> bool:
        return self.compare(value) >= 0

    def __float__(self) -> float:
        return math.log2(self.size * (1 - 2.0 ** -float(self.budget)) + 1)

    def __str__(self) -> str:
        ex = self.exact()
        if ex is not None:
            return str(ex)
        return f"log2({self.size}*(1-2^-({self.budget}))+1)"

    def decimal(self) -> str:
        return render_decimal(float(self))
