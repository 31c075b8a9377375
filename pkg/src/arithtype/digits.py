"""Canonical mixed-radix expansions ``x = sum c_n / a_n`` relative to a ratio stream."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable, Union

from .circle import CirclePoint, frac
from .sequences import BlockSparse, ExplicitSet, IndexSet, RatioStream

__all__ = [
    "ZeroTail",
    "PeriodicTail",
    "PrescribedTail",
    "UnknownTail",
    "DigitExpansion",
    "TailUnknownError",
    "to_digits",
    "from_digits",
    "supp",
    "supp_q",
    "frac_recursion",
    "tail_bound_check",
]


class TailUnknownError(LookupError):
    """Raised when a digit past the known part of an expansion is requested."""


@dataclass(frozen=True)
class ZeroTail:
    def describe(self) -> str:
        return "zero"


@dataclass(frozen=True)
class PeriodicTail:
    """Digits after the window repeat ``digits``, starting at window length + 1."""

    digits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(int(c) for c in self.digits))
        if not self.digits:
            raise ValueError("periodic digit tail cannot be empty")

    def describe(self) -> str:
        return "periodic " + ",".join(map(str, self.digits))


@dataclass(frozen=True)
class PrescribedTail:
    """Digits given by ``rule(n, q_n)`` for every ``n`` up to ``horizon``."""

    rule: Callable[[int, int], int]
    horizon: int
    infinite_support: bool = True
    label: str = ""

    def describe(self) -> str:
        return f"prescribed {self.label or 'rule'} (to {self.horizon})"


@dataclass(frozen=True)
class UnknownTail:
    def describe(self) -> str:
        return "unknown"


DigitTail = Union[ZeroTail, PeriodicTail, PrescribedTail, UnknownTail]


@dataclass(frozen=True)
class DigitExpansion:
    base: RatioStream
    window: tuple[int, ...]
    tail: DigitTail = ZeroTail()

    def __post_init__(self):
        object.__setattr__(self, "window", tuple(int(c) for c in self.window))
        for n, c in enumerate(self.window, 1):
            q = self.base.ratio(n)
            if not 0 <= c <= q - 1:
                raise ValueError(f"digit c_{n} = {c} outside [0, {q - 1}]")

    @property
    def known_until(self) -> int | None:
        """Last index with a known digit, or None if every digit is known."""
        t = self.tail
        if isinstance(t, (ZeroTail, PeriodicTail)):
            return None
        if isinstance(t, PrescribedTail):
            return max(t.horizon, len(self.window))
        return len(self.window)

    def require(self, n: int) -> None:
        k = self.known_until
        if k is not None and n > k:
            raise TailUnknownError(f"digit c_{n} requested but expansion is only known to index {k}; "
                                   "use a larger window")

    def digit(self, n: int) -> int:
        if n < 1:
            raise ValueError("digit indices start at 1")
        N = len(self.window)
        if n <= N:
            return self.window[n - 1]
        t = self.tail
        if isinstance(t, ZeroTail):
            return 0
        self.require(n)
        if isinstance(t, PeriodicTail):
            c = t.digits[(n - N - 1) % len(t.digits)]
        else:
            c = int(t.rule(n, self.base.ratio(n)))
        q = self.base.ratio(n)
        if not 0 <= c <= q - 1:
            raise ValueError(f"digit c_{n} = {c} outside [0, {q - 1}]")
        return c

    def digits(self, lo: int, hi: int) -> list[int]:
        return [self.digit(n) for n in range(lo, hi + 1)]

    def is_canonical(self, horizon: int | None = None) -> bool:
        """``c_n < q_n - 1`` infinitely often; for prescribed tails only checked on the upper half of the horizon."""
        t = self.tail
        N = len(self.window)
        if isinstance(t, ZeroTail):
            return True
        if isinstance(t, PeriodicTail):
            s = self.base
            if not s.bounded:
                return True
            start = max(N, s.m) + 1
            span = lcm(len(t.digits), s.period)
            return any(self.digit(n) < s.ratio(n) - 1 for n in range(start, start + span))
        if isinstance(t, PrescribedTail):
            h = t.horizon if horizon is None else min(horizon, t.horizon)
            return any(self.digit(n) < self.base.ratio(n) - 1 for n in range(max(h // 2, N + 1, 1), h + 1))
        raise TailUnknownError("canonicity of an unknown tail cannot be decided")

    def truncate(self, N: int) -> "DigitExpansion":
        """Finite expansion keeping ``c_1..c_N``."""
        return DigitExpansion(self.base, tuple(self.digits(1, N)), ZeroTail())


def _greedy(x: CirclePoint, s: RatioStream, N: int) -> tuple[list[int], int]:
    q = x.denominator
    state = x.numerator % q
    digits = []
    for n in range(1, N + 1):
        c, state = divmod(s.ratio(n) * state, q)
        digits.append(c)
    return digits, state


def to_digits(x: CirclePoint, s: RatioStream, N: int) -> DigitExpansion:
    """Greedy digits ``c_n = floor(q_n {a_{n-1} x})`` via the state ``a_{n-1} p mod q``.

    The window covers at least ``c_1..c_N``; it is lengthened only when a bounded
    ratio tail needs a pre-period before the digit cycle starts.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    q = x.denominator
    digits, state = _greedy(x, s, N)
    if state == 0:
        return DigitExpansion(s, tuple(digits), ZeroTail())
    if not s.bounded:
        return DigitExpansion(s, tuple(digits), UnknownTail())

    seen: dict[tuple[int, int], int] = {}
    n = N + 1
    while True:
        if n > s.m:
            key = (state, s.phase(n))
            if key in seen:
                break
            seen[key] = n
        qn = s.ratio(n)
        c, state = divmod(qn * state, q)
        digits.append(c)
        n += 1
    start = seen[key]
    cycle = tuple(digits[start - 1:n - 1])
    window = tuple(digits[:start - 1])
    if not any(cycle):
        return DigitExpansion(s, window, ZeroTail())
    return DigitExpansion(s, window, PeriodicTail(cycle))


def from_digits(d: DigitExpansion) -> CirclePoint:
    """Exact value of a finite expansion."""
    if not isinstance(d.tail, ZeroTail):
        raise ValueError(f"from_digits needs a zero tail, got {d.tail.describe()}")
    num = 0
    for n, c in enumerate(d.window, 1):
        num = num * d.base.ratio(n) + c
    return frac(Fraction(num, d.base.term(len(d.window))))


def _index_set(d: DigitExpansion, pred: Callable[[int], bool], horizon: int, infinite: bool, label: str) -> IndexSet:
    if isinstance(d.tail, ZeroTail):
        return ExplicitSet(tuple(n for n in range(1, len(d.window) + 1) if pred(n)))
    d.require(horizon)
    if not infinite:
        return ExplicitSet(tuple(n for n in range(1, horizon + 1) if pred(n)))
    return BlockSparse(pred, horizon, label=label)


def supp(d: DigitExpansion, horizon: int) -> IndexSet:
    """``{n : c_n != 0}``."""
    t = d.tail
    if isinstance(t, PeriodicTail):
        infinite = any(t.digits)
    elif isinstance(t, PrescribedTail):
        infinite = t.infinite_support
    else:
        infinite = False
    return _index_set(d, lambda n: d.digit(n) != 0, horizon, infinite, "supp")


def supp_q(d: DigitExpansion, horizon: int) -> IndexSet:
    """``{n : c_n = q_n - 1}``.

    Infinite for a periodic tail when some aligned position is maximal; for a
    prescribed tail, when a maximal digit occurs in the upper half of the horizon.
    """
    s = d.base

    def maximal(n: int) -> bool:
        return d.digit(n) == s.ratio(n) - 1

    t = d.tail
    N = len(d.window)
    if isinstance(t, PeriodicTail) and s.bounded:
        start = max(N, s.m) + 1
        infinite = any(maximal(n) for n in range(start, start + lcm(len(t.digits), s.period)))
    elif isinstance(t, PrescribedTail):
        d.require(horizon)
        infinite = any(maximal(n) for n in range(max(horizon // 2, 1), horizon + 1))
    else:
        infinite = False
    return _index_set(d, maximal, horizon, infinite, "supp^q")


def frac_recursion(x: CirclePoint, s: RatioStream, n: int, t: int) -> Fraction:
    """Right-hand side of ``{a_{n-1}x} = c_n/q_n + ... + c_{n+t}/(q_n...q_{n+t}) + {a_{n+t}x}/(q_n...q_{n+t})``."""
    if n < 2 or t < 0:
        raise ValueError("need n >= 2 and t >= 0")
    digits, _ = _greedy(x, s, n + t)
    denom = 1
    total = Fraction(0)
    for j in range(n, n + t + 1):
        denom *= s.ratio(j)
        total += Fraction(digits[j - 1], denom)
    rest = frac(s.term(n + t) * x.as_fraction()).as_fraction()
    return total + rest / denom


def tail_bound_check(d: DigitExpansion, j: int) -> tuple[Fraction, Fraction]:
    """``(sum_{i>=j} c_i/a_i, 1/a_{j-1})`` for a finite expansion."""
    if not isinstance(d.tail, ZeroTail):
        raise ValueError("tail bound check needs a finite (zero-tail) expansion")
    if j < 1:
        raise ValueError("j must be >= 1")
    s = d.base
    total = sum((Fraction(d.window[i - 1], s.term(i)) for i in range(j, len(d.window) + 1)), Fraction(0))
    return total, Fraction(1, s.term(j - 1))
