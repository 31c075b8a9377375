"""Exact rational points of the circle group R/Z."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Union

__all__ = ["CirclePoint", "frac", "norm", "scale_norm", "int_norm", "parse_rational"]

Rational = Union[int, Fraction]


@dataclass(frozen=True, order=True)
class CirclePoint:
    """A reduced fraction ``numerator / denominator`` in ``[0, 1)``."""

    numerator: int
    denominator: int

    def __post_init__(self):
        p, q = self.numerator, self.denominator
        if q < 1:
            raise ValueError(f"denominator must be positive, got {q}")
        if not 0 <= p < q:
            raise ValueError(f"numerator {p} outside [0, {q})")
        if gcd(p, q) != 1 and not (p == 0 and q == 1):
            raise ValueError(f"{p}/{q} is not reduced")

    @classmethod
    def of(cls, p: int, q: int) -> "CirclePoint":
        """Reduce ``p/q`` modulo 1."""
        return frac(Fraction(p, q))

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


def frac(r: Rational) -> CirclePoint:
    """Fractional part ``r - floor(r)``."""
    r = Fraction(r)
    p = r.numerator % r.denominator
    return CirclePoint(p, r.denominator if p else 1)


def int_norm(p: int, q: int) -> int:
    """Numerator of ``||p/q||`` over ``q`` (no reduction)."""
    p %= q
    return min(p, q - p)


def norm(x: Union[CirclePoint, Rational]) -> Fraction:
    """Distance to the nearest integer, ``min({x}, 1 - {x})``; always in ``[0, 1/2]``."""
    if not isinstance(x, CirclePoint):
        x = frac(x)
    return Fraction(int_norm(x.numerator, x.denominator), x.denominator)


def scale_norm(r: int, x: CirclePoint) -> Fraction:
    """``||r x||`` evaluated directly."""
    return Fraction(int_norm(r * x.numerator, x.denominator), x.denominator)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or an integer; rejects floats."""
    text = text.strip()
    if "/" in text:
        a, b = text.split("/", 1)
        return Fraction(int(a), int(b))
    return Fraction(int(text))
