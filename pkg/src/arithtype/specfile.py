"""Text formats: sequence-spec documents and digit lists.

Sequence spec (one schedule per document)::

    # factorial ratios, all multipliers
    ratios.prefix: 2, 3
    ratios.tail: affine 1, 1        # constant c | periodic v1,v2,... | affine a,b
    multipliers: full               # full | base | gap-third | explicit

With ``multipliers: explicit`` the following ``k: r1, r2, ...`` lines list the
multipliers of block ``k``; an optional ``multipliers.default: full|base|gap-third``
covers blocks that are not listed. Every ``q`` must be at least 2 and every
multiplier must lie in ``[1, q_k - 1]`` with ``1`` present.

Digit list::

    digits: 0, 1, 0, 1
    tail: periodic 0, 1             # zero | periodic c1,c2,...
"""

from __future__ import annotations

import re
from pathlib import Path

from .digits import DigitExpansion, PeriodicTail, ZeroTail
from .sequences import (
    Affine,
    BaseOnly,
    Constant,
    Explicit,
    Full,
    GapThird,
    MultiplierSchedule,
    Periodic,
    RatioStream,
)

__all__ = ["SpecError", "parse_schedule", "load_schedule", "format_schedule", "parse_digits", "format_digits"]

_RULES = {"full": Full, "base": BaseOnly, "gap-third": GapThird}


class SpecError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _ints(text: str, line: int) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(t) for t in re.split(r"[,\s]+", text) if t]
    except ValueError:
        raise SpecError(line, f"expected a comma-separated integer list, got {text!r}") from None


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def parse_schedule(text: str) -> MultiplierSchedule:
    prefix: list[int] = []
    prefix_line = 0
    tail = None
    tail_line = 0
    rule_name = None
    default = None
    explicit: dict[int, tuple[int, list[int]]] = {}
    for no, line in _lines(text):
        key, sep, value = line.partition(":")
        key = key.strip()
        if not sep:
            raise SpecError(no, f"expected 'key: value', got {line!r}")
        if key == "ratios.prefix":
            prefix, prefix_line = _ints(value, no), no
            bad = [q for q in prefix if q < 2]
            if bad:
                raise SpecError(no, f"ratio {bad[0]} < 2")
        elif key == "ratios.tail":
            tail, tail_line = _parse_tail(value, no), no
        elif key == "multipliers":
            rule_name = value.strip()
            if rule_name not in _RULES and rule_name != "explicit":
                raise SpecError(no, f"unknown multiplier rule {rule_name!r}")
        elif key == "multipliers.default":
            name = value.strip()
            if name not in _RULES:
                raise SpecError(no, f"unknown default rule {name!r}")
            default = _RULES[name]()
        elif key.isdigit():
            if rule_name != "explicit":
                raise SpecError(no, "block multiplier lines need 'multipliers: explicit' first")
            k = int(key)
            if k < 1 or k in explicit:
                raise SpecError(no, f"invalid or repeated block {k}")
            explicit[k] = (no, _ints(value, no))
        else:
            raise SpecError(no, f"unknown key {key!r}")
    if tail is None:
        raise SpecError(tail_line or prefix_line or 1, "missing ratios.tail")
    if rule_name is None:
        raise SpecError(1, "missing multipliers")
    try:
        stream = RatioStream(tuple(prefix), tail)
    except ValueError as exc:
        raise SpecError(tail_line, str(exc)) from None
    if rule_name != "explicit":
        return MultiplierSchedule(stream, _RULES[rule_name]())
    table = {}
    for k, (no, rs) in explicit.items():
        q = stream.ratio(k)
        bad = [r for r in rs if not 1 <= r <= q - 1]
        if bad:
            raise SpecError(no, f"multiplier {bad[0]} outside [1, {q - 1}] for block {k}")
        if 1 not in rs:
            raise SpecError(no, f"block {k} must contain the multiplier 1")
        table[k] = tuple(rs)
    return MultiplierSchedule(stream, Explicit(table, default))


def _parse_tail(value: str, no: int):
    kind, _, rest = value.strip().partition(" ")
    nums = _ints(rest, no)
    if kind == "constant" and len(nums) == 1:
        if nums[0] < 2:
            raise SpecError(no, f"ratio {nums[0]} < 2")
        return Constant(nums[0])
    if kind == "periodic" and nums:
        bad = [q for q in nums if q < 2]
        if bad:
            raise SpecError(no, f"ratio {bad[0]} < 2")
        return Periodic(tuple(nums))
    if kind == "affine" and len(nums) == 2:
        return Affine(nums[0], nums[1])
    raise SpecError(no, f"bad tail {value.strip()!r}; expected constant c | periodic v,... | affine a,b")


def load_schedule(path: str | Path) -> MultiplierSchedule:
    return parse_schedule(Path(path).read_text())


def format_schedule(m: MultiplierSchedule) -> str:
    s = m.base
    lines = [f"ratios.prefix: {', '.join(map(str, s.prefix))}".rstrip(), f"ratios.tail: {s.tail.describe()}"]
    rule = m.rule
    if isinstance(rule, Explicit):
        lines.append("multipliers: explicit")
        if rule.default is not None:
            lines.append(f"multipliers.default: {rule.default.describe()}")
        lines += [f"{k}: {', '.join(map(str, rs))}" for k, rs in sorted(rule.table.items())]
    else:
        lines.append(f"multipliers: {rule.describe()}")
    return "\n".join(lines) + "\n"


def parse_digits(text: str, base: RatioStream) -> DigitExpansion:
    window: list[int] = []
    tail = ZeroTail()
    for no, line in _lines(text):
        key, _, value = line.partition(":")
        key = key.strip()
        if key == "digits":
            window = _ints(value, no)
            for n, c in enumerate(window, 1):
                q = base.ratio(n)
                if not 0 <= c <= q - 1:
                    raise SpecError(no, f"digit c_{n} = {c} outside [0, {q - 1}]")
        elif key == "tail":
            v = value.strip()
            if v == "zero":
                tail = ZeroTail()
            elif v.startswith("periodic"):
                tail = PeriodicTail(tuple(_ints(v[len("periodic"):], no)))
            else:
                raise SpecError(no, f"bad digit tail {v!r}")
        else:
            raise SpecError(no, f"unknown key {key!r}")
    return DigitExpansion(base, tuple(window), tail)


def format_digits(d: DigitExpansion) -> str:
    return f"digits: {','.join(map(str, d.window))}\ntail: {d.tail.describe()}\n"
