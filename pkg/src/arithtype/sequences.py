"""Arithmetic sequences, their ratio streams, and arithmetic-type multiplier schedules.

An arithmetic sequence ``a_0 = 1 < a_1 < a_2 < ...`` with ``a_n | a_{n+1}`` is given by
its ratios ``q_n = a_n / a_{n-1}``: an explicit prefix followed by a structured tail.
A :class:`MultiplierSchedule` picks, for every block ``k``, a multiplier set
``R_k`` with ``1 in R_k`` and ``R_k`` inside ``[1, q_k - 1]``; flattening
``r * a_{k-1}`` over blocks gives the arithmetic-type sequence ``(e_n)``.

Flat indices start at 1; block ``k`` occupies ``[n_{k-1} + 1, n_k]`` with ``n_0 = 0``.
"""

from __future__ import annotations

import enum
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence, Union

__all__ = [
    "Constant",
    "Periodic",
    "Affine",
    "RatioStream",
    "Full",
    "BaseOnly",
    "GapThird",
    "Explicit",
    "MultiplierSchedule",
    "IndexSet",
    "ExplicitSet",
    "BlockSparse",
    "Shifted",
    "QClass",
    "Classification",
    "classify",
    "block_cover",
    "minimal_blocks",
    "characterizing_schedule",
]


# ---------------------------------------------------------------------------
# ratio tails


@dataclass(frozen=True)
class Constant:
    value: int

    def at(self, j: int) -> int:
        return self.value

    def describe(self) -> str:
        return f"constant {self.value}"


@dataclass(frozen=True)
class Periodic:
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if not self.values:
            raise ValueError("periodic tail needs at least one value")

    def at(self, j: int) -> int:
        return self.values[(j - 1) % len(self.values)]

    def describe(self) -> str:
        return "periodic " + ",".join(map(str, self.values))


@dataclass(frozen=True)
class Affine:
    """``q_k = slope * k + offset`` for ``k`` past the prefix."""

    slope: int
    offset: int

    def describe(self) -> str:
        return f"affine {self.slope},{self.offset}"


Tail = Union[Constant, Periodic, Affine]


@dataclass(frozen=True)
class RatioStream:
    """Ratios ``q_1, q_2, ...`` of an arithmetic sequence.

    >>> s = RatioStream((), Affine(1, 1))
    >>> [s.term(n) for n in range(5)]
    [1, 2, 6, 24, 120]
    """

    prefix: tuple[int, ...]
    tail: Tail
    _terms: list = field(default_factory=lambda: [1], init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(int(q) for q in self.prefix))
        for i, q in enumerate(self.prefix, 1):
            if q < 2:
                raise ValueError(f"ratio q_{i} = {q} < 2")
        t = self.tail
        if isinstance(t, Constant):
            if t.value < 2:
                raise ValueError(f"constant tail value {t.value} < 2")
        elif isinstance(t, Periodic):
            if min(t.values) < 2:
                raise ValueError(f"periodic tail has a value < 2: {t.values}")
        elif isinstance(t, Affine):
            if t.slope < 0:
                raise ValueError("affine tail needs slope >= 0")
            if t.slope * (len(self.prefix) + 1) + t.offset < 2:
                raise ValueError("affine tail produces a ratio < 2")
        else:
            raise TypeError(f"unknown tail {t!r}")

    @property
    def m(self) -> int:
        return len(self.prefix)

    @property
    def bounded(self) -> bool:
        """True when the tail ratios are bounded (constant, periodic, or flat affine)."""
        return not (isinstance(self.tail, Affine) and self.tail.slope >= 1)

    @property
    def period(self) -> int:
        """Tail period for bounded tails (1 for constant)."""
        if isinstance(self.tail, Periodic):
            return len(self.tail.values)
        return 1

    def phase(self, n: int) -> int:
        """Position of index ``n > m`` inside the tail period."""
        return (n - self.m - 1) % self.period

    def ratio(self, n: int) -> int:
        if n < 1:
            raise ValueError(f"ratio index must be >= 1, got {n}")
        if n <= self.m:
            return self.prefix[n - 1]
        t = self.tail
        if isinstance(t, Affine):
            return t.slope * n + t.offset
        return t.at(n - self.m)

    def ratios(self, start: int, stop: int) -> list[int]:
        """``[q_start, ..., q_stop]`` inclusive."""
        return [self.ratio(n) for n in range(start, stop + 1)]

    def term(self, n: int) -> int:
        """``a_n``, with ``a_0 = 1``."""
        if n < 0:
            raise ValueError(f"term index must be >= 0, got {n}")
        terms = self._terms
        while len(terms) <= n:
            terms.append(terms[-1] * self.ratio(len(terms)))
        return terms[n]

    def describe(self) -> str:
        pre = ",".join(map(str, self.prefix)) or "-"
        return f"prefix {pre}; tail {self.tail.describe()}"


# ---------------------------------------------------------------------------
# multiplier rules


@dataclass(frozen=True)
class Full:
    """All multipliers ``1 .. q_k - 1``; flattening gives ``(d_n)``."""

    def multipliers(self, k: int, q: int) -> tuple[int, ...]:
        return tuple(range(1, q))

    def size(self, k: int, q: int) -> int:
        return q - 1

    def describe(self) -> str:
        return "full"


@dataclass(frozen=True)
class BaseOnly:
    """Only ``r = 1``; flattening gives ``(a_{k-1})``."""

    def multipliers(self, k: int, q: int) -> tuple[int, ...]:
        return (1,)

    def size(self, k: int, q: int) -> int:
        return 1

    def describe(self) -> str:
        return "base"


@dataclass(frozen=True)
class GapThird:
    """``{1} | [floor(q_k/3) + 1, q_k - 1]``."""

    def multipliers(self, k: int, q: int) -> tuple[int, ...]:
        lo = max(q // 3 + 1, 2)
        return (1,) + tuple(range(lo, q))

    def size(self, k: int, q: int) -> int:
        return 1 + max(0, q - max(q // 3 + 1, 2))

    def describe(self) -> str:
        return "gap-third"


@dataclass(frozen=True)
class Explicit:
    """Per-block multiplier lists; blocks missing from ``table`` fall back to ``default``."""

    table: Mapping[int, tuple[int, ...]]
    default: Union[Full, BaseOnly, GapThird, None] = None

    def __post_init__(self):
        frozen = {int(k): tuple(sorted(set(int(r) for r in v))) for k, v in dict(self.table).items()}
        object.__setattr__(self, "table", _FrozenDict(frozen))

    def multipliers(self, k: int, q: int) -> tuple[int, ...]:
        rs = self.table.get(k)
        if rs is None:
            if self.default is None:
                raise LookupError(f"explicit schedule has no multipliers for block {k}")
            return self.default.multipliers(k, q)
        return rs

    def size(self, k: int, q: int) -> int:
        rs = self.table.get(k)
        if rs is None:
            if self.default is None:
                raise LookupError(f"explicit schedule has no multipliers for block {k}")
            return self.default.size(k, q)
        return len(rs)

    def describe(self) -> str:
        s = "explicit"
        if self.default is not None:
            s += f" (default {self.default.describe()})"
        return s


class _FrozenDict(dict):
    def __hash__(self):
        return hash(tuple(sorted(self.items())))

    def _readonly(self, *a, **kw):
        raise TypeError("read-only mapping")

    __setitem__ = __delitem__ = update = pop = popitem = clear = setdefault = _readonly


Rule = Union[Full, BaseOnly, GapThird, Explicit]


@dataclass(frozen=True)
class MultiplierSchedule:
    base: RatioStream
    rule: Rule
    _ends: list = field(default_factory=lambda: [0], init=False, repr=False, compare=False, hash=False)

    def multipliers(self, k: int) -> tuple[int, ...]:
        """Sorted ``R_k``; validated against ``[1, q_k - 1]``."""
        q = self.base.ratio(k)
        rs = self.rule.multipliers(k, q)
        if not rs or rs[0] != 1:
            raise ValueError(f"block {k}: multiplier set must contain 1, got {rs}")
        if rs[-1] > q - 1:
            raise ValueError(f"block {k}: multiplier {rs[-1]} outside [1, {q - 1}]")
        return rs

    def block_size(self, k: int) -> int:
        return self.rule.size(k, self.base.ratio(k))

    def block_end(self, k: int) -> int:
        """``n_k``: number of flat terms in blocks ``1..k``."""
        ends = self._ends
        while len(ends) <= k:
            ends.append(ends[-1] + self.block_size(len(ends)))
        return ends[k]

    def block_start(self, k: int) -> int:
        """Flat index of ``a_{k-1}`` (first term of block ``k``)."""
        return self.block_end(k - 1) + 1

    def block_of(self, n: int) -> tuple[int, int]:
        """``(k, i)`` with ``e_n = R_k[i-1] * a_{k-1}``."""
        if n < 1:
            raise ValueError(f"flat index must be >= 1, got {n}")
        ends = self._ends
        while ends[-1] < n:
            self.block_end(len(ends))
        k = bisect_left(ends, n)
        return k, n - ends[k - 1]

    def flat_term(self, n: int) -> int:
        k, i = self.block_of(n)
        return self.multipliers(k)[i - 1] * self.base.term(k - 1)

    def terms(self, count: int) -> list[int]:
        """First ``count`` flattened terms."""
        out: list[int] = []
        k = 1
        while len(out) < count:
            a = self.base.term(k - 1)
            out.extend(r * a for r in self.multipliers(k))
            k += 1
        return out[:count]

    def describe(self) -> str:
        return f"{self.rule.describe()} over {self.base.describe()}"


# ---------------------------------------------------------------------------
# index sets


class IndexSet:
    """A set of positive integers, known exactly on ``[1, horizon]``."""

    horizon: int
    infinite: bool

    def __contains__(self, n: int) -> bool:  # pragma: no cover - abstract
        raise NotImplementedError

    def members(self, lo: int = 1, hi: int | None = None) -> list[int]:
        hi = self.horizon if hi is None else hi
        return [n for n in range(max(lo, 1), hi + 1) if n in self]

    def shift(self, offset: int) -> "Shifted":
        return Shifted(self, offset)


@dataclass(frozen=True)
class ExplicitSet(IndexSet):
    elements: tuple[int, ...]

    def __post_init__(self):
        els = tuple(int(n) for n in self.elements)
        if any(n < 1 for n in els):
            raise ValueError("index sets hold positive integers only")
        if any(a >= b for a, b in zip(els, els[1:])):
            raise ValueError("explicit index set must be strictly increasing")
        object.__setattr__(self, "elements", els)
        object.__setattr__(self, "_set", frozenset(els))

    @classmethod
    def of(cls, items: Iterable[int]) -> "ExplicitSet":
        return cls(tuple(sorted(set(items))))

    @property
    def horizon(self) -> int:
        return self.elements[-1] if self.elements else 0

    infinite = False

    def __contains__(self, n: int) -> bool:
        return n in self._set

    def members(self, lo: int = 1, hi: int | None = None) -> list[int]:
        hi = self.horizon if hi is None else hi
        return [n for n in self.elements if lo <= n <= hi]

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class BlockSparse(IndexSet):
    """An infinite set given by a membership predicate, trusted up to ``horizon``."""

    predicate: Callable[[int], bool]
    horizon: int
    label: str = ""
    infinite: bool = True

    def __contains__(self, n: int) -> bool:
        return n >= 1 and bool(self.predicate(n))


@dataclass(frozen=True)
class Shifted(IndexSet):
    inner: IndexSet
    offset: int

    @property
    def horizon(self) -> int:
        return self.inner.horizon + self.offset

    @property
    def infinite(self) -> bool:
        return self.inner.infinite

    def __contains__(self, n: int) -> bool:
        return n >= 1 and (n - self.offset) in self.inner

    def members(self, lo: int = 1, hi: int | None = None) -> list[int]:
        hi = self.horizon if hi is None else hi
        return [n + self.offset for n in self.inner.members(lo - self.offset, hi - self.offset)
                if n + self.offset >= max(lo, 1)]


# ---------------------------------------------------------------------------
# classification


class QClass(enum.Enum):
    Q_BOUNDED = "q-bounded"
    Q_DIVERGENT = "q-divergent"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Classification:
    kind: QClass
    min_ratio: int | None
    max_ratio: int | None

    @property
    def decisive(self) -> bool:
        return self.kind is not QClass.INCONCLUSIVE


def classify(A: IndexSet, s: RatioStream, horizon: int) -> Classification:
    """q-bounded / q-divergent classification of ``A`` relative to ``s``.

    Exact whenever the ratio tail decides it: a bounded tail bounds every set, an
    affine tail with positive slope sends every infinite set to infinity. Finite
    sets under a growing tail stay inconclusive.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    observed = [s.ratio(n) for n in A.members(1, horizon)]
    lo = min(observed) if observed else None
    hi = max(observed) if observed else None
    if s.bounded:
        kind = QClass.Q_BOUNDED
    elif A.infinite:
        kind = QClass.Q_DIVERGENT
    else:
        kind = QClass.INCONCLUSIVE
    return Classification(kind, lo, hi)


def block_cover(m: MultiplierSchedule, A: IndexSet) -> IndexSet:
    """``L(A)``: flat indices of every block listed in ``A``."""
    if isinstance(A, ExplicitSet):
        out: list[int] = []
        for k in A.elements:
            out.extend(range(m.block_start(k), m.block_end(k) + 1))
        return ExplicitSet(tuple(out))
    horizon = m.block_end(max(A.horizon, 0))
    return BlockSparse(lambda n: m.block_of(n)[0] in A, horizon, label="L(A)", infinite=A.infinite)


def minimal_blocks(m: MultiplierSchedule, flat: Iterable[int]) -> ExplicitSet:
    """Smallest block set whose cover contains the given flat indices."""
    return ExplicitSet.of(m.block_of(n)[0] for n in flat)


def characterizing_schedule(orders: Sequence[int], tail: Tail | None = None) -> MultiplierSchedule:
    """Full schedule over the ratios of a strictly dividing chain of cyclic orders.

    ``tail`` continues the chain past its last element; by default the chain's own
    ratios repeat, which keeps the flattened consecutive ratio at most 2.
    """
    orders = [int(a) for a in orders]
    if not orders:
        raise ValueError("need at least one order")
    prev = 1
    ratios = []
    for a in orders:
        if a <= prev or a % prev:
            raise ValueError(f"order {a} is not a proper multiple of {prev}")
        ratios.append(a // prev)
        prev = a
    if tail is None:
        tail = Periodic(tuple(ratios))
    return MultiplierSchedule(RatioStream(tuple(ratios), tail), Full())
