"""Witness constructions: boundary sets, folded witnesses, subset families, and
the adversarial multipliers that rule out infinite-support members under the
gap-third schedule.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence, Union

import numpy as np

from .circle import int_norm, norm
from .digits import DigitExpansion, PrescribedTail, ZeroTail, supp, supp_q
from .membership import DEFAULT_TOLERANCE, ConditionReport, check_conditions
from .sequences import BlockSparse, ExplicitSet, IndexSet, MultiplierSchedule, QClass, classify

__all__ = [
    "boundary_set",
    "nonq_set",
    "is_cofinite",
    "WitnessCase",
    "WitnessRecipe",
    "HypothesisError",
    "thinned_nonq_set",
    "fold_witness",
    "subset_family",
    "family_member",
    "DichotomyCase",
    "CertificateBound",
    "adversarial_multiplier",
    "sweep_certificates",
    "check_family",
]


class HypothesisError(ValueError):
    """A construction's hypotheses fail on the checked horizon."""


def _as_set(pred: Callable[[int], bool], horizon: int, infinite: bool, label: str) -> IndexSet:
    if infinite:
        return BlockSparse(pred, horizon, label=label)
    return ExplicitSet(tuple(n for n in range(1, horizon + 1) if pred(n)))


def boundary_set(d: DigitExpansion, horizon: int) -> IndexSet:
    """``supp(x) \\ (supp(x) - 1)``: support indices whose successor is outside the support."""
    sp = supp(d, horizon + 1)
    if isinstance(sp, ExplicitSet):
        return ExplicitSet(tuple(n for n in sp.elements if n + 1 not in sp))

    def pred(n: int) -> bool:
        return n in sp and n + 1 not in sp

    upper = range(max(horizon // 2, 1), horizon + 1)
    return _as_set(pred, horizon, any(pred(n) for n in upper), "boundary")


def nonq_set(d: DigitExpansion, horizon: int) -> IndexSet:
    """``supp(x) \\ supp^q(x)``."""
    sp = supp(d, horizon)
    sq = supp_q(d, horizon)

    def pred(n: int) -> bool:
        return n in sp and n not in sq

    if isinstance(sp, ExplicitSet):
        return ExplicitSet(tuple(n for n in sp.elements if n not in sq))
    upper = range(max(horizon // 2, 1), horizon + 1)
    return _as_set(pred, horizon, any(pred(n) for n in upper), "nonq")


def is_cofinite(d: DigitExpansion, horizon: int, window: int | None = None) -> bool:
    """Every index of ``[window, horizon]`` lies in the support."""
    if isinstance(d.tail, ZeroTail):
        return False
    w = max(1, horizon // 2 if window is None else window)
    return all(d.digit(n) != 0 for n in range(w, horizon + 1))


def thinned_nonq_set(d: DigitExpansion, horizon: int) -> IndexSet:
    """``{n_2, n_4, ...}`` from ``supp(x) \\ supp^q(x) = {n_1 < n_2 < ...}``."""
    base = nonq_set(d, horizon)
    keep = base.members(1, horizon)[1::2]
    if not base.infinite:
        return ExplicitSet(tuple(keep))
    chosen = frozenset(keep)
    return BlockSparse(chosen.__contains__, horizon, label="thinned-nonq")


class WitnessCase(enum.Enum):
    NON_COFINITE = "non-cofinite"
    COFINITE = "cofinite"


@dataclass(frozen=True)
class WitnessRecipe:
    """Inputs of the folding construction.

    ``support`` defaults to the boundary set (non-cofinite case) or the thinned
    non-maximal set (cofinite case). ``epsilons`` maps ``n`` to ``eps_n`` in
    ``[0, 1]``; by default ``1`` when the shifted support is q-bounded and
    ``c_{n+1}/q_{n+1}`` when it is q-divergent.
    """

    source: DigitExpansion
    case: WitnessCase
    support: IndexSet | None = None
    epsilons: Union[Mapping[int, Fraction], Callable[[int], Fraction], None] = None


def _fold_plain(c: int, q: int) -> int:
    return c if 2 * c <= q else q - c


def _fold_shifted(c: int, q: int, eps: Fraction) -> int:
    # rows are tried in table order; the boundary c = q/2 takes the first row that matches
    big = 2 * c >= q
    half = Fraction(1, 2)
    if big and eps >= half:
        return q - c - 1
    if big:
        return q - c
    if eps <= half:
        return c
    return c + 1


def fold_witness(recipe: WitnessRecipe, horizon: int, window: int | None = None) -> DigitExpansion:
    """Fold the source digits onto a sparse support, giving a witness ``y`` with
    ``supp(y)`` free of consecutive indices and small ``c_n(y)/q_n``.
    """
    x = recipe.source
    s = x.base
    x.require(horizon + 1)
    w = max(1, horizon // 2 if window is None else window)
    sp = supp(x, horizon + 1)
    if not sp.infinite or not sp.members(w, horizon):
        raise HypothesisError("supp(x) must be infinite")
    cofinite = is_cofinite(x, horizon, w)

    if recipe.case is WitnessCase.NON_COFINITE:
        if cofinite:
            raise HypothesisError("supp(x) is cofinite on the window; use the cofinite case")
        allowed = boundary_set(x, horizon)
    else:
        if not cofinite:
            raise HypothesisError("supp(x) is not cofinite on the window")
        allowed = thinned_nonq_set(x, horizon)
    if not allowed.infinite or not allowed.members(w, horizon):
        raise HypothesisError("construction support is finite on the window")
    if classify(allowed, s, horizon).kind is not QClass.Q_DIVERGENT:
        raise HypothesisError("construction support must be q-divergent")

    S = recipe.support if recipe.support is not None else allowed
    chosen = S.members(1, horizon)
    stray = [n for n in chosen if n not in allowed]
    if stray:
        raise HypothesisError(f"support index {stray[0]} is outside the allowed set")

    table: dict[int, int] = {}
    if recipe.case is WitnessCase.NON_COFINITE:
        for n in chosen:
            table[n] = _fold_plain(x.digit(n), s.ratio(n))
    else:
        eps_of = _epsilons(recipe, allowed, horizon)
        for n in chosen:
            c, q = x.digit(n), s.ratio(n)
            if c > q - 2:
                raise HypothesisError(f"c_{n} = {c} is maximal; the thinned set must avoid supp^q")
            eps = eps_of(n)
            if not 0 <= eps <= 1:
                raise HypothesisError(f"eps_{n} = {eps} outside [0, 1]")
            table[n] = _fold_shifted(c, q, eps)

    return DigitExpansion(s, (), PrescribedTail(lambda n, q: table.get(n, 0), horizon,
                                               infinite_support=True, label=f"fold-{recipe.case.value}"))


def _epsilons(recipe: WitnessRecipe, allowed: IndexSet, horizon: int) -> Callable[[int], Fraction]:
    e = recipe.epsilons
    if isinstance(e, Mapping):
        return lambda n: Fraction(e[n])
    if callable(e):
        return lambda n: Fraction(e(n))
    x = recipe.source
    s = x.base
    shifted = classify(allowed.shift(1), s, horizon + 1).kind
    if shifted is QClass.Q_BOUNDED:
        return lambda n: Fraction(1)
    return lambda n: Fraction(x.digit(n + 1), s.ratio(n + 1))


def subset_family(A: IndexSet, delta: Sequence[int], horizon: int | None = None) -> ExplicitSet:
    """``{l_{2k + delta_k} : k = 1..len(delta)}`` for ``A = {l_1 < l_2 < ...}``."""
    need = 2 * len(delta) + 1
    els = A.members(1, horizon)
    if len(els) < need:
        raise ValueError(f"index set has {len(els)} elements below the horizon, need {need}")
    out = []
    for k, b in enumerate(delta, 1):
        if b not in (0, 1):
            raise ValueError("delta entries must be 0 or 1")
        out.append(els[2 * k + b - 1])
    return ExplicitSet(tuple(out))


def family_member(x: DigitExpansion, S: IndexSet, horizon: int) -> DigitExpansion:
    """The expansion with support ``S`` that copies the digits of ``x`` there."""
    sp = supp(x, horizon)
    chosen = S.members(1, horizon)
    bad = [n for n in chosen if n not in sp]
    if bad:
        raise ValueError(f"index {bad[0]} is not in supp(x)")
    if not S.infinite:
        top = chosen[-1] if chosen else 0
        keep = set(chosen)
        return DigitExpansion(x.base, tuple(x.digit(n) if n in keep else 0 for n in range(1, top + 1)), ZeroTail())
    known = x.known_until
    h = horizon if known is None else min(horizon, known)
    return DigitExpansion(x.base, (), PrescribedTail(lambda n, q: x.digit(n) if n in S else 0, h,
                                                    infinite_support=True, label="family"))


# ---------------------------------------------------------------------------
# adversarial multipliers


class DichotomyCase(enum.Enum):
    C1A = "1a"
    C1B = "1b"
    C2A = "2a"
    C2B = "2b"


_BOUND = {
    DichotomyCase.C1A: Fraction(3, 40),
    DichotomyCase.C1B: Fraction(3, 40),
    DichotomyCase.C2A: Fraction(3, 40),
    DichotomyCase.C2B: Fraction(1, 30),
}


@dataclass(frozen=True)
class CertificateBound:
    case: DichotomyCase
    t: int
    r: int
    bound: Fraction
    attained: Fraction

    @property
    def holds(self) -> bool:
        return self.attained >= self.bound


def _in_window(case: DichotomyCase, c: int, q: int) -> bool:
    if case is DichotomyCase.C1A:
        return 8 * c < q
    if case is DichotomyCase.C1B:
        return 8 * (q - c) < q
    if case is DichotomyCase.C2A:
        return 8 * (c + 1) < q
    return 15 * (q - c) < q and c <= q - 2


def adversarial_multiplier(c: int, q: int, case: DichotomyCase | str | None = None,
                           next_ratio: Fraction | None = None) -> CertificateBound:
    """Multiplier ``t = floor(q / (5c))`` (or with ``q - c``), folded into the gap-third set.

    ``attained`` is ``||r c / q||`` for cases 1a/1b and ``||r (c + f) / q||`` for 2a/2b,
    where ``f`` is ``next_ratio`` (``c_{n+1}/q_{n+1}``) or 1 when omitted.
    Without an explicit case, 1a is tried before 1b.
    """
    if not 1 <= c <= q - 1:
        raise ValueError(f"need 1 <= c <= q - 1, got c={c}, q={q}")
    if case is None:
        for cand in (DichotomyCase.C1A, DichotomyCase.C1B):
            if _in_window(cand, c, q):
                case = cand
                break
        else:
            raise ValueError(f"({c}, {q}) lies outside every case window")
    case = DichotomyCase(case)
    if not _in_window(case, c, q):
        raise ValueError(f"({c}, {q}) lies outside the window of case {case.value}")
    if case in (DichotomyCase.C1A, DichotomyCase.C2A):
        t = q // (5 * c)
    else:
        t = q // (5 * (q - c))
    r = t if q // 3 + 1 <= t <= q - 1 else q - t
    if case in (DichotomyCase.C1A, DichotomyCase.C1B):
        attained = Fraction(int_norm(r * c, q), q)
    else:
        f = Fraction(1) if next_ratio is None else Fraction(next_ratio)
        if not 0 <= f <= 1:
            raise ValueError("next_ratio must lie in [0, 1]")
        attained = norm(r * (c + f) / q)
    return CertificateBound(case, t, r, _BOUND[case], attained)


@dataclass(frozen=True)
class SweepResult:
    case: DichotomyCase
    checked: int
    failures: int
    folded_outside: int
    min_attained: Fraction | None
    bound: Fraction


def sweep_certificates(q_max: int, q_min: int = 2) -> dict[DichotomyCase, SweepResult]:
    """Every in-window ``(c, q)`` with ``q_min <= q <= q_max``, vectorized over ``c``.

    Pure int64 arithmetic (all products stay below ``q_max**2``), so the comparison
    ``attained >= bound`` is exact.
    """
    out = {}
    for case, bound in _BOUND.items():
        checked = failures = outside = 0
        best: tuple[int, int] | None = None
        for q in range(q_min, q_max + 1):
            c = np.arange(1, q, dtype=np.int64)
            if case is DichotomyCase.C1A:
                c = c[8 * c < q]
            elif case is DichotomyCase.C1B:
                c = c[8 * (q - c) < q]
            elif case is DichotomyCase.C2A:
                c = c[8 * (c + 1) < q]
            else:
                c = c[(15 * (q - c) < q) & (c <= q - 2)]
            if c.size == 0:
                continue
            if case in (DichotomyCase.C1A, DichotomyCase.C2A):
                t = q // (5 * c)
            else:
                t = q // (5 * (q - c))
            lo = q // 3 + 1
            r = np.where((t >= lo) & (t <= q - 1), t, q - t)
            numer = c if case in (DichotomyCase.C1A, DichotomyCase.C1B) else c + 1
            v = (r * numer) % q
            att = np.minimum(v, q - v)
            ok = att * bound.denominator >= bound.numerator * q
            checked += int(c.size)
            failures += int((~ok).sum())
            outside += int((~((r == 1) | ((r >= lo) & (r <= q - 1)))).sum())
            a = int(att.min())
            if best is None or a * best[1] < best[0] * q:
                best = (a, q)
        out[case] = SweepResult(case, checked, failures, outside,
                                Fraction(*best) if best else None, bound)
    return out


# ---------------------------------------------------------------------------


def check_family(d: DigitExpansion, m: MultiplierSchedule, horizon: int, window: int | None = None,
                 tolerance: Fraction = DEFAULT_TOLERANCE, extra: Sequence[IndexSet] = ()
                 ) -> list[tuple[str, ConditionReport]]:
    """Run the condition checker over supp, boundary and non-maximal sets, their
    shifts, a few block-sparse samples, and any extra sets supplied.
    """
    s = d.base
    if isinstance(d.tail, ZeroTail):
        return [("supp", check_conditions(d, m, ExplicitSet(()), horizon, window, tolerance))]
    family: list[tuple[str, IndexSet]] = [
        ("supp", supp(d, horizon + 1)),
        ("boundary", boundary_set(d, horizon)),
        ("nonq", nonq_set(d, horizon)),
    ]
    family += [(f"{name}+1", A.shift(1)) for name, A in list(family)]
    family += [(f"{name}-1", A.shift(-1)) for name, A in family[:3]]
    for step in (2, 3, 5):
        family.append((f"every-{step}", BlockSparse(lambda n, k=step: n % k == 0, horizon, label=f"every-{step}")))
    family += [(f"extra-{i}", A) for i, A in enumerate(extra)]
    out = []
    for name, A in family:
        if not A.infinite:
            continue
        if not classify(A, s, horizon).decisive:
            continue
        out.append((name, check_conditions(d, m, A, horizon, window, tolerance)))
    return out
