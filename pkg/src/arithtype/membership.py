"""Deciding ``x in t_(e_n)(T)``: orbit oracle, exact rational decision, and the
four-branch digit characterization checked on a finite window.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

from sympy import primefactors

from .circle import CirclePoint, int_norm
from .digits import DigitExpansion, ZeroTail, supp, supp_q
from .sequences import Affine, Classification, IndexSet, MultiplierSchedule, QClass, classify

__all__ = [
    "Status",
    "FiniteSupport",
    "PeriodicTailAllZero",
    "Witness",
    "MembershipVerdict",
    "orbit_norms",
    "decide",
    "OrbitSample",
    "orbit_bounds",
    "CondStatus",
    "ClaimResult",
    "ConditionResult",
    "ConditionReport",
    "check_conditions",
    "Sufficiency",
    "sufficient_divergent",
    "DEFAULT_TOLERANCE",
    "DEFAULT_HORIZON",
]

DEFAULT_TOLERANCE = Fraction(1, 64)
DEFAULT_HORIZON = 100_000


class Status(enum.Enum):
    MEMBER = "member"
    NON_MEMBER = "non-member"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class FiniteSupport:
    """``q | a_block``; every ``e_n`` from ``flat_index`` on is a multiple of ``a_block``."""

    block: int
    flat_index: int


@dataclass(frozen=True)
class PeriodicTailAllZero:
    start_block: int
    cycle_length: int


@dataclass(frozen=True)
class Witness:
    flat_index: int
    block: int
    multiplier: int
    norm: Fraction


@dataclass(frozen=True)
class MembershipVerdict:
    status: Status
    point: CirclePoint
    horizon: int
    certificate: Union[FiniteSupport, PeriodicTailAllZero, None] = None
    witness: Witness | None = None
    reason: str = ""


def _state_at_block(p: int, q: int, m: MultiplierSchedule, k: int) -> int:
    """``a_{k-1} p mod q``."""
    state = p % q
    for j in range(1, k):
        state = state * m.base.ratio(j) % q
    return state


def orbit_norms(x: CirclePoint, m: MultiplierSchedule, N: int, start: int = 1) -> list[tuple[int, Fraction]]:
    """Exact ``(n, ||e_n x||)`` for flat indices ``start..N``."""
    if N < 1:
        raise ValueError("N must be >= 1")
    p, q = x.numerator, x.denominator
    k, i = m.block_of(start)
    state = _state_at_block(p, q, m, k)
    out: list[tuple[int, Fraction]] = []
    n = start
    while n <= N:
        for r in m.multipliers(k)[i - 1:]:
            if n > N:
                break
            out.append((n, Fraction(int_norm(r * state, q), q)))
            n += 1
        state = state * m.base.ratio(k) % q
        k += 1
        i = 1
    return out


def _witness(m: MultiplierSchedule, k: int, state: int, q: int) -> Witness:
    return Witness(m.block_start(k), k, 1, Fraction(int_norm(state, q), q))


def decide(x: CirclePoint, m: MultiplierSchedule, horizon: int = DEFAULT_HORIZON) -> MembershipVerdict:
    """Three-valued membership of a rational point.

    Walks blocks ``k = 1..horizon`` with state ``a_{k-1} p mod q``. State 0 gives a
    finite-support certificate. Since ``1`` lies in every ``R_k``, a nonzero state
    that can never reach 0 is a non-member: detected when the residual
    ``q / gcd(q, a_{k-1})`` shares no prime with any tail ratio (bounded tails), when a
    residual prime can never divide ``slope*k + offset`` (affine tails), or when the
    ``(state, phase)`` pair repeats.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    p, q = x.numerator, x.denominator
    s = m.base
    state = p % q
    rho = q
    recheck = True
    seen: dict[tuple[int, int], int] = {}
    for k in range(1, horizon + 1):
        if state == 0:
            return MembershipVerdict(Status.MEMBER, x, horizon,
                                     certificate=FiniteSupport(k - 1, m.block_start(k)),
                                     reason=f"q divides a_{k - 1}")
        if k > s.m:
            if s.bounded:
                key = (state, s.phase(k))
                if key in seen:
                    start = seen[key]
                    return MembershipVerdict(Status.NON_MEMBER, x, horizon,
                                             witness=_witness(m, k, state, q),
                                             reason=f"state cycle of length {k - start} from block {start}")
                seen[key] = k
                if recheck:
                    recheck = False
                    tail_values = {s.ratio(j) for j in range(k, k + s.period)}
                    if all(gcd(rho, v) == 1 for v in tail_values):
                        return MembershipVerdict(Status.NON_MEMBER, x, horizon,
                                                 witness=_witness(m, k, state, q),
                                                 reason=f"residual {rho} is coprime to every tail ratio")
            elif recheck:
                recheck = False
                t = s.tail
                assert isinstance(t, Affine)
                blocked = [pr for pr in primefactors(rho) if t.slope % pr == 0 and t.offset % pr]
                if blocked:
                    return MembershipVerdict(Status.NON_MEMBER, x, horizon,
                                             witness=_witness(m, k, state, q),
                                             reason=f"prime {blocked[0]} never divides {t.slope}k+{t.offset}")
        qk = s.ratio(k)
        g = gcd(rho, qk)
        if g > 1:
            rho //= g
            recheck = True
        state = state * qk % q
    if state == 0:
        return MembershipVerdict(Status.MEMBER, x, horizon,
                                 certificate=FiniteSupport(horizon, m.block_start(horizon + 1)),
                                 reason=f"q divides a_{horizon}")
    return MembershipVerdict(Status.INCONCLUSIVE, x, horizon, reason=f"no decision within {horizon} blocks")


# ---------------------------------------------------------------------------
# oracle for expansions without a closed form


@dataclass(frozen=True)
class OrbitSample:
    """``||e_n y_N||`` for the truncation ``y_N``; the true norm is within ``error`` of it."""

    flat_index: int
    block: int
    multiplier: int
    norm: Fraction
    error: Fraction

    @property
    def lower(self) -> Fraction:
        return self.norm - self.error


def orbit_bounds(d: DigitExpansion, m: MultiplierSchedule, blocks: Iterable[int], cutoff: int) -> list[OrbitSample]:
    """Orbit norms of the truncation at ``cutoff`` over the given blocks.

    For ``e = r a_{k-1}``, ``e y_N = r * sum_{n=k..N} c_n / (q_k...q_n)`` mod 1, and the
    dropped tail contributes at most ``r / (q_k...q_N)``.
    """
    blocks = sorted(set(blocks))
    if not blocks:
        return []
    if blocks[0] < 1 or blocks[-1] > cutoff:
        raise ValueError("blocks must lie in [1, cutoff]")
    s = d.base
    wanted = set(blocks)
    partial: dict[int, tuple[int, int]] = {}
    V, D = 0, 1
    for n in range(cutoff, blocks[0] - 1, -1):
        V = d.digit(n) * D + V
        D *= s.ratio(n)
        if n in wanted:
            partial[n] = (V, D)
    out: list[OrbitSample] = []
    for k in blocks:
        V, D = partial[k]
        start = m.block_start(k)
        for i, r in enumerate(m.multipliers(k)):
            out.append(OrbitSample(start + i, k, r, Fraction(int_norm(r * V, D), D), Fraction(r, D)))
    return out


# ---------------------------------------------------------------------------
# characterization conditions


class CondStatus(enum.Enum):
    SATISFIED = "satisfied"
    VIOLATED = "violated"
    INCONCLUSIVE = "inconclusive"
    NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class ClaimResult:
    claim: str
    status: CondStatus
    sup: Fraction | None = None
    bound: Fraction | None = None
    index: int | None = None
    multiplier: int | None = None


@dataclass(frozen=True)
class ConditionResult:
    name: str
    applicable: bool
    status: CondStatus
    claims: tuple[ClaimResult, ...] = ()


@dataclass(frozen=True)
class ConditionReport:
    a_class: Classification | None
    shifted_class: Classification | None
    window: tuple[int, int]
    tolerance: Fraction
    finite_support: bool
    conditions: tuple[ConditionResult, ...]

    @property
    def status(self) -> CondStatus:
        if self.finite_support:
            return CondStatus.SATISFIED
        live = [c for c in self.conditions if c.applicable]
        if any(c.status is CondStatus.VIOLATED for c in live):
            return CondStatus.VIOLATED
        if all(c.status is CondStatus.SATISFIED for c in live):
            return CondStatus.SATISFIED
        return CondStatus.INCONCLUSIVE

    def violations(self) -> list[tuple[str, ClaimResult]]:
        return [(c.name, cl) for c in self.conditions for cl in c.claims if cl.status is CondStatus.VIOLATED]


def _limit_claim(claim: str, samples: Sequence[tuple[int, int | None, Fraction]], mid: int,
                 tol: Fraction) -> ClaimResult:
    """``samples`` are ``(n, r, deviation from the claimed limit)`` on the window."""
    if not samples:
        return ClaimResult(claim, CondStatus.INCONCLUSIVE)
    first = [t for t in samples if t[0] < mid]
    second = [t for t in samples if t[0] >= mid]
    top = max(samples, key=lambda t: t[2])
    if top[2] < tol:
        return ClaimResult(claim, CondStatus.SATISFIED, sup=top[2], index=top[0], multiplier=top[1])
    if first and second:
        hi1 = max(first, key=lambda t: t[2])
        hi2 = max(second, key=lambda t: t[2])
        if hi1[2] >= tol and hi2[2] >= tol:
            return ClaimResult(claim, CondStatus.VIOLATED, sup=top[2], bound=min(hi1[2], hi2[2]),
                               index=hi2[0], multiplier=hi2[1])
    return ClaimResult(claim, CondStatus.INCONCLUSIVE, sup=top[2], index=top[0], multiplier=top[1])


def _subset_claim(claim: str, checked: Sequence[int], failures: Sequence[int], mid: int) -> ClaimResult:
    if not checked:
        return ClaimResult(claim, CondStatus.INCONCLUSIVE)
    if not failures:
        return ClaimResult(claim, CondStatus.SATISFIED)
    early = [n for n in failures if n < mid]
    late = [n for n in failures if n >= mid]
    if early and late:
        return ClaimResult(claim, CondStatus.VIOLATED, index=late[0])
    return ClaimResult(claim, CondStatus.INCONCLUSIVE, index=failures[-1])


def _max_norm(rs: Sequence[int], num: int, den: int) -> tuple[Fraction, int]:
    best, arg = -1, rs[0]
    for r in rs:
        v = int_norm(r * num, den)
        if v > best:
            best, arg = v, r
    return Fraction(best, den), arg


def _combine(name: str, claims: list[ClaimResult]) -> ConditionResult:
    if any(c.status is CondStatus.VIOLATED for c in claims):
        st = CondStatus.VIOLATED
    elif all(c.status is CondStatus.SATISFIED for c in claims):
        st = CondStatus.SATISFIED
    else:
        st = CondStatus.INCONCLUSIVE
    return ConditionResult(name, True, st, tuple(claims))


def _idle(*names: str) -> list[ConditionResult]:
    return [ConditionResult(n, False, CondStatus.NOT_APPLICABLE) for n in names]


def check_conditions(d: DigitExpansion, m: MultiplierSchedule, A: IndexSet, horizon: int,
                     window: int | None = None, tolerance: Fraction = DEFAULT_TOLERANCE) -> ConditionReport:
    """Evaluate the branch of the characterization that ``A`` triggers for ``d``.

    Containment modulo finite sets and limits are judged on ``[window, horizon]``
    (default window start ``horizon // 2``). A claim is violated only when the failure
    shows up in both halves of the window.
    """
    if horizon < 2:
        raise ValueError("horizon must be >= 2")
    w = max(1, horizon // 2 if window is None else window)
    mid = (w + horizon + 1) // 2
    tol = Fraction(tolerance)
    if isinstance(d.tail, ZeroTail):
        return ConditionReport(None, None, (w, horizon), tol, True, ())
    s = d.base
    cls = classify(A, s, horizon)
    if not cls.decisive:
        raise ValueError(f"index set classification is inconclusive (ratios {cls.min_ratio}..{cls.max_ratio})")
    A1 = A.shift(1)
    cls1 = classify(A1, s, horizon + 1)
    d.require(horizon + 1)
    sp = supp(d, horizon + 1)
    sq = supp_q(d, horizon + 1)
    members = A.members(w, horizon)
    c = {n: d.digit(n) for n in range(w, horizon + 2)}
    q = {n: s.ratio(n) for n in range(w, horizon + 2)}
    conds: list[ConditionResult] = []

    if cls.kind is QClass.Q_BOUNDED:
        in_supp = [n in sp for n in members]
        if members and all(in_supp):
            claims = [
                _subset_claim("(A+1) <=* supp", members, [n + 1 for n in members if n + 1 not in sp], mid),
                _subset_claim("A <=* supp^q", members, [n for n in members if n not in sq], mid),
                _limit_claim("lim (c_{n+1}+1)/q_{n+1} = 1",
                             [(n, None, Fraction(q[n + 1] - c[n + 1] - 1, q[n + 1])) for n in members], mid, tol),
            ]
            if cls1.kind is QClass.Q_BOUNDED:
                claims.append(_subset_claim("(A+1) <=* supp^q", members,
                                            [n + 1 for n in members if n + 1 not in sq], mid))
            elif cls1.kind is QClass.INCONCLUSIVE:
                claims.append(ClaimResult("(A+1) <=* supp^q", CondStatus.INCONCLUSIVE))
            conds.append(_combine("a1", claims))
        else:
            conds += _idle("a1")
        if members and not any(in_supp):
            claims = [_limit_claim("lim c_{n+1}/q_{n+1} = 0",
                                   [(n, None, Fraction(c[n + 1], q[n + 1])) for n in members], mid, tol)]
            if cls1.kind is QClass.Q_BOUNDED:
                claims.append(_subset_claim("(A+1) & supp finite", members,
                                            [n + 1 for n in members if n + 1 in sp], mid))
            elif cls1.kind is QClass.INCONCLUSIVE:
                claims.append(ClaimResult("(A+1) & supp finite", CondStatus.INCONCLUSIVE))
            conds.append(_combine("a2", claims))
        else:
            conds += _idle("a2")
        conds += _idle("b1i", "b1ii", "b2")
    else:
        conds += _idle("a1", "a2")
        succ = [n + 1 in sp for n in members]
        if members and all(succ):
            if cls1.kind is QClass.Q_BOUNDED:
                samples = []
                for n in members:
                    val, r = _max_norm(m.multipliers(n), c[n] + 1, q[n])
                    samples.append((n, r, val))
                conds.append(_combine("b1i", [_limit_claim("lim ||r (c_n+1)/q_n|| = 0", samples, mid, tol)]))
                conds += _idle("b1ii")
            elif cls1.kind is QClass.Q_DIVERGENT:
                samples = []
                for n in members:
                    val, r = _max_norm(m.multipliers(n), c[n] * q[n + 1] + c[n + 1], q[n] * q[n + 1])
                    samples.append((n, r, val))
                conds += _idle("b1i")
                conds.append(_combine("b1ii", [_limit_claim("lim ||r (c_n + c_{n+1}/q_{n+1})/q_n|| = 0",
                                                            samples, mid, tol)]))
            else:
                conds.append(ConditionResult("b1i", True, CondStatus.INCONCLUSIVE))
                conds.append(ConditionResult("b1ii", True, CondStatus.INCONCLUSIVE))
        else:
            conds += _idle("b1i", "b1ii")
        if members and not any(succ):
            samples = []
            for n in members:
                val, r = _max_norm(m.multipliers(n), c[n], q[n])
                samples.append((n, r, val))
            conds.append(_combine("b2", [_limit_claim("lim ||r c_n/q_n|| = 0", samples, mid, tol)]))
        else:
            conds += _idle("b2")
    return ConditionReport(cls, cls1, (w, horizon), tol, False, tuple(conds))


class Sufficiency(enum.Enum):
    CONFIRMED = "confirmed"
    NOT_APPLICABLE = "not-applicable"
    REFUTED = "refuted"


def sufficient_divergent(d: DigitExpansion, m: MultiplierSchedule, horizon: int, window: int | None = None,
                         tolerance: Fraction = DEFAULT_TOLERANCE) -> Sufficiency:
    """Sufficient membership route for a q-divergent support with no two consecutive indices.

    Confirmed when ``max_{r in R_n} ||r c_n / q_n||`` over the support stays below the
    tolerance on ``[window, horizon]`` and either its sup does not grow from the first
    half of the window to the second, or every value sits under ``tol * q_min / q_n``.
    """
    s = d.base
    sp = supp(d, horizon)
    if not sp.infinite:
        return Sufficiency.NOT_APPLICABLE
    if classify(sp, s, horizon).kind is not QClass.Q_DIVERGENT:
        return Sufficiency.NOT_APPLICABLE
    members = sp.members(1, horizon)
    if any(n + 1 in sp for n in members if n < horizon):
        return Sufficiency.NOT_APPLICABLE
    w = max(1, horizon // 2 if window is None else window)
    mid = (w + horizon + 1) // 2
    vals = [(n, _max_norm(m.multipliers(n), d.digit(n), s.ratio(n))[0]) for n in members if n >= w]
    first = [v for n, v in vals if n < mid]
    second = [v for n, v in vals if n >= mid]
    if not first or not second:
        return Sufficiency.NOT_APPLICABLE
    tol = Fraction(tolerance)
    if max(first + second) < tol and max(second) <= max(first):
        return Sufficiency.CONFIRMED
    # O(1/q) envelope: a threshold test, so it survives passing to sub-supports
    q_min = min(s.ratio(n) for n, _ in vals)
    if all(v * s.ratio(n) < tol * q_min for n, v in vals):
        return Sufficiency.CONFIRMED
    return Sufficiency.REFUTED
