"""Named verification suites; each is deterministic in ``(seed, scale)``."""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Callable

from .circle import CirclePoint, frac, norm, scale_norm
from .constructions import (
    DichotomyCase,
    HypothesisError,
    WitnessCase,
    WitnessRecipe,
    adversarial_multiplier,
    check_family,
    family_member,
    fold_witness,
    subset_family,
    sweep_certificates,
)
from .digits import (
    DigitExpansion,
    PeriodicTail,
    PrescribedTail,
    ZeroTail,
    from_digits,
    frac_recursion,
    supp,
    supp_q,
    tail_bound_check,
    to_digits,
)
from .membership import (
    DEFAULT_TOLERANCE,
    CondStatus,
    FiniteSupport,
    Status,
    Sufficiency,
    decide,
    orbit_bounds,
    orbit_norms,
    sufficient_divergent,
)
from .sequences import (
    Affine,
    BaseOnly,
    BlockSparse,
    Constant,
    Explicit,
    ExplicitSet,
    Full,
    GapThird,
    MultiplierSchedule,
    Periodic,
    RatioStream,
    characterizing_schedule,
)

__all__ = ["Check", "SuiteResult", "SUITES", "DEFAULT_SCALE", "run_suite", "run_suites", "zeta_schedule", "zeta_qz_checks"]

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass
class Check:
    name: str
    status: str
    detail: str = ""


@dataclass
class SuiteResult:
    suite: str
    seed: int
    scale: int
    checks: list[Check] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    @property
    def repro(self) -> str:
        return f"arithtype verify {self.suite} --seed {self.seed} --scale {self.scale}"


def _tally(name: str, good: int, total: int, what: str, first_bad: str = "") -> Check:
    detail = f"{good}/{total} {what}"
    if good != total and first_bad:
        detail += f"; first failure: {first_bad}"
    return Check(name, PASS if good == total and total > 0 else FAIL, detail)


def zeta_schedule() -> MultiplierSchedule:
    """Full schedule over ``q_k = k + 1``; flattens to 1, 2, 4, 6, 12, 18, 24, ..."""
    return MultiplierSchedule(RatioStream((), Affine(1, 1)), Full())


def _random_stream(rng: random.Random, qmax: int, kinds=("constant", "periodic", "affine"),
                   max_prefix: int = 4) -> RatioStream:
    prefix = tuple(rng.randint(2, qmax) for _ in range(rng.randint(0, max_prefix)))
    kind = rng.choice(kinds)
    if kind == "constant":
        tail = Constant(rng.randint(2, qmax))
    elif kind == "periodic":
        tail = Periodic(tuple(rng.randint(2, qmax) for _ in range(rng.randint(1, 4))))
    else:
        tail = Affine(1, rng.randint(1, max(1, qmax - 30)))
    return RatioStream(prefix, tail)


def _mod_term(s: RatioStream, k: int, q: int) -> int:
    """``a_k mod q`` without forming ``a_k``."""
    v = 1 % q
    for j in range(1, k + 1):
        v = v * s.ratio(j) % q
    return v


def _greedy_digits(x: Fraction, s: RatioStream, N: int) -> list[int]:
    # independent oracle: plain rational arithmetic, no modular state
    out = []
    y = x - (x.numerator // x.denominator)
    for n in range(1, N + 1):
        v = s.ratio(n) * y
        c = v.numerator // v.denominator
        out.append(c)
        y = v - c
    return out


# ---------------------------------------------------------------------------
# suites


def suite_norm_identities(seed: int, scale: int) -> list[Check]:
    rng = random.Random(seed)
    Q = scale
    checks = []

    # {r x} = r {x} whenever r {x} < 1
    good = total = 0
    bad = ""
    for q in range(1, Q + 1):
        for p in range(q):
            x = CirclePoint.of(p, q)
            fx = x.as_fraction()
            r = 1
            while r * fx < 1 and r <= q:
                total += 1
                if frac(r * fx).as_fraction() == r * fx:
                    good += 1
                elif not bad:
                    bad = f"r={r}, x={p}/{q}"
                r += 1
    checks.append(_tally("frac-scaling", good, total, "exact instances with r{x} < 1", bad))

    # ||r x|| = r ||x|| whenever r ||x|| < 1/2
    good = total = 0
    bad = ""
    for q in range(1, Q + 1):
        for p in range(q):
            x = CirclePoint.of(p, q)
            nx = norm(x)
            r = 1
            while r * nx < Fraction(1, 2) and r <= q:
                total += 1
                if scale_norm(r, x) == r * nx:
                    good += 1
                elif not bad:
                    bad = f"r={r}, x={p}/{q}"
                r += 1
    checks.append(_tally("norm-scaling", good, total, "exact instances with r||x|| < 1/2", bad))

    # ||n + x|| = ||x||
    good = total = 0
    bad = ""
    for q in range(1, Q + 1):
        for p in range(q):
            fx = Fraction(p, q)
            base = norm(frac(fx))
            for n in (-3, -1, 1, 2, 7):
                total += 1
                if norm(frac(n + fx)) == base:
                    good += 1
                elif not bad:
                    bad = f"n={n}, x={p}/{q}"
    checks.append(_tally("translation", good, total, "exact instances", bad))

    # ||r (q - c)/q|| = ||r c / q||
    good = total = 0
    for _ in range(20 * Q):
        q = rng.randint(2, 10**6)
        c = rng.randint(0, q)
        r = rng.randint(1, 10**6)
        total += 1
        good += norm(Fraction(r * (q - c), q)) == norm(Fraction(r * c, q))
    checks.append(_tally("symmetry", good, total, "sampled (r, c, q)"))

    # windowed perturbation and product bounds
    good = total = 0
    for _ in range(20 * Q):
        delta = Fraction(rng.randint(0, 50), rng.randint(51, 400))
        xs = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**4))
        z = delta * Fraction(rng.randint(-1000, 1000), 1000)
        total += 1
        good += abs(norm(xs + z) - norm(xs)) <= delta
        k = rng.randint(0, 40)
        y = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**4))
        total += 1
        good += norm(k * y) <= k * norm(y)
    checks.append(_tally("perturbation", good, total, "windowed inequalities"))
    return checks


def suite_digit_roundtrip(seed: int, scale: int) -> list[Check]:
    rng = random.Random(seed)
    ok_rt = ok_oracle = ok_canon = ok_sub = ok_unique = 0
    bad = ""
    for i in range(scale):
        s = _random_stream(rng, 50, max_prefix=4)
        N = rng.randint(1, 30)
        aN = s.term(N)
        x = CirclePoint.of(rng.randrange(aN), aN)
        d = to_digits(x, s, N)
        if isinstance(d.tail, ZeroTail) and len(d.window) == N and from_digits(d) == x:
            ok_rt += 1
        elif not bad:
            bad = f"sample {i}: x={x}, stream {s.describe()}"
        ok_oracle += list(d.window) == _greedy_digits(x.as_fraction(), s, N)
        ok_canon += d.is_canonical()
        sp, sq = supp(d, N), supp_q(d, N)
        ok_sub += set(sq.members(1, N)) <= set(sp.members(1, N))
        other = tuple(rng.randint(0, s.ratio(n) - 1) for n in range(1, N + 1))
        if other == d.window:
            ok_unique += 1
        else:
            y = from_digits(DigitExpansion(s, other, ZeroTail()))
            ok_unique += (y != x) and list(to_digits(y, s, N).window) == list(other)
    checks = [
        _tally("roundtrip", ok_rt, scale, "from_digits(to_digits(x)) == x with zero tail at N", bad),
        _tally("greedy-oracle", ok_oracle, scale, "windows equal the rational greedy digits"),
        _tally("canonical", ok_canon, scale, "canonical windows"),
        _tally("supp^q-in-supp", ok_sub, scale, "supp^q subset of supp"),
        _tally("uniqueness", ok_unique, scale, "distinct windows give distinct values and roundtrip"),
    ]

    # non-terminating expansions: periodic tail, canonical, agrees with the oracle past the window
    good = 0
    total = max(1, scale // 5)
    for _ in range(total):
        s = _random_stream(rng, 20, kinds=("constant", "periodic"), max_prefix=3)
        q = rng.randint(2, 2000)
        x = CirclePoint.of(rng.randrange(q), q)
        N = rng.randint(1, 12)
        d = to_digits(x, s, N)
        L = len(d.window) + 2 * (len(d.tail.digits) if isinstance(d.tail, PeriodicTail) else 1) + 5
        good += d.digits(1, L) == _greedy_digits(x.as_fraction(), s, L) and d.is_canonical()
    checks.append(_tally("periodic-tails", good, total, "cycle-detected tails match the oracle and are canonical"))
    return checks


def suite_recursion_identity(seed: int, scale: int) -> list[Check]:
    rng = random.Random(seed)
    good = good_t1 = total_t1 = 0
    bad = ""
    for i in range(scale):
        s = _random_stream(rng, 50)
        q = rng.randint(1, 10**6)
        x = CirclePoint.of(rng.randrange(q), q)
        n = rng.randint(2, 20)
        t = rng.randint(0, 10)
        lhs = frac(s.term(n - 1) * x.as_fraction()).as_fraction()
        if frac_recursion(x, s, n, t) == lhs:
            good += 1
        elif not bad:
            bad = f"x={x}, n={n}, t={t}, stream {s.describe()}"
        total_t1 += 1
        good_t1 += frac_recursion(x, s, n, 1) == lhs
    return [
        _tally("recursion-identity", good, scale, "exact equalities (n <= 20, t <= 10)", bad),
        _tally("t=1-specialization", good_t1, total_t1, "exact equalities"),
    ]


def suite_tailbound(seed: int, scale: int) -> list[Check]:
    rng = random.Random(seed)
    good = good_tel = 0
    bad = ""
    for i in range(scale):
        s = _random_stream(rng, 50)
        N = rng.randint(1, 30)
        d = DigitExpansion(s, tuple(rng.randint(0, s.ratio(n) - 1) for n in range(1, N + 1)), ZeroTail())
        j = rng.randint(1, N + 1)
        total, bound = tail_bound_check(d, j)
        if total <= bound:
            good += 1
        elif not bad:
            bad = f"sample {i}: j={j}"
        top = DigitExpansion(s, tuple(s.ratio(n) - 1 for n in range(1, N + 1)), ZeroTail())
        total, bound = tail_bound_check(top, j)
        good_tel += total == bound - Fraction(1, s.term(N))
    return [
        _tally("tail-bound", good, scale, "finite expansions with tail sum <= 1/a_{j-1}", bad),
        _tally("telescoping", good_tel, scale, "maximal-digit tails equal 1/a_{j-1} - 1/a_N"),
    ]


def _random_explicit(rng: random.Random, s: RatioStream, blocks: int) -> Explicit:
    table = {}
    for k in range(1, blocks + 1):
        q = s.ratio(k)
        extra = rng.sample(range(2, q), rng.randint(0, min(4, q - 2))) if q > 2 else []
        table[k] = tuple(sorted({1, *extra}))
    return Explicit(table, rng.choice([Full(), BaseOnly(), GapThird()]))


def _oracle_consistent(x: CirclePoint, m: MultiplierSchedule, v) -> bool:
    if v.status is Status.MEMBER:
        c = v.certificate
        if not isinstance(c, FiniteSupport) or _mod_term(m.base, c.block, x.denominator) != 0:
            return False
        return all(val == 0 for _, val in orbit_norms(x, m, c.flat_index + 40, start=c.flat_index))
    if v.status is Status.NON_MEMBER:
        w = v.witness
        (n, val), = orbit_norms(x, m, w.flat_index, start=w.flat_index)
        return val == w.norm and w.norm >= Fraction(1, x.denominator)
    return True


def suite_inclusion_chain(seed: int, scale: int) -> list[Check]:
    rng = random.Random(seed)
    mono = decisive = consistent = samples = 0
    bad = ""
    for i in range(scale):
        s = _random_stream(rng, 20)
        mid = MultiplierSchedule(s, _random_explicit(rng, s, rng.randint(0, 8)))
        full, base = MultiplierSchedule(s, Full()), MultiplierSchedule(s, BaseOnly())
        for _ in range(100):
            q = rng.randint(1, 3000)
            x = CirclePoint.of(rng.randrange(q), q)
            vs = [decide(x, sch, horizon=20_000) for sch in (full, mid, base)]
            samples += 1
            consistent += all(_oracle_consistent(x, sch, v) for sch, v in zip((full, mid, base), vs))
            if any(v.status is Status.INCONCLUSIVE for v in vs):
                continue
            decisive += 1
            member = [v.status is Status.MEMBER for v in vs]
            if (not member[0] or member[1]) and (not member[1] or member[2]):
                mono += 1
            elif not bad:
                bad = f"x={x}, stream {s.describe()}"
    checks = [
        _tally("monotone-verdicts", mono, decisive, "decisive triples respect full => any => base", bad),
        _tally("oracle-consistency", consistent, samples, "verdict triples agree with the orbit oracle"),
        Check("decisive-share", PASS if decisive else FAIL, f"{decisive}/{samples} triples decisive"),
    ]
    checks += zeta_qz_checks(rng, 200)
    return checks


def zeta_qz_checks(rng: random.Random, count: int) -> list[Check]:
    m = zeta_schedule()
    good = oracle = 0
    bad = ""
    for _ in range(count):
        q = rng.randint(1, 10**4)
        x = CirclePoint.of(rng.randrange(q), q)
        v = decide(x, m, horizon=20_000)
        if v.status is Status.MEMBER and isinstance(v.certificate, FiniteSupport):
            good += 1
        elif not bad:
            bad = f"x={x}: {v.status.value}"
        oracle += _oracle_consistent(x, m, v)
    return [
        _tally("zeta-members", good, count, "rationals with q <= 10^4 are members with finite support", bad),
        _tally("zeta-oracle", oracle, count, "exact-zero orbit tails after the certificate"),
    ]


def _sparse_support(rng: random.Random, start: int, horizon: int, gap=(2, 6)) -> list[int]:
    out, n = [], start
    while n <= horizon + 2:
        out.append(n)
        n += rng.randint(*gap)
    return out


def _prescribed(s: RatioStream, digits: Callable[[int, int], int], horizon: int, label: str) -> DigitExpansion:
    return DigitExpansion(s, (), PrescribedTail(digits, horizon, True, label))


def _bounded_schedule(s: RatioStream, M: int, blocks: int) -> MultiplierSchedule:
    if M == 1:
        return MultiplierSchedule(s, BaseOnly())
    return MultiplierSchedule(s, Explicit({k: tuple(range(1, min(M, s.ratio(k) - 1) + 1)) for k in range(1, blocks + 1)}))


def suite_bounded_ratio(seed: int, scale: int) -> list[Check]:
    rng = random.Random(seed)
    checks = []

    streams = [RatioStream((), Constant(2)), RatioStream((), Periodic((2, 3))), RatioStream((6,), Constant(10))]
    streams += [_random_stream(rng, 20, kinds=("constant", "periodic"), max_prefix=3) for _ in range(3)]
    members = finite = nonmembers = infinite = total = 0
    bad = ""
    for s in streams:
        schedules = [MultiplierSchedule(s, r) for r in (Full(), GapThird(), BaseOnly())]
        for q in range(1, scale + 1):
            p = rng.randrange(q)
            while gcd(p, q) != 1:
                p = rng.randrange(q)
            x = CirclePoint(p, q)
            for m in schedules:
                v = decide(x, m)
                total += 1
                if v.status is Status.MEMBER:
                    members += 1
                    c = v.certificate
                    if isinstance(c, FiniteSupport) and isinstance(to_digits(x, s, max(c.block, 1)).tail, ZeroTail):
                        finite += 1
                    elif not bad:
                        bad = f"x={x}, {m.describe()}"
                elif v.status is Status.NON_MEMBER:
                    nonmembers += 1
                    d = to_digits(x, s, 1)
                    infinite += isinstance(d.tail, PeriodicTail) and any(d.tail.digits)
    checks.append(_tally("bounded-members-finite", finite, members, "bounded-ratio members carry finite support", bad))
    checks.append(_tally("bounded-nonmembers-infinite", infinite, nonmembers, "non-members have a nonzero periodic tail"))
    checks.append(_tally("bounded-decisive", members + nonmembers, total, "verdicts decisive on bounded tails"))

    # divergent streams: confirmed sparse witnesses show orbit decay on truncations
    H = 400
    confirmed = decay = samples = 0
    for i in range(12):
        s = RatioStream((), Affine(2, rng.randint(1, 3)))
        sup = set(_sparse_support(rng, rng.randint(1, 4), H + 2, gap=(2, 5)))
        small = rng.choice([1, 2])
        y = _prescribed(s, lambda n, q, sup=sup, small=small: small if n in sup else 0, H + 2, "sparse-small")
        m = _bounded_schedule(s, rng.choice([1, 2]), H + 2)
        samples += 1
        if sufficient_divergent(y, m, H) is not Sufficiency.CONFIRMED:
            continue
        confirmed += 1
        decay += _orbit_decay(y, m, H)
    checks.append(_tally("divergent-confirmed", confirmed, samples, "sparse small-digit witnesses confirmed"))
    checks.append(_tally("divergent-oracle-decay", decay, confirmed, "truncation orbit norms bounded by the tail estimate and decaying"))
    return checks


def _orbit_decay(y: DigitExpansion, m: MultiplierSchedule, H: int, tol: Fraction = DEFAULT_TOLERANCE) -> bool:
    s = y.base
    trunc = y.truncate(H)
    blocks = range(H // 4, H)
    bounds = orbit_bounds(y, m, blocks, H)
    for smp in bounds:
        k, r = smp.block, smp.multiplier
        rest, cap = tail_bound_check(trunc, k + 1)
        if rest > cap:
            return False
        est = norm(Fraction(r * y.digit(k), s.ratio(k))) + r * s.term(k - 1) * rest
        if smp.norm > est:
            return False
    sups = []
    for lo in (H // 4, H // 2, 3 * H // 4):
        sups.append(max(b.norm for b in bounds if b.block >= lo))
    return all(a >= b for a, b in zip(sups, sups[1:])) and sups[-1] < tol


def _noncofinite_source(rng: random.Random, s: RatioStream, H: int) -> DigitExpansion:
    table: dict[int, int] = {}
    n = rng.randint(1, 4)
    while n <= H + 4:
        if rng.random() < 0.3:
            table[n] = -1  # maximal, followed by another support point
            n += 1
        table[n] = rng.choice([1, 2, -1, -2])
        n += rng.randint(2, 5)
    return _prescribed(s, lambda k, q: (table.get(k, 0) + q) % q if table.get(k, 0) < 0 else table.get(k, 0),
                       H + 2, "non-cofinite")


def _cofinite_source(rng: random.Random, s: RatioStream, H: int) -> DigitExpansion:
    special = {n: rng.choice([1, -2]) for n in range(1, H + 3) if rng.random() < 0.25}
    return _prescribed(s, lambda k, q: q - 1 if k not in special else (special[k] + q) % q, H + 2, "cofinite")


def suite_witness_pipeline(seed: int, scale: int) -> list[Check]:
    rng = random.Random(seed)
    H = 400
    checks = []
    for case, build in ((WitnessCase.NON_COFINITE, _noncofinite_source), (WitnessCase.COFINITE, _cofinite_source)):
        hyp = confirmed = disjoint = small = family = 0
        bad = ""
        for i in range(scale):
            s = RatioStream((), Affine(2, rng.randint(1, 5)))
            m = _bounded_schedule(s, rng.choice([1, 2, 3]), H + 2)
            x = build(rng, s, H)
            reports = check_family(x, m, H)
            if any(r.status is CondStatus.VIOLATED for _, r in reports):
                if not bad:
                    bad = f"sample {i}: source violates the characterization"
                continue
            hyp += 1
            try:
                y = fold_witness(WitnessRecipe(x, case), H)
            except HypothesisError as exc:
                bad = bad or f"sample {i}: {exc}"
                continue
            sp = supp(y, H).members(1, H)
            disjoint += all(n + 1 not in set(sp) for n in sp)
            w = H // 2
            small += max(Fraction(y.digit(n), s.ratio(n)) for n in sp if n >= w) < DEFAULT_TOLERANCE
            if sufficient_divergent(y, m, H) is Sufficiency.CONFIRMED:
                confirmed += 1
            elif not bad:
                bad = f"sample {i}: witness not confirmed"
            half = ExplicitSet(tuple(sp[::2]))
            sub = family_member(y, BlockSparse(set(half.elements).__contains__, H), H)
            family += sufficient_divergent(sub, m, H) is Sufficiency.CONFIRMED
        tag = case.value
        checks.append(_tally(f"{tag}-hypotheses", hyp, scale, "sources pass the condition family", bad))
        checks.append(_tally(f"{tag}-confirmed", confirmed, hyp, "folded witnesses confirmed"))
        checks.append(_tally(f"{tag}-disjoint", disjoint, hyp, "supp(y) and supp(y)+1 disjoint"))
        checks.append(_tally(f"{tag}-small-ratio", small, hyp, "c_n(y)/q_n below tolerance on the window"))
        checks.append(_tally(f"{tag}-subfamily", family, hyp, "every-other sub-witness still confirmed"))

    universe = ExplicitSet(tuple(range(1, 26)))
    seen: set[tuple[int, ...]] = set()
    count = 0
    for length in range(13):
        for delta in product((0, 1), repeat=length):
            seen.add(subset_family(universe, delta).elements)
            count += 1
    checks.append(_tally("subset-injective", len(seen), count, "distinct sets for all deltas with |delta| <= 12"))
    full = {subset_family(universe, delta).elements for delta in product((0, 1), repeat=12)}
    checks.append(_tally("subset-injective-12", len(full), 4096, "distinct sets for |delta| = 12"))
    return checks


def _random_chain(rng: random.Random, limit: int = 10**6) -> list[int]:
    orders = []
    a = 1
    while True:
        r = rng.randint(2, 12)
        if a * r > limit:
            break
        a *= r
        orders.append(a)
        if len(orders) >= 2 and rng.random() < 0.1:
            break
    return orders


def suite_divisor_chains(seed: int, scale: int) -> list[Check]:
    rng = random.Random(seed)
    ratio_ok = chain_ok = member_ok = denom_ok = terms_ok = 0
    member_total = denom_total = 0
    bad = ""
    for i in range(scale):
        orders = _random_chain(rng)
        m = characterizing_schedule(orders)
        s = m.base
        K = len(orders)
        terms_ok += all(s.term(k) == orders[k - 1] for k in range(1, K + 1))
        es = m.terms(m.block_end(K + 3))
        if all(es[j] < es[j + 1] <= 2 * es[j] for j in range(len(es) - 1)):
            ratio_ok += 1
        elif not bad:
            bad = f"chain {orders}"
        good = True
        for k, a in enumerate(orders, 1):
            for _ in range(5):
                x = CirclePoint.of(rng.randrange(a), a)
                good &= decide(x, m).status is Status.MEMBER
        chain_ok += good
        for _ in range(100):
            q = rng.randint(1, 2 * orders[-1])
            x = CirclePoint.of(rng.randrange(q), q)
            v = decide(x, m)
            if v.status is Status.MEMBER:
                member_total += 1
                member_ok += any(_mod_term(s, k, x.denominator) == 0 for k in range(v.certificate.block + 1))
            else:
                denom_total += 1
                denom_ok += v.status is Status.NON_MEMBER and all(
                    _mod_term(s, k, x.denominator) != 0 for k in range(0, 3 * K + 3))
    return [
        _tally("chain-terms", terms_ok, scale, "ratio streams reproduce the chain"),
        _tally("flattened-ratio<=2", ratio_ok, scale, "flattened sequences with consecutive ratio <= 2", bad),
        _tally("chain-subgroup-members", chain_ok, scale, "chains whose cyclic subgroups are members"),
        _tally("member-denominators", member_ok, member_total, "members whose denominator divides some a_k"),
        _tally("non-member-denominators", denom_ok, denom_total, "non-members dividing no early a_k"),
    ]


def _dichotomy_corpus(rng: random.Random, s: RatioStream, count: int, H: int) -> list[tuple[str, DigitExpansion]]:
    out = []
    kinds = ["periodic", "small-sparse", "near-max-sparse", "cofinite-small", "cofinite-near-max", "half-sparse"]
    for i in range(count):
        kind = kinds[i % len(kinds)]
        top = H + 2
        if kind == "periodic":
            pat = [rng.randint(0, 3) for _ in range(rng.randint(1, 4))]
            if not any(pat):
                pat[0] = 1
            rule = lambda n, q, pat=pat: pat[n % len(pat)]
        else:
            sup = set(_sparse_support(rng, rng.randint(1, 5), top, gap=(2, 6)))
            d = rng.randint(1, 3)
            if kind == "small-sparse":
                rule = lambda n, q, sup=sup, d=d: d if n in sup else 0
            elif kind == "near-max-sparse":
                rule = lambda n, q, sup=sup, d=d: q - d if n in sup else 0
            elif kind == "cofinite-small":
                rule = lambda n, q, sup=sup, d=d: d if n in sup else q - 1
            elif kind == "cofinite-near-max":
                rule = lambda n, q, sup=sup, d=d: q - 1 - d if n in sup else q - 1
            else:
                rule = lambda n, q, sup=sup: q // 2 if n in sup else 0
        out.append((kind, _prescribed(s, rule, top, kind)))
    return out


def suite_dichotomy(seed: int, scale: int) -> list[Check]:
    rng = random.Random(seed)
    checks = []
    s = RatioStream((), Affine(1, 1))
    m = MultiplierSchedule(s, GapThird())

    ratios = []
    good = 0
    for k in range(1, 101):
        n0 = m.block_start(k + 1)
        e0, e1 = m.flat_term(n0), m.flat_term(n0 + 1)
        q = s.ratio(k + 1)
        ratio = Fraction(e1, e0)
        ratios.append(ratio)
        good += ratio == q // 3 + 1 and 3 * ratio >= q
    checks.append(_tally("boundary-ratios", good, 100, "block-boundary ratios equal floor(q/3)+1 >= q/3"))
    beaten = sum(any(r > M for r in ratios) for M in range(1, 34))
    checks.append(_tally("unbounded-ratio", beaten, 33, "bounds M <= 33 exceeded within k <= 100"))

    sweep = sweep_certificates(10**4)
    for case, res in sweep.items():
        ok = res.failures == 0 and res.folded_outside == 0 and res.checked > 0
        checks.append(Check(f"certificates-{case.value}", PASS if ok else FAIL,
                            f"{res.checked} in-window (c, q), q <= 10^4; min attained {res.min_attained} "
                            f">= {res.bound}; failures {res.failures}; folded outside {res.folded_outside}"))

    good = total = 0
    for q in range(2, 301):
        allowed = set(GapThird().multipliers(0, q))
        for c in range(1, q):
            for case in DichotomyCase:
                try:
                    cert = adversarial_multiplier(c, q, case)
                except ValueError:
                    continue
                total += 1
                good += cert.holds and cert.r in allowed
    checks.append(_tally("certificates-scalar", good, total, "scalar certificates for q <= 300 hold with r in the gap-third set"))

    H = 120
    corpus = _dichotomy_corpus(rng, s, scale, H)
    floor = Fraction(1, 30)
    good = 0
    bad = ""
    windows = [(60, 79), (80, 99), (100, H - 2)]
    for kind, y in corpus:
        bounds = orbit_bounds(y, m, range(60, H - 1), H)
        hit = all(max(b.lower for b in bounds if lo <= b.block <= hi) >= floor for lo, hi in windows)
        if hit:
            good += 1
        elif not bad:
            bad = kind
    checks.append(_tally("corpus-non-convergence", good, len(corpus),
                         "candidates with a certified orbit norm >= 1/30 in every tail sub-window", bad))

    good = total = 0
    for kind, y in corpus:
        if kind not in ("small-sparse", "near-max-sparse"):
            continue
        for k in range(60, H - 1):
            c, q = y.digit(k), s.ratio(k)
            if c == 0:
                continue
            try:
                cert = adversarial_multiplier(c, q)
            except ValueError:
                continue
            total += 1
            (smp,) = [b for b in orbit_bounds(y, m, [k], H) if b.multiplier == cert.r]
            good += smp.lower >= Fraction(3, 40) - Fraction(1, q * s.ratio(k + 1))
    checks.append(_tally("certificate-vs-oracle", good, total,
                         "proof multipliers realize their bound on the orbit (up to the next-digit slack)"))
    return checks


SUITES: dict[str, Callable[[int, int], list[Check]]] = {
    "norm-identities": suite_norm_identities,
    "digit-roundtrip": suite_digit_roundtrip,
    "lemma22": suite_recursion_identity,
    "tailbound": suite_tailbound,
    "inclusion-chain": suite_inclusion_chain,
    "eggleston": suite_bounded_ratio,
    "theorem32-witness": suite_witness_pipeline,
    "theorem33-chain": suite_divisor_chains,
    "theorem41-dichotomy": suite_dichotomy,
}

# scale meaning per suite: q bound, sample counts, streams, chains, corpus size
DEFAULT_SCALE = {
    "norm-identities": 200,
    "digit-roundtrip": 1000,
    "lemma22": 1000,
    "tailbound": 1000,
    "inclusion-chain": 50,
    "eggleston": 500,
    "theorem32-witness": 100,
    "theorem33-chain": 20,
    "theorem41-dichotomy": 50,
}


def run_suite(name: str, seed: int = 0, scale: int | None = None) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    scale = DEFAULT_SCALE[name] if scale is None else scale
    t0 = time.perf_counter()
    checks = SUITES[name](seed, scale)
    return SuiteResult(name, seed, scale, checks, time.perf_counter() - t0)


def _run(args):
    return run_suite(*args)


def run_suites(names: list[str], seed: int = 0, scale: int | None = None, jobs: int = 1) -> list[SuiteResult]:
    """Run suites, in parallel when ``jobs > 1``; results keep the input order."""
    args = [(n, seed, scale) for n in names]
    if jobs <= 1 or len(names) == 1:
        return [_run(a) for a in args]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run, args))
