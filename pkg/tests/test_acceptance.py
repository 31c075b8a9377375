"""End-to-end acceptance criteria, each with a wall-clock budget.

Run alone with ``pytest tests/test_acceptance.py -v``; the terminal summary prints
one PASS/FAIL line per criterion.
"""
import math
import random
import time

import pytest

from arithtype import CirclePoint, Status, decide
from arithtype.membership import FiniteSupport
from arithtype.verify import FAIL, run_suite, zeta_qz_checks, zeta_schedule

SEED = 0


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def _assert_checks(checks, elapsed, limit):
    failed = [f"{c.name}: {c.detail}" for c in checks if c.status == FAIL]
    assert not failed, "; ".join(failed)
    assert elapsed < limit, f"took {elapsed:.2f}s, budget {limit}s"


def _suites(names, limit):
    results, elapsed = _timed(lambda: [run_suite(n, SEED) for n in names])
    _assert_checks([c for r in results for c in r.checks], elapsed, limit)


def test_criterion_01_factorial_prefix():
    def run():
        m = zeta_schedule()
        got = m.terms(50)
        # oracle: every r * k! with 1 <= r <= k, sorted
        oracle = sorted(r * math.factorial(k) for k in range(1, 12) for r in range(1, k + 1))[:50]
        ends = [(k, m.block_end(k), m.flat_term(m.block_end(k))) for k in range(1, 10)]
        return got, oracle, ends

    (got, oracle, ends), elapsed = _timed(run)
    assert got[:7] == [1, 2, 4, 6, 12, 18, 24]
    assert got == oracle
    for k, n, value in ends:
        assert n == k * (k + 1) // 2 and value == k * math.factorial(k)
    assert elapsed < 1


def test_criterion_02_digit_roundtrip():
    _suites(["digit-roundtrip"], 5)


def test_criterion_03_recursion_identity():
    _suites(["lemma22"], 5)


def test_criterion_04_norm_identities_and_tail_bound():
    _suites(["norm-identities", "tailbound"], 10)


def test_criterion_05_rationals_are_factorial_members():
    def run():
        checks = zeta_qz_checks(random.Random(SEED), 200)
        rng = random.Random(SEED + 1)
        m = zeta_schedule()
        agree = 0
        for _ in range(200):
            q = rng.randint(1, 10**4)
            v = decide(CirclePoint.of(1, q), m, horizon=20_000)
            c = v.certificate
            # oracle: the first k with q | (k+1)!, scanning a running product mod q
            k, f = 0, 1 % q
            while f:
                k += 1
                f = f * (k + 1) % q
            agree += v.status is Status.MEMBER and isinstance(c, FiniteSupport) and c.block == k
        return checks, agree

    (checks, agree), elapsed = _timed(run)
    assert agree == 200
    _assert_checks(checks, elapsed, 10)


def test_criterion_06_inclusion_chain():
    _suites(["inclusion-chain"], 30)


def test_criterion_07_bounded_ratio_countability():
    _suites(["eggleston"], 30)


def test_criterion_08_witness_pipeline():
    _suites(["theorem32-witness"], 30)


def test_criterion_09_divisor_chains():
    _suites(["theorem33-chain"], 30)


def test_criterion_10_gap_third_dichotomy():
    _suites(["theorem41-dichotomy"], 60)
