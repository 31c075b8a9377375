from fractions import Fraction
from math import factorial

import pytest

from arithtype import Affine, BaseOnly, Constant, Explicit, Full, GapThird, MultiplierSchedule, Periodic, RatioStream
from arithtype.sequences import (
    BlockSparse,
    ExplicitSet,
    QClass,
    block_cover,
    characterizing_schedule,
    classify,
    minimal_blocks,
)

from oracles import flat_terms


def zeta():
    return MultiplierSchedule(RatioStream((), Affine(1, 1)), Full())


@pytest.mark.parametrize("stream,n,expected", [
    (RatioStream((), Constant(2)), 5, 2),
    (RatioStream((), Affine(1, 1)), 3, 4),
    (RatioStream((), Periodic((2, 3))), 4, 3),
    (RatioStream((5, 7), Constant(2)), 2, 7),
    (RatioStream((5, 7), Affine(1, 1)), 3, 4),
])
def test_ratio_examples(stream, n, expected):
    assert stream.ratio(n) == expected


def test_ratio_rejects_zero_index():
    with pytest.raises(ValueError):
        RatioStream((), Constant(2)).ratio(0)


@pytest.mark.parametrize("prefix,tail", [
    ((1,), Constant(2)),
    ((), Constant(1)),
    ((), Periodic((2, 1))),
    ((), Affine(1, 0)),
    ((), Affine(-1, 50)),
])
def test_malformed_streams_rejected_at_construction(prefix, tail):
    with pytest.raises(ValueError):
        RatioStream(prefix, tail)


@pytest.mark.parametrize("stream,n,expected", [
    (RatioStream((), Affine(1, 1)), 4, 120),
    (RatioStream((), Affine(1, 1)), 0, 1),
    (RatioStream((), Constant(2)), 10, 1024),
    (RatioStream((), Constant(3)), 0, 1),
])
def test_term_examples(stream, n, expected):
    assert stream.term(n) == expected


def test_factorial_terms():
    s = RatioStream((), Affine(1, 1))
    assert [s.term(k) for k in range(12)] == [factorial(k + 1) if k else 1 for k in range(12)]


def test_flat_examples():
    assert zeta().terms(7) == [1, 2, 4, 6, 12, 18, 24]
    assert MultiplierSchedule(RatioStream((), Constant(2)), BaseOnly()).terms(4) == [1, 2, 4, 8]
    g = MultiplierSchedule(RatioStream((), Constant(6)), GapThird())
    assert g.multipliers(1) == (1, 3, 4, 5)
    assert g.multipliers(7) == (1, 3, 4, 5)
    assert g.terms(9) == [1, 3, 4, 5, 6, 18, 24, 30, 36]


def test_flat_matches_enumeration_oracle():
    ratios = [k + 1 for k in range(1, 9)]
    expected = flat_terms(ratios, [range(1, q) for q in ratios])
    assert zeta().terms(len(expected)) == expected


def test_block_indexing_starts_at_one():
    m = zeta()
    assert m.block_start(1) == 1
    assert m.block_end(0) == 0
    assert m.block_of(1) == (1, 1)
    assert m.block_of(2) == (2, 1)
    assert m.block_of(3) == (2, 2)
    assert m.flat_term(3) == 4
    for k in range(1, 30):
        assert m.flat_term(m.block_start(k)) == m.base.term(k - 1)
        assert m.block_end(k) == k * (k + 1) // 2


def test_gap_third_degenerate_q2():
    assert GapThird().multipliers(1, 2) == (1,)
    assert GapThird().multipliers(1, 3) == (1, 2)


def test_explicit_missing_block():
    m = MultiplierSchedule(RatioStream((), Constant(5)), Explicit({1: (1, 2)}))
    assert m.multipliers(1) == (1, 2)
    with pytest.raises(LookupError):
        m.multipliers(2)


def test_explicit_default_rule():
    m = MultiplierSchedule(RatioStream((), Constant(5)), Explicit({1: (1, 2)}, BaseOnly()))
    assert m.terms(4) == [1, 2, 5, 25]


def test_explicit_requires_one_and_range():
    s = RatioStream((), Constant(5))
    with pytest.raises(ValueError):
        MultiplierSchedule(s, Explicit({1: (2, 3)})).multipliers(1)
    with pytest.raises(ValueError):
        MultiplierSchedule(s, Explicit({1: (1, 5)})).multipliers(1)


def test_block_cover_examples():
    m = zeta()
    assert block_cover(m, ExplicitSet((1, 2))).elements == (1, 2, 3)
    assert block_cover(m, ExplicitSet(())).elements == ()
    b = MultiplierSchedule(RatioStream((), Affine(1, 1)), BaseOnly())
    assert block_cover(b, ExplicitSet((3,))).elements == (3,)
    assert minimal_blocks(m, [2, 3, 5]).elements == (2, 3)


def test_block_cover_infinite_set():
    m = zeta()
    evens = BlockSparse(lambda k: k % 2 == 0, 10)
    cover = block_cover(m, evens)
    assert cover.infinite
    assert cover.members(1, 10) == [2, 3, 7, 8, 9, 10]


def test_classify_examples():
    all_n = BlockSparse(lambda n: True, 100)
    evens = BlockSparse(lambda n: n % 2 == 0, 100)
    assert classify(all_n, RatioStream((), Constant(3)), 100).kind is QClass.Q_BOUNDED
    assert classify(all_n, RatioStream((), Affine(1, 1)), 100).kind is QClass.Q_DIVERGENT
    c = classify(evens, RatioStream((), Periodic((2, 5))), 100)
    assert c.kind is QClass.Q_BOUNDED and c.max_ratio == 5 and c.min_ratio == 5
    assert classify(ExplicitSet((1, 2)), RatioStream((), Affine(1, 1)), 100).kind is QClass.INCONCLUSIVE
    assert classify(ExplicitSet((1, 2)), RatioStream((), Constant(2)), 100).kind is QClass.Q_BOUNDED


def test_classify_rejects_bad_horizon():
    with pytest.raises(ValueError):
        classify(ExplicitSet(()), RatioStream((), Constant(2)), 0)


def test_characterizing_schedule_examples():
    m = characterizing_schedule([2, 6, 24, 120])
    assert m.base.ratios(1, 4) == [2, 3, 4, 5]
    assert m.terms(7) == [1, 2, 4, 6, 12, 18, 24]
    assert characterizing_schedule([2, 4, 8]).terms(3) == [1, 2, 4]
    es = characterizing_schedule([2, 6, 24]).terms(6)
    assert max(Fraction(b, a) for a, b in zip(es, es[1:])) == 2


@pytest.mark.parametrize("orders", [[], [2, 5], [4, 2], [2, 2], [1, 2]])
def test_characterizing_schedule_rejects(orders):
    with pytest.raises(ValueError):
        characterizing_schedule(orders)


def test_index_set_shift_and_members():
    A = ExplicitSet((1, 4, 9))
    assert A.shift(1).members(1, 20) == [2, 5, 10]
    assert A.shift(-1).members(1, 20) == [3, 8]
    assert 4 in A and 5 not in A
    with pytest.raises(ValueError):
        ExplicitSet((3, 2))
