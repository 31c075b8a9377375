from fractions import Fraction

import pytest

from arithtype import CirclePoint, Constant, RatioStream, frac, from_digits, norm, scale_norm, supp, supp_q, to_digits
from arithtype.circle import parse_rational
from arithtype.digits import (
    DigitExpansion,
    PeriodicTail,
    PrescribedTail,
    TailUnknownError,
    UnknownTail,
    ZeroTail,
    frac_recursion,
    tail_bound_check,
)
from arithtype.sequences import Affine, Periodic

from oracles import dist, frac_part, greedy_digits, value

TWO = RatioStream((), Constant(2))


def fixed(*qs):
    return RatioStream(tuple(qs), Constant(2))


@pytest.mark.parametrize("r,expected", [
    (Fraction(7, 3), CirclePoint(1, 3)),
    (Fraction(-1, 4), CirclePoint(3, 4)),
    (Fraction(5), CirclePoint(0, 1)),
])
def test_frac_examples(r, expected):
    assert frac(r) == expected
    assert frac(r).as_fraction() == frac_part(r)


@pytest.mark.parametrize("x,expected", [(Fraction(5, 8), Fraction(3, 8)), (Fraction(0), 0), (Fraction(1, 3), Fraction(1, 3))])
def test_norm_examples(x, expected):
    assert norm(frac(x)) == expected == dist(x)


@pytest.mark.parametrize("r,x,expected", [
    (3, CirclePoint(1, 10), Fraction(3, 10)),
    (3, CirclePoint(1, 4), Fraction(1, 4)),
    (2, CirclePoint(1, 2), Fraction(0)),
])
def test_scale_norm_examples(r, x, expected):
    assert scale_norm(r, x) == expected == dist(r * x.as_fraction())


def test_circle_point_invariants():
    with pytest.raises(ValueError):
        CirclePoint(2, 4)
    with pytest.raises(ValueError):
        CirclePoint(3, 3)
    with pytest.raises(ValueError):
        CirclePoint(0, 5)
    assert CirclePoint.of(2, 4) == CirclePoint(1, 2)
    assert str(CirclePoint.of(-1, 3)) == "2/3"


def test_parse_rational():
    assert parse_rational(" 3/12 ") == Fraction(1, 4)
    assert parse_rational("5") == 5
    with pytest.raises(ValueError):
        parse_rational("0.5")


def test_to_digits_examples():
    d = to_digits(CirclePoint(1, 2), TWO, 4)
    assert d.window == (1, 0, 0, 0) and isinstance(d.tail, ZeroTail)
    d = to_digits(CirclePoint(1, 3), TWO, 6)
    assert d.window == (0, 1, 0, 1, 0, 1) and d.tail == PeriodicTail((0, 1))
    d = to_digits(CirclePoint(5, 8), fixed(2, 2, 2), 3)
    assert d.window == (1, 0, 1) and isinstance(d.tail, ZeroTail)


def test_to_digits_matches_greedy_oracle_past_window():
    s = RatioStream((3, 5), Periodic((2, 7, 4)))
    for q in range(2, 60):
        for p in range(q):
            d = to_digits(CirclePoint.of(p, q), s, 3)
            assert d.digits(1, 40) == greedy_digits(Fraction(p, q), s.ratios(1, 40))


def test_to_digits_affine_unknown_tail():
    d = to_digits(CirclePoint(1, 4), RatioStream((), Affine(2, 1)), 3)
    assert isinstance(d.tail, UnknownTail)
    with pytest.raises(TailUnknownError):
        d.digit(4)
    with pytest.raises(TailUnknownError):
        supp(d, 10)


def test_from_digits_examples():
    assert from_digits(DigitExpansion(fixed(2, 2, 2), (1, 0, 1))) == CirclePoint(5, 8)
    assert from_digits(DigitExpansion(TWO, ())) == CirclePoint(0, 1)
    assert from_digits(DigitExpansion(fixed(2, 3), (0, 2))) == CirclePoint(1, 3)
    with pytest.raises(ValueError):
        from_digits(DigitExpansion(TWO, (1,), PeriodicTail((1,))))


def test_from_digits_matches_oracle():
    s = fixed(3, 5, 7, 2)
    for digits in [(1, 2, 3, 1), (2, 4, 6, 1), (0, 0, 0, 1)]:
        assert from_digits(DigitExpansion(s, digits)).as_fraction() == value(digits, [3, 5, 7, 2])


def test_digit_range_enforced():
    with pytest.raises(ValueError):
        DigitExpansion(fixed(2, 3), (0, 3))
    bad = DigitExpansion(TWO, (), PrescribedTail(lambda n, q: q, 10))
    with pytest.raises(ValueError):
        bad.digit(1)


def test_supp_examples():
    d = DigitExpansion(fixed(2, 2, 2), (1, 0, 1))
    assert supp(d, 3).elements == (1, 3) and supp_q(d, 3).elements == (1, 3)
    d = to_digits(CirclePoint(1, 3), TWO, 2)
    sp, sq = supp(d, 40), supp_q(d, 40)
    assert sp.infinite and sq.infinite
    assert sp.members(1, 40) == list(range(2, 41, 2)) == sq.members(1, 40)
    z = DigitExpansion(TWO, ())
    assert supp(z, 10).elements == () and supp_q(z, 10).elements == ()


def test_frac_recursion_examples():
    assert frac_recursion(CirclePoint(5, 8), TWO, 2, 1) == Fraction(1, 4) == frac_part(Fraction(5, 4))
    assert frac_recursion(CirclePoint(0, 1), TWO, 3, 4) == 0
    assert frac_recursion(CirclePoint(1, 3), TWO, 2, 0) == Fraction(2, 3)
    with pytest.raises(ValueError):
        frac_recursion(CirclePoint(1, 3), TWO, 1, 0)


def test_tail_bound_examples():
    assert tail_bound_check(DigitExpansion(fixed(2, 2, 2), (1, 1, 1)), 2) == (Fraction(3, 8), Fraction(1, 2))
    assert tail_bound_check(DigitExpansion(fixed(2, 2, 2), (0, 0, 0)), 1) == (0, 1)
    total, bound = tail_bound_check(DigitExpansion(fixed(2, 3, 4), (1, 2, 3)), 1)
    assert (total, bound) == (Fraction(23, 24), 1) and bound - total == Fraction(1, 24)


def test_canonicity():
    assert to_digits(CirclePoint(1, 3), TWO, 2).is_canonical()
    all_max = DigitExpansion(TWO, (), PeriodicTail((1,)))
    assert not all_max.is_canonical()
    mixed = DigitExpansion(RatioStream((), Periodic((2, 3))), (), PeriodicTail((1, 1)))
    assert mixed.is_canonical()


def test_prescribed_known_until():
    d = DigitExpansion(TWO, (1,), PrescribedTail(lambda n, q: n % 2, 20))
    assert d.known_until == 20
    assert d.digit(20) == 0
    with pytest.raises(TailUnknownError):
        d.digit(21)
    assert d.truncate(5).window == (1, 0, 1, 0, 1)
