"""Exact spectral coordinate arithmetic, parsing and predicates."""
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from yqchar.coords import Coord, coord, parse_coord

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=9)


def test_construction_and_equality():
    assert Coord(3) == 3 == Fraction(3)
    assert Coord(Fraction(1, 2)) != Coord(Fraction(1, 3))
    assert Coord.var("k") == Coord.var("k")
    assert Coord.var("k") != Coord.var("j")
    assert Coord.var("k", 0) == Coord(0)


def test_arithmetic():
    k = Coord.var("k")
    assert (k + 1) - 1 == k
    assert k - k == 0
    assert (k * 2) / 2 == k
    assert -(k + Fraction(1, 2)) == Coord.var("k", -1) - Fraction(1, 2)
    assert 1 + k == k + 1
    assert 3 - k == -(k - 3)


def test_immutable():
    with pytest.raises(AttributeError):
        coord(1).rat = Fraction(2)


def test_half_integer_and_genericity():
    assert coord("3/2").is_half_integer()
    assert coord(-2).is_half_integer()
    assert not coord("1/3").is_half_integer()
    assert coord("1/3").is_generic()
    assert coord("k").is_generic()
    assert not (coord("k") - coord("k")).is_generic()


@pytest.mark.parametrize("text", ["-3/2", "k", "2k", "k/3", "1/2+k", "-1+k/2", "x-k", "0"])
def test_parse_format_round_trip(text):
    c = parse_coord(text)
    assert parse_coord(str(c)) == c


def test_parse_errors():
    for bad in ["", "1//2", "k+", "2 3"]:
        with pytest.raises(ValueError):
            parse_coord(bad)


def test_sort_key_is_deterministic_total_order():
    vals = [coord(v) for v in ("0", "-3/2", "k", "1/2+k", "2k")]
    once = sorted(vals)
    assert sorted(reversed(vals)) == once


@given(rationals, rationals)
def test_rational_embedding_is_homomorphic(a, b):
    assert Coord(a) + Coord(b) == Coord(a + b)
    assert Coord(a) - Coord(b) == Coord(a - b)
    assert Coord(a) * b == Coord(a * b)


@given(rationals, rationals, rationals)
def test_symbolic_linear_arithmetic(a, b, c):
    k = Coord.var("k")
    lhs = (k * a + b) + (k * c)
    assert lhs == Coord(b, (("k", a + c),))
    assert hash(lhs) == hash(Coord(b, (("k", a + c),)))
