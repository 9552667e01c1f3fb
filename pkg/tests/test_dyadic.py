from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubechar import Dyadic, parse_dyadic

dyadics = st.builds(
    Dyadic, st.integers(min_value=-(2**40), max_value=2**40), st.integers(0, 40)
)


def test_canonical_form():
    d = Dyadic(6, 3)
    assert (d.p, d.q) == (3, 2)
    assert Dyadic(0, 7).q == 0
    assert Dyadic(8, 2) == Dyadic(2, 0) == 2


def test_negative_exponent_rejected():
    with pytest.raises(ValueError):
        Dyadic(1, -1)


@given(dyadics)
def test_canonical_invariant(d):
    assert d.p % 2 == 1 or d.q == 0


@given(dyadics, dyadics)
def test_arithmetic_matches_fractions(a, b):
    assert (a + b).as_fraction() == a.as_fraction() + b.as_fraction()
    assert (a - b).as_fraction() == a.as_fraction() - b.as_fraction()
    assert (a * b).as_fraction() == a.as_fraction() * b.as_fraction()
    assert (a < b) == (a.as_fraction() < b.as_fraction())


@given(dyadics, st.integers(0, 8))
def test_powers(d, n):
    assert (d**n).as_fraction() == d.as_fraction() ** n


def test_zero_power_zero_is_one():
    assert Dyadic(0) ** 0 == Dyadic(1)


def test_int_mixing():
    assert Dyadic(1, 1) + 1 == Dyadic(3, 1)
    assert 2 * Dyadic(3, 2) == Dyadic(3, 1)
    assert Dyadic(4) == 4


def test_str_and_parse_round_trip():
    for d in (Dyadic(0), Dyadic(5), Dyadic(-3, 4), Dyadic(1, 1)):
        assert parse_dyadic(str(d)) == d
    assert str(Dyadic(1, 1)) == "1/2"
    assert str(Dyadic(3, 2)) == "3/4"
    assert parse_dyadic("5/2^3") == Dyadic(5, 3)
    with pytest.raises(ValueError):
        parse_dyadic("1/3")


def test_from_fraction():
    assert Dyadic.from_fraction(Fraction(3, 8)) == Dyadic(3, 3)
    with pytest.raises(ValueError):
        Dyadic.from_fraction(Fraction(1, 3))
