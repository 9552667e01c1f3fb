from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubechar import (
    BinaryWord,
    Dyadic,
    NiceSet,
    measure,
    nice_intersect,
    nice_product,
    nice_union,
)

levels = st.integers(0, 6)
nice_sets = levels.flatmap(
    lambda k: st.builds(NiceSet, st.just(k), st.integers(0, (1 << (1 << k)) - 1))
)


def brute_members(a: NiceSet, level: int):
    """Oracle membership: lift by unpacking suffix bits by hand."""
    assert level >= a.level
    out = set()
    for i in range(1 << level):
        head = i & ((1 << a.level) - 1)
        if a.mask >> head & 1:
            out.add(i)
    return out


# -- BinaryWord -------------------------------------------------------------


@given(st.integers(1, 12).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, 2**n - 1))))
def test_word_round_trip(pair):
    level, index = pair
    w = BinaryWord(level, index)
    assert BinaryWord.from_bits(w.bits) == w


def test_word_convention_little_endian():
    # coordinate 1 is the least significant bit
    w = BinaryWord(3, 1)
    assert w.bits == (1, 0, 0)
    assert str(w) == "100"
    with pytest.raises(ValueError):
        BinaryWord(2, 4)


# -- measure ----------------------------------------------------------------


def test_measure_examples():
    assert measure(NiceSet.full(3)) == Dyadic(1)
    assert measure(NiceSet.empty(2)) == Dyadic(0)
    assert measure(NiceSet.from_indices(1, [0])) == Dyadic(1, 1)


@given(nice_sets, st.integers(0, 3))
def test_lift_preserves_measure(a, extra):
    lifted = a.lift(a.level + extra)
    assert measure(lifted) == measure(a)
    assert lifted == a  # denotational equality


@given(nice_sets)
def test_canonical_is_minimal_and_equal(a):
    c = a.canonical()
    assert c == a
    if c.level > 0:
        half = 1 << (c.level - 1)
        assert c.mask >> half != c.mask & ((1 << half) - 1)


@given(nice_sets, nice_sets)
def test_inclusion_exclusion(a, b):
    lhs = measure(nice_intersect(a, b)).as_fraction() + measure(nice_union(a, b)).as_fraction()
    assert lhs == measure(a).as_fraction() + measure(b).as_fraction()


# -- intersect / product ------------------------------------------------------


def test_intersect_examples():
    x1_zero = NiceSet.from_indices(1, [0])
    x1_one = NiceSet.from_indices(1, [1])
    assert nice_intersect(x1_zero, x1_one).is_empty
    assert nice_intersect(x1_zero, x1_zero) == x1_zero

    x2_zero = NiceSet.from_indices(2, [0, 1])
    both = nice_intersect(x1_zero, x2_zero)
    # enumerate the four level-2 words by hand: need x1=0 and x2=0
    expected = {i for i in range(4) if i & 1 == 0 and i >> 1 & 1 == 0}
    assert set(both.members()) == expected
    assert measure(both) == Dyadic(1, 2)


@given(nice_sets, nice_sets)
def test_intersect_against_oracle(a, b):
    level = max(a.level, b.level)
    got = nice_intersect(a, b)
    assert set(got.members()) == brute_members(a, level) & brute_members(b, level)


def test_product_examples():
    c = NiceSet.from_indices(1, [0])
    d = NiceSet.from_indices(1, [1])
    p = nice_product(c, d)
    assert p.level == 2
    assert set(p.members()) == {2}  # word 01: x1=0, x2=1
    assert measure(p) == Dyadic(1, 2)

    assert measure(nice_product(NiceSet.full(1), d)) == measure(d)

    d2 = NiceSet.from_indices(2, [0, 3])  # {00, 11}
    p2 = nice_product(c, d2)
    # oracle: enumerate level-3 words with x1=0 and (x2,x3) in {00,11}
    expected = {i for i in range(8) if i & 1 == 0 and (i >> 1) in (0, 3)}
    assert set(p2.members()) == expected
    assert measure(p2) == Dyadic(1, 1) * Dyadic(1, 1)  # 1/2 * 1/2


@given(nice_sets, nice_sets)
def test_product_measure_multiplies(c, d):
    if c.level + d.level <= 12:
        assert measure(nice_product(c, d)).as_fraction() == (
            measure(c).as_fraction() * measure(d).as_fraction()
        )


def test_text_round_trip():
    a = NiceSet(2, 0b1010)
    assert NiceSet.from_text(a.text()) == a
    assert NiceSet.from_text("k=2:0xA") == a
    with pytest.raises(ValueError):
        NiceSet.from_text("2:1010")


def test_measure_is_fraction_compatible():
    assert measure(NiceSet(3, 0b10110100)).as_fraction() == Fraction(4, 8)
