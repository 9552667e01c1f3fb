from fractions import Fraction

import pytest

from cubechar import (
    Alpha,
    CapExceededError,
    Dyadic,
    NiceSet,
    PreconditionError,
    compose,
    embed_head,
    fixed_fraction,
    identity,
    matrix_character,
    odometer,
    projection_identity_checks,
    random_permutation,
    rep_matrix,
    scan_is_constant,
    stabilization_scan,
    tensor_character,
    transposition,
    weighted_inner,
    xi_vector,
)
from cubechar.gnsfinite import TruncatedRep


def test_truncated_rep_geometry():
    rep = TruncatedRep(2)
    assert rep.dimension == 16
    assert rep.weight() == Dyadic(1, 2)
    assert rep.point(rep.point_index(3, 1)) == (3, 1)


def test_rep_is_identity_on_identity():
    r = rep_matrix(identity(2))
    assert r.images == tuple(range(16))


def test_rep_homomorphism_exhaustive_level1():
    from cubechar import all_permutations

    group = list(all_permutations(1))
    for s in group:
        for t in group:
            assert rep_matrix(compose(s, t)).images == rep_matrix(s).compose(rep_matrix(t)).images


def test_rep_homomorphism_random_level2(rng, s22):
    for _ in range(30):
        s = random_permutation(2, rng)
        t = random_permutation(2, rng)
        assert rep_matrix(compose(s, t)).images == rep_matrix(s).compose(rep_matrix(t)).images
        assert rep_matrix(s).compose(rep_matrix(s.inverse())).images == tuple(range(16))


def test_rep_of_odometer_has_order_four():
    assert rep_matrix(odometer(2)).order() == 4


def test_xi_is_a_unit_vector():
    for n in range(1, 5):
        xi = xi_vector(n)
        assert weighted_inner(xi, xi, n) == Dyadic(1)


def test_matrix_character_examples(s22):
    assert matrix_character(identity(3)) == Dyadic(1)
    assert matrix_character(odometer(3)) == Dyadic(0)
    for s in s22:
        assert matrix_character(s) == fixed_fraction(s)


def test_matrix_character_random_level3(rng):
    for _ in range(50):
        s = random_permutation(3, rng)
        assert matrix_character(s) == fixed_fraction(s)


def test_level_inclusion_consistency(rng):
    # the level-(n+1) truncation restricted to level-n elements agrees
    for _ in range(20):
        s = random_permutation(2, rng)
        assert matrix_character(embed_head(s, 3)) == matrix_character(s)


# -- tensor powers ---------------------------------------------------------------


def test_tensor_examples():
    t1 = transposition(1, 0, 1)
    assert tensor_character(t1, 1) == matrix_character(t1)
    assert tensor_character(t1, 2, mode="explicit") == Dyadic(0)
    s = transposition(2, 1, 3)  # fixed fraction 1/2
    assert tensor_character(s, 3) == Dyadic(1, 3)  # explicit at dimension 4096


def test_tensor_cap():
    with pytest.raises(CapExceededError):
        tensor_character(odometer(4), 2, mode="explicit")
    # product mode still works past the cap
    assert tensor_character(odometer(4), 2, mode="product") == Dyadic(0)


def test_tensor_matches_power(rng):
    for _ in range(10):
        s = random_permutation(2, rng)
        for k in (1, 2, 3):
            assert tensor_character(s, k) == matrix_character(s) ** k


# -- stabilization ------------------------------------------------------------------


def test_stabilization_examples():
    e = identity(1)
    half = NiceSet.from_indices(1, [0])
    values = stabilization_scan(Alpha(2), e, e, half, [2, 3, 4, 5])
    assert scan_is_constant(values)
    assert values[0] == Dyadic(1, 1) ** 2

    full = NiceSet.full(1)
    g = odometer(2)
    values = stabilization_scan(Alpha(1), g, g, full, [3, 4, 5])
    assert scan_is_constant(values)
    assert values[0] == Dyadic(1)  # flip is the identity, g^-1 g = e


def test_stabilization_random(rng):
    a = NiceSet.from_indices(1, [1])
    for alpha in (Alpha(1), Alpha(2), Alpha(Fraction(3, 2))):
        for _ in range(10):
            g1 = random_permutation(2, rng)
            g2 = random_permutation(2, rng)
            values = stabilization_scan(alpha, g1, g2, a, range(3, 7))
            assert scan_is_constant(values)


def test_stabilization_preconditions():
    e = identity(2)
    with pytest.raises(PreconditionError):
        stabilization_scan(Alpha(1), e, e, NiceSet.full(1), [2])  # m not above level
    with pytest.raises(PreconditionError):
        stabilization_scan(Alpha(1), e, e, NiceSet.full(1), [])


# -- projection identities -------------------------------------------------------------


def test_projection_identities_examples():
    half = NiceSet.from_indices(1, [0])
    other = NiceSet.from_indices(1, [1])

    report = projection_identity_checks(Alpha(1), half, half, half, other)
    assert report.ok  # idempotent intersection

    report = projection_identity_checks(Alpha(1), half, other, half, other)
    assert report.ok
    assert report.intersection_value == "0"  # disjoint halves

    report = projection_identity_checks(Alpha(2), half, other, half, other)
    assert report.ok
    assert report.product_value == "1/16"  # (1/4)^2


def test_projection_identities_real_alpha():
    a = NiceSet(2, 0b0111)
    b = NiceSet(2, 0b1010)
    report = projection_identity_checks(Alpha(Fraction(3, 2)), a, b, a, b)
    assert report.ok
