import pytest

from cubechar import (
    CycleType,
    PreconditionError,
    compose,
    construct_si,
    cycle_type,
    embed_head,
    fixed_set,
    from_cycles,
    identity,
    lemma_g1,
    minimal_level,
    mk_generators,
    odometer,
    random_permutation,
    transposition,
    verify_si_properties,
)
from cubechar.perm import table_cycle_lengths


# -- lemma pairs -------------------------------------------------------------


def test_lemma_g1_k5():
    pair = lemma_g1(5, 8)
    assert sorted(table_cycle_lengths(pair.g1)) == [1, 1, 1, 5]
    assert sorted(table_cycle_lengths(pair.g2)) == [1, 1, 1, 5]
    assert sorted(table_cycle_lengths(pair.quotient())) == [4, 4]

    pair = lemma_g1(5, 6)
    assert sorted(table_cycle_lengths(pair.quotient())) == [1, 1, 2, 2]


def test_lemma_g1_k7_and_k9():
    for k in (7, 9):
        big = lemma_g1(k, 2 * k - 2)
        assert sorted(table_cycle_lengths(big.quotient())) == [k - 1, k - 1]
        small = lemma_g1(k, 2 * k - 4)
        assert sorted(table_cycle_lengths(small.quotient())) == [1, 1, k - 3, k - 3]


def test_lemma_g1_validation():
    with pytest.raises(PreconditionError):
        lemma_g1(4, 6)  # even k
    with pytest.raises(PreconditionError):
        lemma_g1(3, 4)  # too small
    with pytest.raises(PreconditionError):
        lemma_g1(5, 7)  # degree not in the menu


# -- generators on full cubes --------------------------------------------------


def test_mk_generators_even_k():
    gen = mk_generators(2, 2)
    assert cycle_type(gen.g1) == CycleType.from_lengths([2, 2])
    quotient = compose(gen.g1, gen.g2.inverse())
    assert cycle_type(quotient) == CycleType.from_lengths([2, 2])


def test_mk_generators_k3():
    gen = mk_generators(3, 2)
    assert cycle_type(gen.g1) == CycleType.from_lengths([3, 1])
    assert cycle_type(gen.g2) == CycleType.from_lengths([3, 1])
    quotient = compose(gen.g1, gen.g2.inverse())
    assert cycle_type(quotient) == CycleType.from_lengths([2, 2])


def test_mk_generators_k5_decomposition():
    gen = mk_generators(5, 5)
    assert gen.block_decomposition == (4, 1)  # 2^5 = 6*4 + 8*1
    lengths = set(table_cycle_lengths(gen.g1.images))
    assert lengths <= {1, 5}


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6, 7])
def test_mk_generators_invariants_at_minimal_level(k):
    gen = mk_generators(k, minimal_level(k))  # constructor validates eagerly
    for g in (gen.g1, gen.g2):
        assert all(k % c == 0 for c in table_cycle_lengths(g.images))


def test_mk_generators_level_checks():
    with pytest.raises(PreconditionError):
        mk_generators(5, 4)  # below M(5) = 5
    with pytest.raises(PreconditionError):
        mk_generators(2, 1)


def test_decomposition_exists_for_all_feasible_levels():
    for k in (5, 7, 9):
        for m in range(k, k + 3):
            mk_generators(k, m)  # would raise FalsificationError if the scan failed


# -- the s_a families ------------------------------------------------------------


def test_family_size_and_level():
    s = transposition(1, 0, 1)
    fam = construct_si(s, 1)
    assert len(fam) == 2
    assert fam.level == 1 + 2 * 1  # ord 2 everywhere moved, M(2) = 2
    fam = construct_si(s, 2)
    assert len(fam) == 4 and fam.level == 5


def test_family_matches_case_formula(rng):
    # pointwise: (x, y) -> (x, y) on Fix(s), else (s(x), g_a(y))
    s = odometer(2)
    fam = construct_si(s, 1)
    m = fam.tail_block_level
    gens = {1: fam.generators[4].g1, 2: fam.generators[4].g2}
    for label, member in zip([(1,), (2,)], fam):
        for z in range(1 << member.level):
            x, y = z & 3, z >> 2
            got = member.apply(z)
            expected = s.images[x] | (gens[label[0]].images[y] << 2)
            assert got == expected


def test_identity_head_is_vacuous():
    fam = construct_si(identity(2), 2)
    assert len(fam) == 4
    for member in fam:
        assert member.densify() == identity(2)
    report = verify_si_properties(identity(2), fam)
    assert report.ok


def test_r_zero_edge_case():
    s = odometer(2)
    fam = construct_si(s, 0)
    assert len(fam) == 1
    assert fam[0].densify() == s
    report = verify_si_properties(s, fam)
    assert report.ok


@pytest.mark.parametrize("r", [1, 2])
def test_families_verify_for_small_orders(rng, r):
    heads = [transposition(1, 0, 1), odometer(2), random_permutation(2, rng)]
    for s in heads:
        fam = construct_si(s, r)
        assert len(fam) == 1 << r
        report = verify_si_properties(s, fam)
        assert report.ok, report.to_json_dict()
        # product form agrees with dense tables at these levels
        for member in fam:
            dense = member.densify()
            assert cycle_type(dense) == member.cycle_type()
            assert member.fixed_point_count() == len(fixed_set(dense))


def test_family_conjugate_to_lifted_head():
    s = transposition(1, 0, 1)
    fam = construct_si(s, 1)
    lifted = embed_head(s, fam.level)
    for member in fam:
        assert member.cycle_type() == cycle_type(lifted)


def test_verifier_flags_tampered_families():
    s = odometer(2)
    fam = list(construct_si(s, 1))
    # swap in a member built from the wrong head: conjugacy must fail
    other = construct_si(transposition(2, 0, 1), 1)
    report = verify_si_properties(s, [fam[0], other[0]])
    assert not report.ok


def test_five_cycles_expose_the_fixed_point_gap():
    """Heads with 5-cycles route through 2k-4 = 6-point blocks whose quotient
    keeps two fixed points, so the quotient fixes extra points beyond
    Fix(s) x tail.  The verifier must report this honestly rather than
    declare the family valid: conjugacy and even-cycle properties hold, the
    fixed-set property does not."""
    s = from_cycles(3, [(0, 1, 2, 3, 4)])
    fam = construct_si(s, 1)
    assert fam.generators[5].block_decomposition == (4, 1)
    report = verify_si_properties(s, fam)
    assert not report.ok
    assert not report.conjugacy_failures
    assert not report.even_failures
    assert report.fix_failures
