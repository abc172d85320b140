"""Group-core: constructors, conjugacy, centralizers, tuple orbits, keys."""

from __future__ import annotations

import itertools
import random

import pytest

from inertia import (
    GroupRegistry,
    InvalidCayleyTableError,
    OrderCapExceededError,
    Permutation,
    abelian_group,
    abelian_invariant_factors,
    are_isomorphic,
    canonical_key,
    cyclic_group,
    dihedral_group,
    direct_product,
    group_from_cayley_table,
    group_from_generators,
    group_from_permutation_text,
    quaternion_group,
    symmetric_group,
    trivial_group,
)
from inertia.perms import parse_generators, parse_permutation


def brute_force_commuting_tuples(g, r):
    """Independent census of ordered distinct pairwise-commuting r-tuples."""
    count = 0
    for t in itertools.permutations(range(g.order), r):
        if all(g.mul(a, b) == g.mul(b, a) for a, b in itertools.combinations(t, 2)):
            count += 1
    return count


# ---------------------------------------------------------------------------
# constructors


def test_closure_of_empty_generating_set_is_trivial():
    g = group_from_generators([])
    assert g.order == 1


def test_closure_s3_and_d4():
    s3 = group_from_generators(parse_generators("(0 1 2), (0 1)"))
    assert s3.order == 6
    d4 = group_from_generators(parse_generators("(0 1 2 3), (0 2)"))
    assert d4.order == 8
    assert d4.identity == 0


def test_closure_respects_order_cap():
    gens = parse_generators("(0 1 2 3 4), (0 1)")
    with pytest.raises(OrderCapExceededError):
        group_from_generators(gens, order_cap=100)


def test_cayley_table_trivial_and_z4():
    assert group_from_cayley_table([[0]]).order == 1
    z4 = group_from_cayley_table([[(a + b) % 4 for b in range(4)] for a in range(4)])
    assert z4.order == 4
    assert sorted(z4.element_orders()) == [1, 2, 4, 4]


def test_cayley_table_rejects_broken_entry():
    table = [[(a + b) % 4 for b in range(4)] for a in range(4)]
    table[1][2] = 1  # breaks associativity/cancellation
    with pytest.raises(InvalidCayleyTableError) as err:
        group_from_cayley_table(table)
    assert err.value.witness is not None


def test_cayley_table_rejects_non_square_and_out_of_range():
    with pytest.raises(InvalidCayleyTableError):
        group_from_cayley_table([[0, 1], [1]])
    with pytest.raises(InvalidCayleyTableError):
        group_from_cayley_table([[0, 7], [1, 0]])


def test_permutation_text_grammar():
    g = group_from_permutation_text("(0 1 2)(3 4), (0 1)")
    assert g.order % 6 == 0
    h = group_from_permutation_text("(1 2 3), (1 2)", one_based=True)
    assert h.order == 6


def test_permutation_parsing_round_trip():
    p = parse_permutation("(0 2 4)(1 3)")
    assert parse_permutation(p.cycle_string()) == p
    assert parse_permutation("()", degree=3) == Permutation.identity(3)


# ---------------------------------------------------------------------------
# conjugacy, centralizers, centers


def test_s3_conjugacy_classes():
    s3 = symmetric_group(3)
    classes = s3.conjugacy_classes()
    assert [len(c.members) for c in classes] == [1, 2, 3]
    assert sorted(c.centralizer.group.order for c in classes) == [2, 3, 6]


def test_d4_conjugacy_classes():
    d4 = dihedral_group(4)
    classes = d4.conjugacy_classes()
    assert len(classes) == 5
    assert sorted(c.centralizer.group.order for c in classes) == [4, 4, 4, 8, 8]


def test_abelian_classes_are_singletons():
    a = abelian_group([2, 4])
    classes = a.conjugacy_classes()
    assert len(classes) == 8
    assert all(len(c.members) == 1 for c in classes)
    assert all(c.centralizer.group.order == 8 for c in classes)


def test_class_equation():
    for g in (symmetric_group(4), dihedral_group(6), quaternion_group()):
        sizes = [len(c.members) for c in g.conjugacy_classes()]
        assert sum(sizes) == g.order
        assert all(g.order % s == 0 for s in sizes)


def test_centralizer_of_identity_is_whole_group():
    g = dihedral_group(4)
    assert g.centralizer([g.identity]).group.order == g.order


def test_centralizer_of_rotation_in_d4_is_cyclic_of_order_4():
    d4 = dihedral_group(4)
    r = next(a for a in d4.elements() if d4.element_order(a) == 4)
    cent = d4.centralizer([r]).group
    assert cent.order == 4
    assert max(cent.element_orders()) == 4  # cyclic, not Klein


def test_centralizer_of_transposition_in_s3():
    s3 = symmetric_group(3)
    t = next(a for a in s3.elements() if s3.element_order(a) == 2)
    assert s3.centralizer([t]).group.order == 2


def test_centralizer_is_intersection_of_pointwise_centralizers():
    g = dihedral_group(6)
    rng = random.Random(7)
    for _ in range(10):
        subset = rng.sample(range(g.order), 3)
        joint = set(g.centralizer(subset).embedding)
        pointwise = set(g.elements())
        for s in subset:
            pointwise &= set(g.centralizer([s]).embedding)
        assert joint == pointwise


def test_centers():
    assert dihedral_group(4).center().group.order == 2
    assert symmetric_group(3).center().group.order == 1
    a = abelian_group([3, 3])
    assert a.center().group.order == 9


def test_center_matches_singleton_class_count():
    for g in (dihedral_group(5), quaternion_group(), symmetric_group(4)):
        singletons = sum(1 for c in g.conjugacy_classes() if len(c.members) == 1)
        assert g.center().group.order == singletons


# ---------------------------------------------------------------------------
# products


def test_product_with_trivial_is_isomorphic():
    g = dihedral_group(4)
    assert are_isomorphic(direct_product(g, trivial_group()), g)


def test_z2_times_z2_has_exponent_2():
    v = direct_product(cyclic_group(2), cyclic_group(2))
    assert v.order == 4
    assert max(v.element_orders()) == 2


def test_z2_times_z3_is_cyclic_of_order_6():
    g = direct_product(cyclic_group(2), cyclic_group(3))
    assert g.order == 6
    assert max(g.element_orders()) == 6  # has a generator


def test_product_order_cap():
    with pytest.raises(OrderCapExceededError):
        direct_product(cyclic_group(200), cyclic_group(200))


# ---------------------------------------------------------------------------
# commuting tuple orbits


def test_s3_pair_orbits():
    s3 = symmetric_group(3)
    orbits = s3.commuting_tuple_orbits(2)
    assert len(orbits) == 5
    stab_orders = sorted(o.stabilizer.group.order for o in orbits)
    assert stab_orders == [2, 2, 3, 3, 3]


def test_s3_triple_orbits():
    s3 = symmetric_group(3)
    orbits = s3.commuting_tuple_orbits(3)
    assert len(orbits) == 3
    assert all(o.stabilizer.group.order == 3 for o in orbits)
    assert s3.commuting_tuple_orbits(4) == []


def test_empty_tuple_orbit():
    for g in (symmetric_group(3), cyclic_group(5)):
        orbits = g.commuting_tuple_orbits(0)
        assert len(orbits) == 1
        assert orbits[0].orbit_size == 1
        assert orbits[0].stabilizer.group.order == g.order


def test_orbit_stabilizer_and_total_count():
    for g in (symmetric_group(3), dihedral_group(4), quaternion_group()):
        for r in (1, 2, 3):
            orbits = g.commuting_tuple_orbits(r)
            for o in orbits:
                assert o.orbit_size * o.stabilizer.group.order == g.order
                assert len(set(o.representative)) == r
                for a, b in itertools.combinations(o.representative, 2):
                    assert g.mul(a, b) == g.mul(b, a)
            assert sum(o.orbit_size for o in orbits) == brute_force_commuting_tuples(g, r)


def test_abelian_tuple_orbit_census():
    a = abelian_group([2, 3])
    for r in range(0, 4):
        orbits = a.commuting_tuple_orbits(r)
        expected = 1
        for i in range(r):
            expected *= a.order - i
        assert len(orbits) == expected
        assert all(o.orbit_size == 1 for o in orbits)


def test_set_orbit_data_agrees_with_ordered_orbits():
    for g in (symmetric_group(3), dihedral_group(4), quaternion_group(), dihedral_group(5)):
        for r in (1, 2, 3):
            ordered = g.commuting_tuple_orbits(r)
            counted: dict[int, int] = {}
            for o in ordered:
                counted[o.stabilizer.group.order] = counted.get(o.stabilizer.group.order, 0) + 1
            via_sets: dict[int, int] = {}
            for _, pointwise, mult in g.commuting_set_orbit_data(r):
                via_sets[pointwise.group.order] = via_sets.get(pointwise.group.order, 0) + mult
            assert counted == via_sets


# ---------------------------------------------------------------------------
# isomorphism and canonical keys


def test_z4_not_isomorphic_to_klein():
    assert not are_isomorphic(cyclic_group(4), abelian_group([2, 2]))


def test_d4_from_perms_matches_d4_from_table():
    d4a = group_from_generators(parse_generators("(0 1 2 3), (0 2)"))
    d4b = dihedral_group(4)
    assert are_isomorphic(d4a, d4b)
    assert are_isomorphic(d4b, d4b)


def test_q8_vs_d4():
    assert not are_isomorphic(quaternion_group(), dihedral_group(4))


def test_s4_self_isomorphism_through_relabeling():
    s4 = symmetric_group(4)
    shuffled = group_from_generators(parse_generators("(0 1 2 3), (0 1)"))
    assert shuffled.order == 24
    assert are_isomorphic(s4, shuffled)


def test_abelian_invariant_factors():
    assert abelian_invariant_factors(cyclic_group(12)) == (12,)
    assert abelian_invariant_factors(abelian_group([2, 3])) == (6,)
    assert abelian_invariant_factors(abelian_group([2, 2, 2])) == (2, 2, 2)
    assert abelian_invariant_factors(abelian_group([4, 2])) == (2, 4)


def test_canonical_labels():
    reg = GroupRegistry()
    assert canonical_key(trivial_group(), reg).label == "trivial"
    assert canonical_key(cyclic_group(4), reg).label == "Z4"
    assert canonical_key(abelian_group([2, 2]), reg).label == "Z2 x Z2"
    assert canonical_key(dihedral_group(4), reg).label == "D4"
    assert canonical_key(symmetric_group(3), reg).label == "S3"
    assert canonical_key(dihedral_group(3), reg).label == "S3"  # same class
    assert canonical_key(quaternion_group(), reg).label == "Q8"
    assert canonical_key(direct_product(cyclic_group(2), cyclic_group(3)), reg).label == "Z6"


def test_first_seen_generic_label_is_stable():
    reg = GroupRegistry()
    a4 = group_from_generators(parse_generators("(0 1 2), (1 2 3)"))
    assert a4.order == 12
    key1 = canonical_key(a4, reg)
    relabeled = group_from_generators(parse_generators("(1 2 3), (0 2 3)"))
    key2 = canonical_key(relabeled, reg)
    assert key1 == key2
    assert key1.label.startswith("G12_")
