import math

import pytest

from cayleymaps.errors import BadParameter, CapExceeded, NotAGroup
from cayleymaps.groups import (
    ConjugacyClass,
    build_group_from_permutation_generators,
    build_group_from_table,
    centralizer,
    conjugacy_classes,
    direct_product,
    element_order,
    named_group,
    subgroup_closure,
)


def test_cyclic_tables():
    for n in (1, 2, 3, 7, 12):
        G = named_group("cyclic", n)
        assert G.order == n
        for a in range(n):
            for b in range(n):
                assert G.mul(a, b) == (a + b) % n
            assert G.mul(a, G.inv(a)) == 0


def test_dihedral_structure():
    G = named_group("dihedral", 12)
    assert G.order == 12
    # six rotations r0..r5, six reflections s0..s5, reflections are involutions
    assert G.names[:6] == ("r0", "r1", "r2", "r3", "r4", "r5")
    assert G.names[6:] == ("s0", "s1", "s2", "s3", "s4", "s5")
    for s in range(6, 12):
        assert G.mul(s, s) == 0
    assert element_order(G, 1) == 6
    assert not all(G.mul(a, b) == G.mul(b, a) for a in range(12) for b in range(12))


def test_dihedral_rejects_odd_order():
    with pytest.raises(BadParameter):
        named_group("dihedral", 7)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_symmetric_order_and_inverses(n):
    G = named_group("symmetric", n)
    assert G.order == math.factorial(n)
    for g in range(G.order):
        assert G.mul(g, G.inv(g)) == 0


def test_elementary_abelian_is_xor():
    G = named_group("elementary_abelian_2", 3)
    assert G.order == 8
    for a in range(8):
        for b in range(8):
            assert G.mul(a, b) == a ^ b


def test_named_group_unknown_family():
    with pytest.raises(BadParameter):
        named_group("quaternion-ish", 8)


def test_group_cap():
    with pytest.raises(CapExceeded):
        named_group("symmetric", 8)  # 40320 > default cap 5040
    with pytest.raises(CapExceeded):
        named_group("cyclic", 10, cap=5)
    assert named_group("cyclic", 10, cap=10).order == 10


def test_table_validation_rejects_junk():
    with pytest.raises(NotAGroup):
        build_group_from_table([])
    with pytest.raises(NotAGroup):
        build_group_from_table([[0, 1], [1, 2]])  # out of range
    with pytest.raises(NotAGroup):
        build_group_from_table([[0, 0], [1, 1]])  # rows not permutations
    # Z_4 written with the identity at position 1
    shifted = [[(a + b - 2) % 4 for b in range(4)] for a in range(4)]
    with pytest.raises(NotAGroup):
        build_group_from_table(shifted)


def test_table_validation_rejects_nonassociative_latin_square():
    # Latin square with two-sided identity 0 that fails associativity:
    # the smallest such quasigroups have order 5.
    ns = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(NotAGroup):
        build_group_from_table(ns)


def test_build_from_permutation_generators_matches_symmetric():
    gens = [(1, 0, 2), (0, 2, 1)]
    G = build_group_from_permutation_generators(gens)
    assert G.order == 6
    classes = sorted(len(c.members) for c in conjugacy_classes(G))
    assert classes == [1, 2, 3]


def test_conjugacy_classes_s3():
    G = named_group("symmetric", 3)
    classes = conjugacy_classes(G)
    assert sum(len(c.members) for c in classes) == 6
    assert sorted(len(c.members) for c in classes) == [1, 2, 3]
    for c in classes:
        assert isinstance(c, ConjugacyClass)
        assert c.representative == min(c.members)
        assert all(element_order(G, g) == c.element_order for g in c.members)


def test_conjugacy_classes_d6():
    G = named_group("dihedral", 12)
    sizes = sorted(len(c.members) for c in conjugacy_classes(G))
    assert sizes == [1, 1, 2, 2, 3, 3]


def test_conjugacy_classes_abelian_are_singletons():
    G = named_group("elementary_abelian_2", 3)
    assert all(len(c.members) == 1 for c in conjugacy_classes(G))


def test_element_order_against_powers():
    G = named_group("dihedral", 12)
    for g in range(G.order):
        o = element_order(G, g)
        assert G.power(g, o) == 0
        assert all(G.power(g, k) != 0 for k in range(1, o))


def test_centralizer_and_closure():
    G = named_group("dihedral", 12)
    # r3 is central in D6
    assert centralizer(G, [3]) == list(range(12))
    assert subgroup_closure(G, [1]) == [0, 1, 2, 3, 4, 5]
    assert subgroup_closure(G, [6, 7]) == list(range(12))
    assert subgroup_closure(G, []) == [0]


def test_direct_product_orders():
    A = named_group("cyclic", 2)
    B = named_group("cyclic", 3)
    G = direct_product(A, B)
    assert G.order == 6
    assert all(G.mul(a, b) == G.mul(b, a) for a in range(6) for b in range(6))
