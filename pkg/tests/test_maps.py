import itertools

import pytest

from cayleymaps.cayley import build_flag_space, validate_cayley_set
from cayleymaps.errors import AxiomViolation, BadParameter, CapExceeded
from cayleymaps.fixtures import fixture
from cayleymaps.groups import named_group
from cayleymaps.maps import (
    canonical_side_class,
    conjugate_map,
    face_permutation,
    inventory,
    is_isomorphic,
    is_orientable,
    map_automorphisms,
    orientation_preserving_automorphisms,
    side_swap_group,
    validate_map,
)
from cayleymaps.rotations import (
    all_rotation_systems,
    build_dart_structure,
    build_twist_classes,
    realize,
    realize_signed,
    rotation_system_count,
    signs_of_twists,
    twists_of_signs,
)


def k3_space():
    G = named_group("cyclic", 3)
    return build_flag_space(G, validate_cayley_set(G, (1, 2)))


def default_rotation(D):
    return tuple(tuple(D.darts_at(v)) for v in range(D.vertex_count))


# ---------------------------------------------------------------------------
# Map axioms
# ---------------------------------------------------------------------------

def test_axiom_ii_checked_first():
    F = k3_space()
    D = build_dart_structure(F)
    P = list(realize(D, default_rotation(D), 0).P)
    P[0], P[1] = P[1], P[0]
    with pytest.raises(AxiomViolation) as ei:
        validate_map(F, P)
    assert ei.value.axiom == "ii" and ei.value.witness == 0


def test_axiom_i_alpha_is_not_a_map():
    F = k3_space()
    with pytest.raises(AxiomViolation) as ei:
        validate_map(F, F.alpha)
    assert ei.value.axiom == "i"


def test_axiom_iii_identity_is_not_transitive():
    F = k3_space()
    with pytest.raises(AxiomViolation) as ei:
        validate_map(F, tuple(range(F.flag_count)))
    assert ei.value.axiom == "iii"


def test_non_permutation_rejected():
    F = k3_space()
    with pytest.raises(BadParameter):
        validate_map(F, [0] * F.flag_count)
    with pytest.raises(BadParameter):
        validate_map(F, [0, 1])


# ---------------------------------------------------------------------------
# Inventory
# ---------------------------------------------------------------------------

def test_fig1_inventory():
    M = fixture("FIG1").map
    inv = inventory(M)
    assert len(inv.vertices) == 4
    assert inv.edge_count == 6
    assert len(inv.faces) == 2
    assert inv.face_lengths == (4, 8)
    assert inv.euler_characteristic == 0
    assert inv.orientable
    assert inv.genus == 1


def test_k3_untwisted_is_the_sphere():
    F = k3_space()
    D = build_dart_structure(F)
    M = realize(D, default_rotation(D), 0)
    inv = inventory(M)
    assert (len(inv.vertices), inv.edge_count, len(inv.faces)) == (3, 3, 2)
    assert inv.face_lengths == (3, 3)
    assert inv.euler_characteristic == 2
    assert inv.orientable and inv.genus == 0


def test_k3_all_plus_signs_is_the_projective_plane():
    # literal all-plus signs twist every edge: chi = 1, crosscap 1
    F = k3_space()
    D = build_dart_structure(F)
    M = realize_signed(D, default_rotation(D), (0,) * 2 * D.edge_count)
    inv = inventory(M)
    assert (len(inv.vertices), inv.edge_count, len(inv.faces)) == (3, 3, 1)
    assert inv.face_lengths == (6,)
    assert inv.euler_characteristic == 1
    assert not inv.orientable
    assert inv.genus == 1


def test_vertex_and_face_cycles_come_in_conjugate_pairs():
    M = fixture("FIG1").map
    F = M.flag_space
    inv = inventory(M)
    for cyc, conj in inv.vertices:
        assert sorted(F.alpha[f] for f in cyc) == sorted(conj)
    for cyc, conj in inv.faces:
        assert sorted(F.beta[f] for f in cyc) == sorted(conj)
    Pf = face_permutation(M)
    face_flags = sorted(f for pair in inv.faces for cyc in pair for f in cyc)
    assert face_flags == list(range(F.flag_count))
    assert sorted(Pf) == list(range(F.flag_count))


def test_euler_formula_across_twists():
    G = named_group("cyclic", 4)
    F = build_flag_space(G, validate_cayley_set(G, (1, 3)))
    D = build_dart_structure(F)
    T = build_twist_classes(D)
    for rho in all_rotation_systems(D):
        for t in T.representatives():
            inv = inventory(realize(D, rho, t))
            assert inv.euler_characteristic == len(inv.vertices) - inv.edge_count + len(inv.faces)
            assert inv.euler_characteristic <= 2
            if inv.orientable:
                assert inv.euler_characteristic % 2 == 0


# ---------------------------------------------------------------------------
# Automorphisms
# ---------------------------------------------------------------------------

def test_fig1_automorphisms_and_freeness():
    M = fixture("FIG1").map
    auts = map_automorphisms(M)
    assert len(auts) == 8
    assert len(orientation_preserving_automorphisms(M)) == 4
    # the action on flags is free: every orbit has the full group size
    for f in range(M.flag_space.flag_count):
        assert len({tau[f] for tau in auts}) == 8


def test_automorphisms_form_a_group():
    M = fixture("FIG1").map
    auts = set(map_automorphisms(M))
    for a in auts:
        for b in auts:
            assert tuple(a[b[f]] for f in range(len(a))) in auts


def test_isomorphism_reflexive_and_side_swap_invariant():
    M = fixture("FIG1").map
    assert is_isomorphic(M, M) is not None
    sigma = side_swap_group(M.flag_space).generators[0]
    M2 = conjugate_map(M, sigma)
    validate_map(M.flag_space, M2.P)
    assert is_isomorphic(M, M2) is not None


def test_canonical_side_class_idempotent_and_invariant():
    M = fixture("FIG1").map
    C = canonical_side_class(M)
    assert canonical_side_class(C).P == C.P
    for sigma in side_swap_group(M.flag_space).generators:
        assert canonical_side_class(conjugate_map(M, sigma)).P == C.P
    # two full side swaps compose; still the same class
    g = side_swap_group(M.flag_space).generators
    both = tuple(g[0][g[1][f]] for f in range(len(g[0])))
    assert canonical_side_class(conjugate_map(M, both)).P == C.P


def test_canonical_side_class_cap():
    M = fixture("FIG1").map
    with pytest.raises(CapExceeded):
        canonical_side_class(M, cap=4)


# ---------------------------------------------------------------------------
# Rotation systems and twists
# ---------------------------------------------------------------------------

def test_rotation_system_counts():
    for name, expect in (("K3", 1), ("C4", 1), ("C5", 1), ("CUBE", 256)):
        D = build_dart_structure(fixture(name).flag_space)
        assert rotation_system_count(D) == expect
        assert sum(1 for _ in all_rotation_systems(D)) == expect


def test_twist_class_rank_is_vertices_minus_one():
    for name in ("K3", "C4", "C5", "CUBE"):
        D = build_dart_structure(fixture(name).flag_space)
        T = build_twist_classes(D)
        assert T.rank == D.vertex_count - 1
        assert T.class_count == 1 << (D.edge_count - D.vertex_count + 1)
        reps = list(T.representatives())
        assert len(reps) == T.class_count
        assert len(set(T.reduce(r) for r in reps)) == T.class_count


def test_orientable_iff_twist_class_trivial():
    for name in ("K3", "C4", "CUBE"):
        D = build_dart_structure(fixture(name).flag_space)
        T = build_twist_classes(D)
        rho = default_rotation(D)
        for t in T.representatives():
            assert is_orientable(realize(D, rho, t)) == T.is_trivial(t)


def test_signs_and_twists_are_inverse_descriptions():
    D = build_dart_structure(fixture("C4").flag_space)
    rho = default_rotation(D)
    for t in range(1 << D.edge_count):
        signs = signs_of_twists(D, t)
        assert twists_of_signs(D, signs) == t
        assert realize_signed(D, rho, signs).P == realize(D, rho, t).P
    # all-plus literal signs mean every edge is twisted
    assert twists_of_signs(D, (0,) * 2 * D.edge_count) == (1 << D.edge_count) - 1


def test_vertex_coboundary_twists_are_invisible():
    # twisting exactly the edges at one vertex is a sign relabeling: the mask
    # reduces to zero and the realized map stays in the untwisted class
    D = build_dart_structure(fixture("K3").flag_space)
    T = build_twist_classes(D)
    rho = default_rotation(D)
    for v in range(D.vertex_count):
        cob = 0
        for d in D.darts_at(v):
            cob |= 1 << D.dart_edge[d]
        assert T.reduce(cob) == 0
        assert is_isomorphic(realize(D, rho, 0), realize(D, rho, cob)) is not None
