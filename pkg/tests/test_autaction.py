import networkx as nx
import pytest

from cayleymaps.autaction import (
    GraphAutomorphism,
    compose_vertex_maps,
    construct_stable_map,
    decompose,
    extend_to_flags,
    graph_automorphism_group,
    invert_vertex_map,
    is_graph_automorphism,
    is_semi_regular,
    product_group,
    right_regular,
    vertex_orbits,
)
from cayleymaps.cayley import build_cayley_graph, build_flag_space, validate_cayley_set
from cayleymaps.errors import CapExceeded, NotSemiRegular
from cayleymaps.fixtures import FIXTURE_NAMES, fixture
from cayleymaps.groups import element_order, named_group
from cayleymaps.maps import canonical_side_class, is_orientable, validate_map
from cayleymaps.rotations import build_dart_structure

CAYLEY_FIXTURES = tuple(n for n in FIXTURE_NAMES if n != "FIG1")


def nx_automorphism_count(graph) -> int:
    """Independent count via VF2."""
    H = nx.Graph()
    H.add_nodes_from(range(graph.vertex_count))
    H.add_edges_from(graph.edges())
    matcher = nx.algorithms.isomorphism.GraphMatcher(H, H)
    return sum(1 for _ in matcher.isomorphisms_iter())


# ---------------------------------------------------------------------------
# Regular representation and the search
# ---------------------------------------------------------------------------

def test_right_regular_is_a_semiregular_automorphism_group():
    fx = fixture("CUBE")
    graph = build_cayley_graph(fx.group, fx.cayset)
    reg = right_regular(fx.group)
    assert len(reg) == fx.group.order
    maps = {a.vertex_map for a in reg}
    for a in reg:
        assert is_graph_automorphism(graph, a.vertex_map)
        assert is_semi_regular(a)
        for b in reg:
            assert compose_vertex_maps(a.vertex_map, b.vertex_map) in maps
    # R(h) sends the identity vertex to h
    for h, a in enumerate(reg):
        assert a.vertex_map[0] == h


@pytest.mark.parametrize(
    "name,expect", [("K3", 6), ("C4", 8), ("C5", 10), ("CUBE", 48)]
)
def test_automorphism_group_sizes_match_networkx(name, expect):
    fx = fixture(name)
    graph = build_cayley_graph(fx.group, fx.cayset)
    full = graph_automorphism_group(graph)
    assert len(full) == expect
    assert nx_automorphism_count(graph) == expect
    maps = {a.vertex_map for a in full}
    assert len(maps) == len(full)
    for a in full:
        assert is_graph_automorphism(graph, a.vertex_map)
        assert invert_vertex_map(a.vertex_map) in maps


def test_automorphism_cap():
    fx = fixture("CUBE")
    graph = build_cayley_graph(fx.group, fx.cayset)
    with pytest.raises(CapExceeded):
        graph_automorphism_group(graph, cap=4)


def test_decompose_on_fixtures_finds_no_complement():
    for name in CAYLEY_FIXTURES:
        fx = fixture(name)
        graph = build_cayley_graph(fx.group, fx.cayset)
        dec = decompose(graph_automorphism_group(graph), fx.group)
        assert not dec.is_grr
        assert not dec.is_direct_product
        assert dec.complement is None


def test_decompose_grr_branch():
    # when the search returns only the translations the instance is a GRR
    # and the complement is the trivial group
    G = named_group("cyclic", 5)
    dec = decompose(right_regular(G), G)
    assert dec.is_grr and dec.is_direct_product
    assert len(dec.complement) == 1


def test_decompose_on_a_genuine_grr():
    # {r1, r5, s0, s1, s3} in the dihedral group of order 12 came out of an
    # exhaustive search over inverse-closed generating sets: the full
    # automorphism group of its Cayley graph is just the translations
    G = named_group("dihedral", 12)
    S = validate_cayley_set(G, (1, 5, 6, 7, 9))
    graph = build_cayley_graph(G, S)
    full = graph_automorphism_group(graph)
    assert len(full) == 12
    dec = decompose(full, G)
    assert dec.is_grr and dec.is_direct_product
    assert len(dec.complement) == 1


def test_product_group_generates_the_dihedral_action():
    G = named_group("cyclic", 4)
    reg = right_regular(G)
    negation = GraphAutomorphism(tuple((-x) % 4 for x in range(4)))
    prod = product_group(reg, [GraphAutomorphism(tuple(range(4))), negation])
    assert len(prod) == 8
    graph = build_cayley_graph(G, validate_cayley_set(G, (1, 3)))
    assert {a.vertex_map for a in prod} == {
        a.vertex_map for a in graph_automorphism_group(graph)
    }


# ---------------------------------------------------------------------------
# Flag lift
# ---------------------------------------------------------------------------

def test_extended_automorphism_commutes_with_alpha_beta():
    for name in CAYLEY_FIXTURES:
        fx = fixture(name)
        F = fx.flag_space
        for theta in right_regular(fx.group):
            fm = extend_to_flags(theta, F).flag_map
            assert sorted(fm) == list(range(F.flag_count))
            for f in range(F.flag_count):
                assert fm[F.alpha[f]] == F.alpha[fm[f]]
                assert fm[F.beta[f]] == F.beta[fm[f]]
                assert fm[f] % 2 == f % 2  # sign-preserving


def test_extension_is_a_homomorphism():
    fx = fixture("CUBE")
    F = fx.flag_space
    reg = right_regular(fx.group)
    ext = {a.vertex_map: extend_to_flags(a, F).flag_map for a in reg}
    for a in reg:
        for b in reg:
            ab = compose_vertex_maps(a.vertex_map, b.vertex_map)
            composed = tuple(ext[a.vertex_map][ext[b.vertex_map][f]] for f in range(F.flag_count))
            assert composed == ext[ab]


def test_vertex_orbits_of_translations():
    G = named_group("elementary_abelian_2", 3)
    for g in range(1, G.order):
        theta = right_regular(G)[g]
        orbits = vertex_orbits(theta)
        o = element_order(G, g)
        assert all(len(orb) == o for orb in orbits)
        assert len(orbits) == G.order // o


# ---------------------------------------------------------------------------
# Stable maps
# ---------------------------------------------------------------------------

def test_general_stable_map_commutes_everywhere():
    for name in CAYLEY_FIXTURES:
        fx = fixture(name)
        F = fx.flag_space
        for theta in right_regular(fx.group):
            sm = construct_stable_map(theta, F)
            assert sm.commutes
            validate_map(F, sm.map.P)
            fm = extend_to_flags(theta, F).flag_map
            conj = tuple(0 for _ in fm)
            conj = list(conj)
            for f in range(len(fm)):
                conj[fm[f]] = fm[sm.map.P[f]]
            assert tuple(conj) == sm.map.P


def test_orientable_stable_map_flags_swapped_edge_orbits():
    # an edge orbit whose ends get exchanged blocks the equivariant choice of
    # sides; on the cube that happens exactly for the translations by S
    fx = fixture("CUBE")
    F = fx.flag_space
    for g in range(fx.group.order):
        theta = right_regular(fx.group)[g]
        sm = construct_stable_map(theta, F, orientable=True)
        assert sm.twists == 0
        assert is_orientable(sm.map)
        if g in fx.cayset.members:
            assert not sm.commutes
        else:
            assert sm.commutes
        # the embedding class is fixed either way: conjugation lands in the
        # same side-swap class
        fm = extend_to_flags(theta, F).flag_map
        conj = [0] * len(fm)
        for f in range(len(fm)):
            conj[fm[f]] = fm[sm.map.P[f]]
        from cayleymaps.maps import MapPermutation

        conj_map = MapPermutation(flag_space=F, P=tuple(conj))
        assert canonical_side_class(conj_map).P == canonical_side_class(sm.map).P


def test_orientable_stable_map_commutes_on_cycles():
    for name in ("K3", "C4", "C5"):
        fx = fixture(name)
        for theta in right_regular(fx.group):
            sm = construct_stable_map(theta, fx.flag_space, orientable=True)
            assert sm.commutes and is_orientable(sm.map)


def test_stable_map_requires_semi_regularity():
    fx = fixture("CUBE")
    # coordinate swap fixes 000 but not 001: orbit lengths differ
    swap = GraphAutomorphism(tuple(((v & 1) << 1) | ((v >> 1) & 1) | (v & 4) for v in range(8)))
    graph = build_cayley_graph(fx.group, fx.cayset)
    assert is_graph_automorphism(graph, swap.vertex_map)
    assert not is_semi_regular(swap)
    with pytest.raises(NotSemiRegular):
        construct_stable_map(swap, fx.flag_space)
