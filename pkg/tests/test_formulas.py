"""Per-class statistics, closed-form fixed counts, and census totals."""

import random
from math import factorial

import pytest

from cayleymaps import census, fixture, grr_census, named_group, validate_cayley_set
from cayleymaps.autaction import GraphAutomorphism, compose_vertex_maps, right_regular
from cayleymaps.groups import element_order
from cayleymaps.errors import (
    BadParameter,
    NonIntegralExponent,
    NotSemiRegular,
)
from cayleymaps.formulas import (
    DELTA,
    MODE_PRIMES,
    THETA,
    class_stats,
    conjugacy_classes_of,
    log2_of_int,
    make_report,
    parse_mode,
    permutation_order,
    permutation_power,
    phi_exact,
    phi_formula,
)

import mpmath as mp


def test_parse_mode():
    assert parse_mode("exact") == ("exact", None)
    assert parse_mode("log2") == ("log2", None)
    assert parse_mode("modp:7") == ("modp", 7)
    assert parse_mode("modp:2147483647") == ("modp", 2**31 - 1)
    with pytest.raises(BadParameter):
        parse_mode("modp:1")
    with pytest.raises(BadParameter):
        parse_mode("modp:0")
    with pytest.raises(BadParameter):
        parse_mode("approximate")


def test_mode_primes_are_the_usual_ones():
    assert MODE_PRIMES == (2**31 - 1, 10**9 + 7)


def test_log2_of_int():
    assert log2_of_int(0) == mp.ninf
    assert log2_of_int(1) == 0
    assert float(log2_of_int(2**10)) == pytest.approx(10.0, rel=1e-15)
    assert float(log2_of_int(2**1000)) == pytest.approx(1000.0, rel=1e-15)
    with pytest.raises(BadParameter):
        log2_of_int(-5)


def test_make_report_shapes():
    r = make_report(928, "exact")
    assert r.mode == "exact" and r.exact_value == 928
    assert float(r.log2_value) == pytest.approx(float(mp.log(928, 2)), rel=1e-12)
    r = make_report(928, "log2")
    assert r.mode == "log2" and r.exact_value is None
    assert float(r.log2_value) == pytest.approx(float(mp.log(928, 2)), rel=1e-12)
    r = make_report(928, "modp:7")
    assert (r.mode, r.residue, r.prime) == ("modp", 928 % 7, 7)


def _brute_order(vm):
    acc = tuple(vm)
    n = 1
    while acc != tuple(range(len(vm))):
        acc = compose_vertex_maps(vm, acc)
        n += 1
    return n


def test_permutation_order_and_power_match_brute_force():
    rng = random.Random(7)
    for _ in range(20):
        vm = list(range(8))
        rng.shuffle(vm)
        vm = tuple(vm)
        assert permutation_order(vm) == _brute_order(vm)
        acc = tuple(range(8))
        for k in range(12):
            assert permutation_power(vm, k) == acc
            acc = compose_vertex_maps(vm, acc)
    assert permutation_order(tuple(range(6))) == 1
    assert permutation_power((1, 0, 2), 0) == (0, 1, 2)


def test_conjugacy_classes_of_regular_representations():
    d6 = named_group("dihedral", 12)
    maps = [a.vertex_map for a in right_regular(d6)]
    sizes = sorted(len(c) for c in conjugacy_classes_of(maps))
    assert sizes == [1, 1, 2, 2, 3, 3]

    s3 = named_group("symmetric", 3)
    maps = [a.vertex_map for a in right_regular(s3)]
    sizes = sorted(len(c) for c in conjugacy_classes_of(maps))
    assert sizes == [1, 2, 3]


def test_conjugacy_classes_of_rejects_bad_pools():
    with pytest.raises(BadParameter):
        conjugacy_classes_of([(1, 0, 2)])  # no identity
    with pytest.raises(BadParameter):
        conjugacy_classes_of([(0, 1, 2), (1, 2, 0)])  # not closed


def test_class_stats_cube_table():
    fx = fixture("CUBE")
    G, S = fx.group, fx.cayset
    acting = right_regular(G)
    # nu = 8, eps = 12, k = 3; every class is a singleton.
    for g in range(8):
        st = class_stats(G, S, acting, acting[g])
        assert st.class_size == 1
        assert st.semi_regular
        if g == 0:
            expected = (1, 0, THETA, 12, 4)
        elif g in S.members:
            expected = (2, 8, DELTA, 8, 6)
        else:
            expected = (2, 0, THETA, 6, 2)
        got = (st.order, st.l_value, st.branch, st.edge_orbits, st.alpha_exponent)
        assert got == expected, f"g = {g}: {got} != {expected}"


def test_l_value_equals_conjugation_count():
    # Same count in the other coordinate system: l = #{t : t g^{o/2} t^-1 in S}.
    cases = [
        (fixture("CUBE").group, fixture("CUBE").cayset),
        (named_group("dihedral", 12), None),
    ]
    cases[1] = (cases[1][0], validate_cayley_set(cases[1][0], (6, 7, 8)))
    for G, S in cases:
        members = set(S.members)
        acting = right_regular(G)
        for st in census(G, S, surface="L").classes:
            g = st.representative.vertex_map[0]
            if st.order % 2:
                assert st.l_value == 0
                continue
            gh = G.power(g, st.order // 2)
            alt = sum(
                1 for t in range(G.order)
                if G.mul(G.mul(t, gh), G.inv(t)) in members
            )
            assert alt == st.l_value


def test_phi_additivity_per_class():
    fixtures = [fixture(n) for n in ("K3", "C4", "C5", "CUBE")]
    pairs = [(fx.group, fx.cayset) for fx in fixtures]
    d6 = named_group("dihedral", 12)
    pairs.append((d6, validate_cayley_set(d6, (6, 7, 8))))
    for G, S in pairs:
        k = len(S.members)
        res = {s: census(G, S, surface=s) for s in ("O", "N", "L")}
        reps = [st.representative.vertex_map for st in res["O"].classes]
        for s in ("N", "L"):
            assert [st.representative.vertex_map for st in res[s].classes] == reps
        for i in range(len(reps)):
            st = res["O"].classes[i]
            assert res["O"].phi_values[i] == factorial(k - 1) ** (G.order // st.order)
            assert res["O"].phi_values[i] + res["N"].phi_values[i] == res["L"].phi_values[i]
            assert phi_exact(st, "O", k) == res["O"].phi_values[i]
        total = {s: res[s].count.exact_value for s in ("O", "N", "L")}
        assert total["O"] + total["N"] == total["L"]


def test_census_totals_frozen():
    fx = fixture("CUBE")
    assert census(fx.group, fx.cayset, surface="O").count.exact_value == 46
    assert census(fx.group, fx.cayset, surface="L").count.exact_value == 928
    assert census(fx.group, fx.cayset, surface="N").count.exact_value == 882
    for name in ("K3", "C4", "C5"):
        fx = fixture(name)
        assert census(fx.group, fx.cayset, surface="O").count.exact_value == 1
        assert census(fx.group, fx.cayset, surface="L").count.exact_value == 1
        assert census(fx.group, fx.cayset, surface="N").count.exact_value == 0
        assert census(fx.group, fx.cayset).acting_size == fx.group.order


def test_census_modes_agree():
    fx = fixture("CUBE")
    exact = census(fx.group, fx.cayset, surface="L", mode="exact")
    assert exact.count.exact_value == 928
    log2 = census(fx.group, fx.cayset, surface="L", mode="log2")
    assert float(log2.count.log2_value) == pytest.approx(
        float(exact.count.log2_value), rel=1e-12
    )
    for p in MODE_PRIMES:
        modp = census(fx.group, fx.cayset, surface="L", mode=f"modp:{p}")
        assert modp.count.residue == 928 % p
        assert modp.count.prime == p


def test_census_rejects_bad_surface_and_mode():
    fx = fixture("K3")
    with pytest.raises(BadParameter):
        census(fx.group, fx.cayset, surface="X")
    with pytest.raises(BadParameter):
        census(fx.group, fx.cayset, mode="approximate")


def test_sym3_transpositions_have_half_integer_alpha():
    # Conjugates of a transposition stay in S, so l = 6 and
    # alpha = (9 + 6 - 6)/2 is not an integer on any surface.
    G = named_group("symmetric", 3)
    members = tuple(g for g in range(6) if element_order(G, g) == 2)
    S = validate_cayley_set(G, members)
    for surface in ("O", "N", "L"):
        with pytest.raises(NonIntegralExponent, match="not a non-negative integer"):
            census(G, S, surface=surface)


def test_grr_census_cross_checks():
    d6 = named_group("dihedral", 12)
    S = validate_cayley_set(d6, (6, 7, 8))
    plain = census(d6, S, surface="L")
    checked = grr_census(d6, S, surface="L")
    assert checked.count.exact_value == plain.count.exact_value
    # Odd group order: no even-order translations, every branch is Theta.
    fx = fixture("K3")
    res = grr_census(fx.group, fx.cayset, surface="O")
    assert res.count.exact_value == 1
    assert all(st.branch == THETA for st in res.classes)


def test_census_with_non_semi_regular_h_raises():
    fx = fixture("CUBE")
    swap = GraphAutomorphism(
        tuple((t & 4) | ((t & 1) << 1) | ((t & 2) >> 1) for t in range(8))
    )
    identity = GraphAutomorphism(tuple(range(8)))
    with pytest.raises(NotSemiRegular):
        census(fx.group, fx.cayset, H=[identity, swap])


def test_class_constancy_toggle_keeps_totals():
    fx = fixture("CUBE")
    fast = census(fx.group, fx.cayset, surface="L", check_class_constancy=False)
    assert fast.count.exact_value == 928


def test_phi_formula_wraps_report():
    fx = fixture("CUBE")
    st = census(fx.group, fx.cayset, surface="L").classes[0]
    r = phi_formula(st, "L", 3, "modp:7")
    assert r.residue == phi_exact(st, "L", 3) % 7
    with pytest.raises(BadParameter):
        phi_exact(st, "Q", 3)
