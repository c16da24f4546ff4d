"""Closed-form censuses of maps on a Cayley graph under R(G) x H.

The per-class data is (order o, inverted-edge count l, branch, exponent
alpha); a class contributes 2^alpha (|S|-1)!^{|G|/o} fixed embeddings on
the locally orientable side and (|S|-1)!^{|G|/o} on the orientable side.
Totals divide the class sum by |G||H|.

l counts vertices moved to a neighbor by the half-order power, so every
inverted edge contributes both endpoints; with that normalization
alpha = (epsilon + l - nu)/o and the true edge-orbit count is
(2 epsilon + l)/(2o), both verified per class.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Sequence

import mpmath as mp

from .autaction import (
    GraphAutomorphism,
    compose_vertex_maps,
    invert_vertex_map,
    is_semi_regular,
    product_group,
    right_regular,
)
from .cayley import CayleySet
from .errors import (
    BadParameter,
    InternalInconsistency,
    NonIntegralExponent,
    NonIntegralSum,
    NotSemiRegular,
)
from .groups import FiniteGroup

THETA = "Theta"
DELTA = "Delta"

MODE_PRIMES = (2**31 - 1, 10**9 + 7)


@dataclass(frozen=True)
class ClassStats:
    representative: GraphAutomorphism
    class_size: int
    order: int
    semi_regular: bool
    l_value: int
    branch: str
    edge_orbits: int
    alpha_exponent: int


@dataclass(frozen=True)
class CountReport:
    mode: str
    exact_value: int | None = None
    log2_value: object | None = None  # mpmath float
    residue: int | None = None
    prime: int | None = None


@dataclass(frozen=True)
class CensusResult:
    surface: str
    count: CountReport
    classes: tuple[ClassStats, ...]
    phi_values: tuple[int, ...]
    acting_size: int


def parse_mode(mode: str) -> tuple[str, int | None]:
    if mode in ("exact", "log2"):
        return mode, None
    if mode.startswith("modp:"):
        p = int(mode.split(":", 1)[1])
        if p < 2:
            raise BadParameter(f"modulus {p} is not a prime candidate")
        return "modp", p
    raise BadParameter(f"unknown mode {mode!r}")


def log2_of_int(n: int) -> mp.mpf:
    if n < 0:
        raise BadParameter("log2 of negative count")
    if n == 0:
        return mp.ninf
    with mp.workdps(60):
        return mp.log(mp.mpf(n), 2)


def make_report(exact: int, mode: str, prime: int | None = None) -> CountReport:
    kind, p = (mode, prime) if prime is not None else parse_mode(mode)
    if kind == "exact":
        return CountReport(mode="exact", exact_value=exact, log2_value=log2_of_int(exact))
    if kind == "log2":
        return CountReport(mode="log2", log2_value=log2_of_int(exact))
    return CountReport(mode="modp", residue=exact % p, prime=p)


def permutation_order(vm: Sequence[int]) -> int:
    seen = [False] * len(vm)
    order = 1
    for v in range(len(vm)):
        if seen[v]:
            continue
        length = 0
        w = v
        while not seen[w]:
            seen[w] = True
            length += 1
            w = vm[w]
        g = _gcd(order, length)
        order = order // g * length
    return order


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def permutation_power(vm: Sequence[int], k: int) -> tuple[int, ...]:
    out = tuple(range(len(vm)))
    base = tuple(vm)
    while k:
        if k & 1:
            out = compose_vertex_maps(base, out)
        base = compose_vertex_maps(base, base)
        k >>= 1
    return out


def conjugacy_classes_of(maps: Sequence[tuple[int, ...]]) -> list[list[tuple[int, ...]]]:
    """Conjugacy classes of a permutation group given as a closed element list."""
    pool = set(maps)
    n = len(maps[0])
    if tuple(range(n)) not in pool:
        raise BadParameter("acting set lacks the identity")
    for a in pool:
        for b in pool:
            if compose_vertex_maps(a, b) not in pool:
                raise BadParameter("acting set is not closed under composition")
    classes = []
    remaining = set(pool)
    for x in sorted(pool):
        if x not in remaining:
            continue
        cls = {compose_vertex_maps(a, compose_vertex_maps(x, invert_vertex_map(a))) for a in pool}
        classes.append(sorted(cls))
        remaining -= cls
    return classes


# ---------------------------------------------------------------------------
# Per-class statistics
# ---------------------------------------------------------------------------

def class_stats(
    G: FiniteGroup,
    S: CayleySet,
    acting: Sequence[GraphAutomorphism],
    xi: GraphAutomorphism,
) -> ClassStats:
    vm = xi.vertex_map
    if not is_semi_regular(xi):
        raise NotSemiRegular(f"representative {vm} has unequal orbit lengths")
    nu = G.order
    k = len(S.members)
    eps = nu * k // 2
    o = permutation_order(vm)

    pool = {a.vertex_map for a in acting}
    cls = {
        compose_vertex_maps(a, compose_vertex_maps(vm, invert_vertex_map(a)))
        for a in pool
    }

    if o % 2 == 0:
        half = permutation_power(vm, o // 2)
        neighbors = [frozenset(G.table[s][t] for s in S.members) for t in range(nu)]
        l_value = sum(1 for t in range(nu) if half[t] in neighbors[t])
    else:
        l_value = 0

    branch = DELTA if (o % 2 == 0 and l_value > 0) else THETA
    if branch == DELTA and l_value % (o // 2):
        raise InternalInconsistency(
            f"inverted count {l_value} not divisible by half order {o // 2}"
        )

    edges = sorted(
        {tuple(sorted((t, G.table[s][t]))) for t in range(nu) for s in S.members}
    )
    index = {e: i for i, e in enumerate(edges)}
    eperm = [index[tuple(sorted((vm[u], vm[v])))] for (u, v) in edges]
    seen = [False] * len(edges)
    edge_orbits = 0
    for i in range(len(edges)):
        if seen[i]:
            continue
        edge_orbits += 1
        j = i
        while not seen[j]:
            seen[j] = True
            j = eperm[j]
    if edge_orbits * 2 * o != 2 * eps + l_value:
        raise InternalInconsistency(
            f"edge orbit count {edge_orbits} disagrees with (2e+l)/2o = "
            f"({2 * eps}+{l_value})/{2 * o}"
        )

    num = eps + l_value - nu
    if num < 0 or num % o:
        raise NonIntegralExponent(
            f"alpha = ({eps}+{l_value}-{nu})/{o} is not a non-negative integer"
        )
    return ClassStats(
        representative=xi,
        class_size=len(cls),
        order=o,
        semi_regular=True,
        l_value=l_value,
        branch=branch,
        edge_orbits=edge_orbits,
        alpha_exponent=num // o,
    )


def phi_exact(stats: ClassStats, surface: str, k: int) -> int:
    nu = len(stats.representative.vertex_map)
    base = factorial(k - 1) ** (nu // stats.order)
    if surface == "O":
        return base
    if surface == "L":
        return (1 << stats.alpha_exponent) * base
    if surface == "N":
        return ((1 << stats.alpha_exponent) - 1) * base
    raise BadParameter(f"unknown surface {surface!r}")


def phi_formula(stats: ClassStats, surface: str, k: int, mode: str = "exact") -> CountReport:
    return make_report(phi_exact(stats, surface, k), mode)


# ---------------------------------------------------------------------------
# Census totals
# ---------------------------------------------------------------------------

def _assert_constant_stats(
    G: FiniteGroup, S: CayleySet, acting: Sequence[GraphAutomorphism],
    cls: Sequence[tuple[int, ...]], rep_stats: ClassStats,
) -> None:
    for vm in cls:
        st = class_stats(G, S, acting, GraphAutomorphism(vm))
        same = (
            st.order == rep_stats.order
            and st.l_value == rep_stats.l_value
            and st.branch == rep_stats.branch
            and st.alpha_exponent == rep_stats.alpha_exponent
            and st.edge_orbits == rep_stats.edge_orbits
        )
        if not same:
            raise InternalInconsistency(
                f"class statistics not constant: {vm} differs from "
                f"{rep_stats.representative.vertex_map}"
            )


def census(
    G: FiniteGroup,
    S: CayleySet,
    H: Sequence[GraphAutomorphism] | None = None,
    surface: str = "O",
    mode: str = "exact",
    check_class_constancy: bool = True,
) -> CensusResult:
    if surface not in ("O", "N", "L"):
        raise BadParameter(f"unknown surface {surface!r}")
    kind, p = parse_mode(mode)
    k = len(S.members)
    regular = right_regular(G)
    if H is None:
        H = [GraphAutomorphism(tuple(range(G.order)))]
    acting = product_group(regular, H)
    acting_size = len(acting)
    if acting_size != G.order * len(H):
        raise InternalInconsistency("acting group size is not |G||H|")

    classes = conjugacy_classes_of([a.vertex_map for a in acting])
    if sum(len(c) for c in classes) != acting_size:
        raise InternalInconsistency("class sizes do not sum to the group order")

    stats_list: list[ClassStats] = []
    phis: list[int] = []
    total = 0
    for cls in classes:
        rep = GraphAutomorphism(cls[0])
        st = class_stats(G, S, acting, rep)
        if st.class_size != len(cls):
            raise InternalInconsistency("class size mismatch")
        if check_class_constancy:
            _assert_constant_stats(G, S, acting, cls, st)
        phi = phi_exact(st, surface, k)
        stats_list.append(st)
        phis.append(phi)
        total += len(cls) * phi

    q, r = divmod(total, acting_size)
    if r:
        raise NonIntegralSum(
            f"class sum {total} not divisible by |G||H| = {acting_size}"
        )
    if kind == "modp":
        # Independent modular evaluation, cross-checked against the exact path.
        residue = 0
        for st, cls in zip(stats_list, classes):
            base = factorial(k - 1) % p
            term = pow(base, len(st.representative.vertex_map) // st.order, p)
            if surface == "L":
                term = term * pow(2, st.alpha_exponent, p) % p
            elif surface == "N":
                term = term * ((pow(2, st.alpha_exponent, p) - 1) % p) % p
            residue = (residue + len(cls) * term) % p
        residue = residue * pow(acting_size, -1, p) % p
        if residue != q % p:
            raise InternalInconsistency("modular census disagrees with exact census")
        report = CountReport(mode="modp", residue=residue, prime=p)
    else:
        report = make_report(q, mode)
    return CensusResult(
        surface=surface,
        count=report,
        classes=tuple(stats_list),
        phi_values=tuple(phis),
        acting_size=acting_size,
    )


def grr_census(
    G: FiniteGroup, S: CayleySet, surface: str = "O", mode: str = "exact"
) -> CensusResult:
    """Census with H = 1; representatives are translations R(g), so the
    inverted-edge count is double checked in its conjugation form
    #{t : t g^{o/2} t^{-1} in S}."""
    result = census(G, S, None, surface, mode)
    members = set(S.members)
    for st in result.classes:
        g = st.representative.vertex_map[0]
        if st.order % 2 == 0:
            gh = G.power(g, st.order // 2)
            alt = sum(
                1
                for t in range(G.order)
                if G.table[G.table[t][gh]][G.inverses[t]] in members
            )
            if alt != st.l_value:
                raise InternalInconsistency(
                    f"conjugation form of l gives {alt}, abstract form {st.l_value}"
                )
    if all(st.order % 2 for st in result.classes):
        # Odd order: no half powers, single-branch total must coincide.
        if any(st.branch != THETA for st in result.classes):
            raise InternalInconsistency("odd-order group produced a Delta class")
    return result
