"""Cayley graphs and their quadricell flag spaces.

A flag is a triple (g, s, sign): the side ``sign`` of the dart that leaves
vertex g along generator s toward s*g.  Flag ids are fixed by convention:

    id(g, s, sign) = 2*(g*|S| + rank of s in sorted S) + (0 if '+' else 1)

alpha flips the sign, beta sends (g, s, sign) to (s*g, s^{-1}, sign).  The
convention is normative: map files and every canonical form depend on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (
    CONTAINS_IDENTITY,
    NOT_GENERATING,
    NOT_INVERSE_CLOSED,
    TOO_SMALL,
    BadParameter,
    CaySetInvalid,
    InternalInconsistency,
    NotCayleyLabeled,
)
from .groups import FiniteGroup, subgroup_closure

PLUS, MINUS = 0, 1
SIGN_CHARS = {PLUS: "+", MINUS: "-"}


@dataclass(frozen=True)
class CayleySet:
    members: tuple[int, ...]  # sorted element indices

    def __len__(self) -> int:
        return len(self.members)

    def rank(self, s: int) -> int:
        return self.members.index(s)


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]  # sorted neighbor lists

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.vertex_count) for v in self.adjacency[u] if u < v]


@dataclass(frozen=True)
class FlagSpace:
    flag_count: int
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    group: FiniteGroup | None = None
    cayset: CayleySet | None = None
    source: str = "generic"  # "cayley" | "generic"

    @property
    def edge_count(self) -> int:
        return self.flag_count // 4


def validate_cayley_set(G: FiniteGroup, S: Sequence[int]) -> CayleySet:
    """Check S^{-1} = S, 1 not in S, <S> = G, |S| >= 2; collect all failures."""
    members = sorted(set(int(s) for s in S))
    for s in members:
        if not 0 <= s < G.order:
            raise BadParameter(f"element {s} out of range for group of order {G.order}")
    violations: list[tuple[str, str]] = []
    if len(members) < 2:
        violations.append((TOO_SMALL, f"|S| = {len(members)} < 2"))
    if 0 in members:
        violations.append((CONTAINS_IDENTITY, "identity element 0 in S"))
    for s in members:
        if G.inverses[s] not in members:
            violations.append((NOT_INVERSE_CLOSED, f"inverse of {s} is {G.inverses[s]}, not in S"))
            break
    generated = subgroup_closure(G, members)
    if len(generated) != G.order:
        violations.append((NOT_GENERATING, f"<S> has order {len(generated)} < {G.order}"))
    if violations:
        raise CaySetInvalid(violations)
    return CayleySet(members=tuple(members))


def build_cayley_graph(G: FiniteGroup, S: CayleySet) -> Graph:
    """Vertices G, edges {g, s*g}: connected |S|-regular simple graph."""
    adjacency = tuple(
        tuple(sorted(G.table[s][g] for s in S.members)) for g in range(G.order)
    )
    return Graph(vertex_count=G.order, adjacency=adjacency)


def build_flag_space(G: FiniteGroup, S: CayleySet) -> FlagSpace:
    k = len(S.members)
    n = 2 * G.order * k
    alpha = [0] * n
    beta = [0] * n
    for g in range(G.order):
        for j, s in enumerate(S.members):
            sg = G.table[s][g]
            j_rev = S.rank(G.inverses[s])
            for sign in (PLUS, MINUS):
                f = 2 * (g * k + j) + sign
                alpha[f] = 2 * (g * k + j) + (1 - sign)
                beta[f] = 2 * (sg * k + j_rev) + sign
    F = FlagSpace(
        flag_count=n,
        alpha=tuple(alpha),
        beta=tuple(beta),
        group=G,
        cayset=S,
        source="cayley",
    )
    _check_flag_space(F, internal=True)
    return F


def generic_flag_space(alpha: Sequence[int], beta: Sequence[int]) -> FlagSpace:
    """Flag space from explicit involutions (e.g. a non-Cayley test map)."""
    n = len(alpha)
    if len(beta) != n:
        raise BadParameter("alpha and beta must have equal length")
    F = FlagSpace(
        flag_count=n,
        alpha=tuple(int(x) for x in alpha),
        beta=tuple(int(x) for x in beta),
    )
    _check_flag_space(F, internal=False)
    return F


def _check_flag_space(F: FlagSpace, internal: bool) -> None:
    """Fixed-point-free involutions, alpha*beta fixed-point-free, quadricells of size 4."""
    err = InternalInconsistency if internal else BadParameter
    n = F.flag_count
    if n % 4:
        raise err(f"flag count {n} not divisible by 4")
    for name, perm in (("alpha", F.alpha), ("beta", F.beta)):
        if sorted(perm) != list(range(n)):
            raise err(f"{name} is not a permutation")
        for f in range(n):
            if perm[perm[f]] != f:
                raise err(f"{name} is not an involution at flag {f}")
            if perm[f] == f:
                raise err(f"{name} fixes flag {f}")
    for f in range(n):
        if F.alpha[F.beta[f]] == f:
            raise err(f"alpha*beta fixes flag {f} (degenerate quadricell)")
    for q in quadricells(F):
        if len(set(q)) != 4:
            raise err(f"quadricell {q} has fewer than 4 flags")


def quadricells(F: FlagSpace) -> list[tuple[int, int, int, int]]:
    """<alpha,beta>-orbits as (x, alpha x, beta x, alpha beta x), x minimal.

    The list order (by minimal flag) is the normative edge indexing.
    """
    seen = [False] * F.flag_count
    out = []
    for x in range(F.flag_count):
        if seen[x]:
            continue
        cell = (x, F.alpha[x], F.beta[x], F.alpha[F.beta[x]])
        for f in cell:
            seen[f] = True
        out.append(cell)
    return out


def flag_id(F: FlagSpace, g: int, s: int, sign: int) -> int:
    if F.group is None or F.cayset is None:
        raise NotCayleyLabeled("flag space has no Cayley labeling")
    if not 0 <= g < F.group.order:
        raise BadParameter(f"vertex {g} out of range")
    if s not in F.cayset.members:
        raise BadParameter(f"{s} is not in the connection set")
    if sign not in (PLUS, MINUS):
        raise BadParameter(f"sign must be {PLUS} or {MINUS}, got {sign}")
    return 2 * (g * len(F.cayset) + F.cayset.rank(s)) + sign


def flag_decode(F: FlagSpace, fid: int) -> tuple[int, int, int]:
    if F.group is None or F.cayset is None:
        raise NotCayleyLabeled("flag space has no Cayley labeling")
    if not 0 <= fid < F.flag_count:
        raise BadParameter(f"flag id {fid} out of range [0,{F.flag_count})")
    sign = fid & 1
    dart = fid >> 1
    k = len(F.cayset)
    return dart // k, F.cayset.members[dart % k], sign
