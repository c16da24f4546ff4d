"""Rotation systems with edge twists on Cayley flag spaces.

A map on the Cayley graph is specified by a cyclic order of the darts at
each vertex together with a sign at each dart end; the flag permutation
cycles same-signed flags forward and opposite-signed flags backward, which
makes alpha-conjugation invert it by construction.  Two sign assignments
give the same map exactly when they differ by flipping every sign at some
set of vertices, so the per-edge twist bit (set when the two end signs
agree) matters only through its class modulo the vertex-flip coboundary.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .cayley import FlagSpace, quadricells
from .errors import BadParameter, NotCayleyLabeled
from .maps import MapPermutation

# A rotation system: one tuple of dart ids per vertex, each rotated so its
# least dart comes first.
RotationSystem = tuple[tuple[int, ...], ...]

PLUS_SIGN = 0
MINUS_SIGN = 1


@dataclass(frozen=True)
class DartStructure:
    """Dart and edge indexing for a Cayley flag space.

    Dart d covers flags 2d and 2d+1; edges are quadricells in increasing
    order of least flag, edge e having end darts edge_ends[e] = (d1, d2)
    with d1 < d2.
    """

    flag_space: FlagSpace
    degree: int
    vertex_count: int
    edge_ends: tuple[tuple[int, int], ...]
    dart_edge: tuple[int, ...]
    dart_mate: tuple[int, ...]

    @property
    def edge_count(self) -> int:
        return len(self.edge_ends)

    def vertex_of(self, dart: int) -> int:
        return dart // self.degree

    def darts_at(self, vertex: int) -> range:
        return range(vertex * self.degree, (vertex + 1) * self.degree)


def build_dart_structure(F: FlagSpace) -> DartStructure:
    if F.source != "cayley":
        raise NotCayleyLabeled("dart structure requires a Cayley-labelled flag space")
    k = len(F.cayset.members)
    nv = F.group.order
    ends = []
    dart_edge = [-1] * (F.flag_count // 2)
    dart_mate = [-1] * (F.flag_count // 2)
    for e, (x, _ax, bx, _abx) in enumerate(quadricells(F)):
        d1, d2 = x // 2, bx // 2
        ends.append((d1, d2))
        dart_edge[d1] = dart_edge[d2] = e
        dart_mate[d1], dart_mate[d2] = d2, d1
    return DartStructure(
        flag_space=F,
        degree=k,
        vertex_count=nv,
        edge_ends=tuple(ends),
        dart_edge=tuple(dart_edge),
        dart_mate=tuple(dart_mate),
    )


def canonical_rotation(cycle: Sequence[int]) -> tuple[int, ...]:
    """Rotate a cyclic dart sequence so its least entry comes first."""
    i = min(range(len(cycle)), key=cycle.__getitem__)
    return tuple(cycle[i:]) + tuple(cycle[:i])


def vertex_rotations(D: DartStructure, vertex: int) -> Iterator[tuple[int, ...]]:
    """All (degree-1)! canonical cyclic orders of the darts at a vertex."""
    darts = list(D.darts_at(vertex))
    first, rest = darts[0], darts[1:]
    for tail in itertools.permutations(rest):
        yield (first,) + tail


def all_rotation_systems(D: DartStructure) -> Iterator[RotationSystem]:
    per_vertex = [tuple(vertex_rotations(D, v)) for v in range(D.vertex_count)]
    for combo in itertools.product(*per_vertex):
        yield combo


def rotation_system_count(D: DartStructure) -> int:
    c = 1
    for i in range(1, D.degree):
        c *= i
    return c ** D.vertex_count


# ---------------------------------------------------------------------------
# Realizing a flag permutation
# ---------------------------------------------------------------------------

def realize_signed(
    D: DartStructure, rho: RotationSystem, signs: Sequence[int]
) -> MapPermutation:
    """Flag permutation of the rotation system rho with dart-end signs.

    At each vertex the flags matching their dart's sign follow the cyclic
    order and the mismatched flags run against it.
    """
    n = D.flag_space.flag_count
    P = [0] * n
    for cycle in rho:
        m = len(cycle)
        for i in range(m):
            d, dn = cycle[i], cycle[(i + 1) % m]
            with_d = 2 * d + signs[d]
            against_d = 2 * d + (1 - signs[d])
            with_dn = 2 * dn + signs[dn]
            against_dn = 2 * dn + (1 - signs[dn])
            P[with_d] = with_dn
            P[against_dn] = against_d
    return MapPermutation(flag_space=D.flag_space, P=tuple(P))


def twists_of_signs(D: DartStructure, signs: Sequence[int]) -> int:
    """Twist mask of a sign assignment: bit e set iff the end signs agree.

    The double cover glued by beta separates exactly when the formal signs
    across an edge point opposite ways, so agreement marks a twisted edge.
    """
    mask = 0
    for e, (d1, d2) in enumerate(D.edge_ends):
        if signs[d1] == signs[d2]:
            mask |= 1 << e
    return mask


def signs_of_twists(D: DartStructure, twists: int) -> tuple[int, ...]:
    """Canonical sign assignment realizing a twist mask: every lower end
    dart gets plus, the mate agrees exactly on twisted edges."""
    signs = [PLUS_SIGN] * (2 * D.edge_count)
    for e, (_d1, d2) in enumerate(D.edge_ends):
        signs[d2] = PLUS_SIGN if (twists >> e) & 1 else MINUS_SIGN
    return tuple(signs)


def realize(D: DartStructure, rho: RotationSystem, twists: int) -> MapPermutation:
    return realize_signed(D, rho, signs_of_twists(D, twists))


# ---------------------------------------------------------------------------
# Twist classes modulo vertex flips
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TwistClasses:
    """GF(2) reduction of twist masks modulo the vertex-flip subspace.

    Flipping all signs at a vertex toggles the twist bit of each incident
    edge; the span of these vertex vectors (rank vertex_count - 1 on a
    connected graph) is the kernel of the map from sign data to maps.
    """

    edge_count: int
    basis: tuple[int, ...]   # row-reduced, one row per pivot
    pivots: tuple[int, ...]  # bit position of each row's leading 1

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def class_count(self) -> int:
        return 1 << (self.edge_count - self.rank)

    def reduce(self, twists: int) -> int:
        """Canonical class representative: the unique coset member with all
        pivot bits clear."""
        for row, p in zip(self.basis, self.pivots):
            if (twists >> p) & 1:
                twists ^= row
        return twists

    def is_trivial(self, twists: int) -> bool:
        """True iff the mask is a vertex-flip coboundary; the realized map
        is orientable exactly in this case."""
        return self.reduce(twists) == 0

    def representatives(self) -> Iterator[int]:
        """All canonical representatives, i.e. masks clear on every pivot."""
        free = [b for b in range(self.edge_count) if b not in set(self.pivots)]
        for bits in itertools.product((0, 1), repeat=len(free)):
            mask = 0
            for pos, bit in zip(free, bits):
                if bit:
                    mask |= 1 << pos
            yield mask


def build_twist_classes(D: DartStructure) -> TwistClasses:
    rows = []
    for v in range(D.vertex_count):
        vec = 0
        for d in D.darts_at(v):
            vec |= 1 << D.dart_edge[d]
        rows.append(vec)
    # Gaussian elimination over GF(2), lowest bit as pivot.
    basis: list[int] = []
    pivots: list[int] = []
    for vec in rows:
        for row, p in zip(basis, pivots):
            if (vec >> p) & 1:
                vec ^= row
        if vec:
            p = (vec & -vec).bit_length() - 1
            basis.append(vec)
            pivots.append(p)
    # Back-substitute so each pivot appears in exactly one row.
    for i in range(len(basis)):
        for j in range(len(basis)):
            if i != j and (basis[j] >> pivots[i]) & 1:
                basis[j] ^= basis[i]
    order = sorted(range(len(basis)), key=pivots.__getitem__)
    return TwistClasses(
        edge_count=D.edge_count,
        basis=tuple(basis[i] for i in order),
        pivots=tuple(pivots[i] for i in order),
    )


# ---------------------------------------------------------------------------
# Transport along dart bijections
# ---------------------------------------------------------------------------

def dart_map_of_flag_map(D: DartStructure, flag_map: Sequence[int]) -> tuple[int, ...]:
    """Induced dart bijection of a sign-preserving flag bijection."""
    n2 = D.flag_space.flag_count // 2
    out = [0] * n2
    for d in range(n2):
        img = flag_map[2 * d]
        if img & 1:
            raise BadParameter("flag bijection does not preserve dart sides")
        out[d] = img // 2
    return tuple(out)


def edge_map_of_dart_map(D: DartStructure, dart_map: Sequence[int]) -> tuple[int, ...]:
    out = [0] * D.edge_count
    for e, (d1, _d2) in enumerate(D.edge_ends):
        out[e] = D.dart_edge[dart_map[d1]]
    return tuple(out)


def transport_rotation_system(
    D: DartStructure, dart_map: Sequence[int], rho: RotationSystem
) -> RotationSystem:
    out: list[tuple[int, ...] | None] = [None] * D.vertex_count
    for cycle in rho:
        image = tuple(dart_map[d] for d in cycle)
        out[D.vertex_of(image[0])] = canonical_rotation(image)
    return tuple(out)  # type: ignore[arg-type]


def transport_twists(D: DartStructure, edge_map: Sequence[int], twists: int) -> int:
    out = 0
    for e in range(D.edge_count):
        if (twists >> e) & 1:
            out |= 1 << edge_map[e]
    return out
