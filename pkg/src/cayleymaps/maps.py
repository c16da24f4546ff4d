"""Algebraic maps: a permutation P on a flag space subject to three axioms.

  (i)   no power of P carries a flag to its alpha-image,
  (ii)  alpha P alpha = P^{-1},
  (iii) <alpha, beta, P> is transitive on flags.

Vertices are the alpha-conjugate cycle pairs of P, faces the beta-conjugate
cycle pairs of the face permutation F = P (alpha beta).  The composition
order of F is fixed by the K4-on-torus fixture (faces of lengths 4 and 8);
the opposite order is a conjugate permutation, so either satisfies the
fixture, and this one is frozen as the convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cayley import FlagSpace, quadricells
from .errors import (
    AxiomViolation,
    BadParameter,
    CapExceeded,
    InternalInconsistency,
)

DEFAULT_SIDE_CLASS_CAP = 1 << 22


@dataclass(frozen=True)
class MapPermutation:
    flag_space: FlagSpace
    P: tuple[int, ...]


@dataclass(frozen=True)
class MapInventory:
    vertices: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    edge_count: int
    faces: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    face_lengths: tuple[int, ...]
    euler_characteristic: int
    orientable: bool
    genus: int  # orientable genus, or crosscap number when non-orientable


@dataclass(frozen=True)
class SideSwapGroup:
    """One involution (x, alpha x)(beta x, alpha beta x) per quadricell."""

    flag_space: FlagSpace
    generators: tuple[tuple[int, ...], ...]


def _cycles(p: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        out.append(tuple(cyc))
    return out


def _orbit_count(n: int, perms: list[Sequence[int]]) -> int:
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for p in perms:
        for i in range(n):
            ra, rb = find(i), find(p[i])
            if ra != rb:
                parent[ra] = rb
    return len({find(i) for i in range(n)})


def validate_map(F: FlagSpace, P: Sequence[int]) -> MapPermutation:
    """Check the three axioms; raise AxiomViolation with a witness flag."""
    n = F.flag_count
    P = tuple(int(x) for x in P)
    if sorted(P) != list(range(n)):
        raise BadParameter("P is not a permutation of the flags")

    # (ii) alpha P = P^{-1} alpha, i.e. P(alpha(P(f))) = alpha(f).
    for f in range(n):
        if P[F.alpha[P[f]]] != F.alpha[f]:
            raise AxiomViolation("ii", f)

    # (i) no P-cycle meets its own alpha-image.
    for cyc in _cycles(P):
        cset = set(cyc)
        for f in cyc:
            if F.alpha[f] in cset:
                raise AxiomViolation("i", f)

    # (iii) transitivity of <alpha, beta, P>.
    if _orbit_count(n, [P, F.alpha, F.beta]) != 1:
        raise AxiomViolation("iii", 0, "group <alpha,beta,P> is not transitive")

    return MapPermutation(flag_space=F, P=P)


def face_permutation(M: MapPermutation) -> tuple[int, ...]:
    F = M.flag_space
    return tuple(M.P[F.alpha[F.beta[f]]] for f in range(F.flag_count))


def _conjugate_cycle_pairs(
    cycles: list[tuple[int, ...]], conj: Sequence[int], what: str
) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
    """Pair each cycle with its conj-image; the pairing must be a perfect
    matching of distinct cycles (guaranteed by the axioms, hence a hard error)."""
    by_set = {frozenset(c): c for c in cycles}
    pairs = []
    used: set[frozenset] = set()
    for c in cycles:
        key = frozenset(c)
        if key in used:
            continue
        mate_key = frozenset(conj[f] for f in c)
        mate = by_set.get(mate_key)
        if mate is None or mate_key == key:
            raise InternalInconsistency(f"{what} cycle {c} has no conjugate mate")
        used.add(key)
        used.add(mate_key)
        pairs.append((c, mate))
    return tuple(pairs)


def is_orientable(M: MapPermutation) -> bool:
    """True iff <P, alpha beta> has exactly 2 flag orbits (1 means non-orientable)."""
    F = M.flag_space
    ab = [F.alpha[F.beta[f]] for f in range(F.flag_count)]
    orbits = _orbit_count(F.flag_count, [M.P, ab])
    if orbits not in (1, 2):
        raise InternalInconsistency(f"<P, alpha beta> has {orbits} orbits")
    return orbits == 2


def inventory(M: MapPermutation) -> MapInventory:
    F = M.flag_space
    n = F.flag_count

    vertex_cycles = _cycles(M.P)
    vertices = _conjugate_cycle_pairs(vertex_cycles, F.alpha, "vertex")

    face_cycles = _cycles(face_permutation(M))
    faces = _conjugate_cycle_pairs(face_cycles, F.beta, "face")
    face_lengths = tuple(sorted(len(pair[0]) for pair in faces))

    nu, eps, phi = len(vertices), n // 4, len(faces)
    chi = nu - eps + phi
    orientable = is_orientable(M)
    if orientable:
        if chi % 2:
            raise InternalInconsistency(f"orientable map with odd chi {chi}")
        genus = (2 - chi) // 2
    else:
        genus = 2 - chi
        if genus < 1:
            raise InternalInconsistency(f"non-orientable map with crosscap {genus}")
    return MapInventory(
        vertices=vertices,
        edge_count=eps,
        faces=faces,
        face_lengths=face_lengths,
        euler_characteristic=chi,
        orientable=orientable,
        genus=genus,
    )


# ---------------------------------------------------------------------------
# Automorphisms and isomorphism by propagation
# ---------------------------------------------------------------------------

def _propagate(
    M1: MapPermutation, M2: MapPermutation, image_of_0: int
) -> tuple[int, ...] | None:
    """The unique candidate bijection tau with tau(0) = image_of_0 commuting
    with alpha, beta and carrying P1 to P2; None if propagation clashes."""
    F1, F2 = M1.flag_space, M2.flag_space
    n = F1.flag_count
    tau = [-1] * n
    tau[0] = image_of_0
    stack = [0]
    gens1 = (M1.P, F1.alpha, F1.beta)
    gens2 = (M2.P, F2.alpha, F2.beta)
    while stack:
        f = stack.pop()
        for g1, g2 in zip(gens1, gens2):
            src, dst = g1[f], g2[tau[f]]
            if tau[src] == -1:
                tau[src] = dst
                stack.append(src)
            elif tau[src] != dst:
                return None
    if -1 in tau or sorted(tau) != list(range(n)):
        return None
    return tuple(tau)


def map_automorphisms(M: MapPermutation) -> list[tuple[int, ...]]:
    """All flag bijections commuting with alpha, beta and P (a free action)."""
    n = M.flag_space.flag_count
    out = []
    for image in range(n):
        tau = _propagate(M, M, image)
        if tau is not None:
            out.append(tau)
    return out


def is_isomorphic(M1: MapPermutation, M2: MapPermutation) -> tuple[int, ...] | None:
    """A flag bijection tau with tau alpha = alpha tau, tau beta = beta tau,
    tau P1 = P2 tau, or None."""
    if M1.flag_space.flag_count != M2.flag_space.flag_count:
        return None
    for image in range(M2.flag_space.flag_count):
        tau = _propagate(M1, M2, image)
        if tau is not None:
            return tau
    return None


def orientation_preserving_automorphisms(M: MapPermutation) -> list[tuple[int, ...]]:
    """Automorphisms preserving each <P, alpha beta> orbit; all of AutM when
    the map is non-orientable."""
    auts = map_automorphisms(M)
    if not is_orientable(M):
        return auts
    F = M.flag_space
    ab = [F.alpha[F.beta[f]] for f in range(F.flag_count)]
    # Label the two orbits by membership of flag 0's orbit.
    orbit0 = {0}
    stack = [0]
    while stack:
        f = stack.pop()
        for g in (M.P, ab):
            if g[f] not in orbit0:
                orbit0.add(g[f])
                stack.append(g[f])
    return [t for t in auts if t[0] in orbit0]


# ---------------------------------------------------------------------------
# Edge-side swaps
# ---------------------------------------------------------------------------

def side_swap_group(F: FlagSpace) -> SideSwapGroup:
    gens = []
    for x, ax, bx, abx in quadricells(F):
        sigma = list(range(F.flag_count))
        sigma[x], sigma[ax] = ax, x
        sigma[bx], sigma[abx] = abx, bx
        gens.append(tuple(sigma))
    return SideSwapGroup(flag_space=F, generators=tuple(gens))


def conjugate_map(M: MapPermutation, tau: Sequence[int]) -> MapPermutation:
    """tau P tau^{-1} on the same flag space (validity is preserved when tau
    commutes with alpha and beta; not re-checked)."""
    n = M.flag_space.flag_count
    P2 = [0] * n
    for f in range(n):
        P2[tau[f]] = tau[M.P[f]]
    return MapPermutation(flag_space=M.flag_space, P=tuple(P2))


def canonical_side_class(
    M: MapPermutation, cap: int = DEFAULT_SIDE_CLASS_CAP
) -> MapPermutation:
    """Lexicographically least sigma P sigma over the side-swap group.

    The canonical form of the map's class under exchanging both sides of any
    subset of edges; 2^edge_count conjugations are scanned.
    """
    F = M.flag_space
    eps = F.edge_count
    if (1 << eps) > cap:
        raise CapExceeded(f"2^{eps} side-swap conjugates exceed cap {cap}")
    cells = quadricells(F)
    n = F.flag_count
    best: tuple[int, ...] | None = None
    for mask in range(1 << eps):
        swap = [False] * n
        m = mask
        idx = 0
        while m:
            if m & 1:
                for f in cells[idx]:
                    swap[f] = True
            m >>= 1
            idx += 1
        # sigma(f) = alpha(f) on swapped quadricells, else f.
        P2 = [0] * n
        for f in range(n):
            src = F.alpha[f] if swap[f] else f
            img = M.P[src]
            P2[f] = F.alpha[img] if swap[img] else img
        t = tuple(P2)
        if best is None or t < best:
            best = t
    return MapPermutation(flag_space=F, P=best)
