"""Plain-text readers and writers for every on-disk object.

All formats are single-space separated with one trailing newline, so a
saved file is byte-identical across runs.  Anywhere a path is expected,
a ``fixtures:NAME`` token resolves to the named registry instance
instead of touching the filesystem.
"""

from __future__ import annotations

from pathlib import Path

from .autaction import GraphAutomorphism
from .cayley import CayleySet, FlagSpace, generic_flag_space, validate_cayley_set
from .errors import BadParameter
from .fixtures import Fixture, fixture
from .groups import FiniteGroup, build_group_from_table
from .maps import MapPermutation, validate_map

FIXTURE_PREFIX = "fixtures:"


def resolve_fixture(token: str) -> Fixture | None:
    if isinstance(token, str) and token.startswith(FIXTURE_PREFIX):
        return fixture(token[len(FIXTURE_PREFIX):])
    return None


def _tokens_of(path: str) -> list[str]:
    text = Path(path).read_text()
    return text.split()


def load_group(path: str) -> FiniteGroup:
    fx = resolve_fixture(path)
    if fx is not None:
        if fx.group is None:
            raise BadParameter(f"fixture {fx.name} has no group")
        return fx.group
    toks = _tokens_of(path)
    if not toks or toks[0] != "group":
        raise BadParameter(f"{path}: expected leading 'group <order>'")
    n = int(toks[1])
    need = 2 + n * n
    if len(toks) < need:
        raise BadParameter(f"{path}: table needs {n * n} entries")
    flat = [int(t) for t in toks[2:need]]
    table = [flat[i * n : (i + 1) * n] for i in range(n)]
    names = None
    rest = toks[need:]
    if rest:
        if rest[0] != "names" or len(rest) != 1 + n:
            raise BadParameter(f"{path}: trailing content is not a names line")
        names = tuple(rest[1:])
    return build_group_from_table(table, names=names)


def save_group(G: FiniteGroup, path: str) -> None:
    lines = [f"group {G.order}"]
    lines += [" ".join(str(x) for x in row) for row in G.table]
    # the format is whitespace-separated, so labels with spaces cannot ride along
    if G.names is not None and all(n and not any(c.isspace() for c in n) for n in G.names):
        lines.append("names " + " ".join(G.names))
    Path(path).write_text("\n".join(lines) + "\n")


def load_cayset_members(path: str) -> tuple[int, ...]:
    """Raw element indices, unvalidated (elem2 has no group table to check against)."""
    fx = resolve_fixture(path)
    if fx is not None:
        if fx.cayset is None:
            raise BadParameter(f"fixture {fx.name} has no connection set")
        return fx.cayset.members
    toks = _tokens_of(path)
    if not toks or toks[0] != "cayset":
        raise BadParameter(f"{path}: expected leading 'cayset <k>'")
    k = int(toks[1])
    if len(toks) != 2 + k:
        raise BadParameter(f"{path}: expected exactly {k} element indices")
    return tuple(int(t) for t in toks[2:])


def load_cayset(G: FiniteGroup, path: str) -> CayleySet:
    fx = resolve_fixture(path)
    if fx is not None:
        if fx.cayset is None:
            raise BadParameter(f"fixture {fx.name} has no connection set")
        return fx.cayset
    return validate_cayley_set(G, load_cayset_members(path))


def save_cayset(S: CayleySet, path: str) -> None:
    line = f"cayset {len(S.members)}\n" + " ".join(str(s) for s in S.members)
    Path(path).write_text(line + "\n")


def load_map(path: str, flag_space: FlagSpace | None = None) -> MapPermutation:
    fx = resolve_fixture(path)
    if fx is not None:
        if fx.map is None:
            raise BadParameter(f"fixture {fx.name} has no pinned map")
        return fx.map
    toks = _tokens_of(path)
    if not toks or toks[0] != "map":
        raise BadParameter(f"{path}: expected leading 'map <flag_count>'")
    n = int(toks[1])
    body = [int(t) for t in toks[2:]]
    if len(body) == n:
        if flag_space is None:
            raise BadParameter(
                f"{path}: plain map file needs a group and connection set for its flag space"
            )
        if flag_space.flag_count != n:
            raise BadParameter(
                f"{path}: map on {n} flags does not fit flag space of {flag_space.flag_count}"
            )
        return validate_map(flag_space, body)
    if len(body) == 3 * n:
        F = generic_flag_space(body[n : 2 * n], body[2 * n :])
        return validate_map(F, body[:n])
    raise BadParameter(
        f"{path}: expected {n} images (plus optionally alpha and beta lines)"
    )


def save_map(M: MapPermutation, path: str) -> None:
    F = M.flag_space
    lines = [f"map {F.flag_count}", " ".join(str(x) for x in M.P)]
    if F.source != "cayley":
        lines.append(" ".join(str(x) for x in F.alpha))
        lines.append(" ".join(str(x) for x in F.beta))
    Path(path).write_text("\n".join(lines) + "\n")


def load_automorphisms(path: str, vertex_count: int | None = None) -> list[GraphAutomorphism]:
    """One automorphism per line, each a full list of vertex images."""
    out = []
    for ln, line in enumerate(Path(path).read_text().splitlines(), start=1):
        if not line.strip():
            continue
        vm = tuple(int(t) for t in line.split())
        if vertex_count is not None and len(vm) != vertex_count:
            raise BadParameter(f"{path}:{ln}: expected {vertex_count} vertex images")
        if sorted(vm) != list(range(len(vm))):
            raise BadParameter(f"{path}:{ln}: not a permutation")
        out.append(GraphAutomorphism(vm))
    if not out:
        raise BadParameter(f"{path}: no automorphisms found")
    return out


def save_automorphisms(auts, path: str) -> None:
    lines = [" ".join(str(x) for x in a.vertex_map) for a in auts]
    Path(path).write_text("\n".join(lines) + "\n")
