"""Command-line front end.

Every subcommand assembles its whole report as a list of lines and prints
it once, so identical inputs give byte-identical output no matter how many
workers ran underneath.  ``--kv`` switches the same data to line-oriented
``key=value`` form for scripting.  Failures print their message and end
with ``error-token: <Token>``; exit codes are 0 (ok), 1 (validation),
2 (cap exceeded), 3 (internal invariant broke), 64 (usage).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from math import lcm
from pathlib import Path

from mpmath import mp

from .autaction import decompose, graph_automorphism_group
from .cayley import build_cayley_graph, build_flag_space
from .errors import BadParameter, CayleymapsError, InternalInconsistency
from .fileio import (
    load_automorphisms,
    load_cayset,
    load_cayset_members,
    load_group,
    load_map,
    resolve_fixture,
    save_map,
)
from .fixtures import FIXTURE_DESCRIPTIONS, FIXTURE_NAMES, fixture, run_fixture_checks
from .formulas import CountReport, census
from .groups import FiniteGroup, conjugacy_classes
from .maps import inventory, map_automorphisms, orientation_preserving_automorphisms
from .oracle import (
    DEFAULT_ORACLE_CAP,
    SIGMA,
    acting_group,
    burnside_count,
    compare_with_formula,
    enumerate_embeddings,
    extend_group,
)
from .special import (
    elementary_abelian_census,
    sym_locally_census,
    sym_orientable_census,
    three_involution_census,
    three_involution_comparison,
)


# ---------------------------------------------------------------------------
# Report assembly
# ---------------------------------------------------------------------------

class Report:
    """Accumulates either aligned plain text or key=value lines."""

    def __init__(self, kv: bool):
        self.kv = kv
        self.lines: list[str] = []

    def field(self, key: str, value) -> None:
        if self.kv:
            self.lines.append(f"{key}={value}")
        else:
            self.lines.append(f"{key}: {value}")

    def blank(self) -> None:
        if not self.kv:
            self.lines.append("")

    def table(self, name: str, headers: list[str], rows: list[list]) -> None:
        cells = [[str(c) for c in row] for row in rows]
        if self.kv:
            for i, row in enumerate(cells):
                for h, c in zip(headers, row):
                    self.lines.append(f"{name}.{i}.{h}={c}")
            return
        widths = [
            max(len(h), *(len(r[j]) for r in cells)) if cells else len(h)
            for j, h in enumerate(headers)
        ]
        if self.lines:
            self.blank()
        self.lines.append("  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip())
        for row in cells:
            self.lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())


def _b(x: bool) -> str:
    return "true" if x else "false"


def _fmt_log2(v) -> str:
    return mp.nstr(v, 15)


def _count_fields(R: Report, prefix: str, rep: CountReport) -> None:
    R.field(f"{prefix}-mode", rep.mode)
    if rep.mode == "exact":
        R.field(prefix, rep.exact_value)
        R.field(f"{prefix}-log2", _fmt_log2(rep.log2_value))
    elif rep.mode == "log2":
        R.field(f"{prefix}-log2", _fmt_log2(rep.log2_value))
    else:
        R.field(f"{prefix}-residue", rep.residue)
        R.field(f"{prefix}-prime", rep.prime)


def _rep_label(G: FiniteGroup, vm) -> str:
    g = vm[0]
    if tuple(vm) == tuple(G.table[t][g] for t in range(G.order)):
        return G.name_of(g)
    return "[" + " ".join(str(x) for x in vm) + "]"


def _fmt_partition(part) -> str:
    pieces = []
    for i, k in enumerate(part, start=1):
        if k == 1:
            pieces.append(str(i))
        elif k > 1:
            pieces.append(f"{i}^{k}")
    return " ".join(pieces)


def _fmt_ratio(r: Fraction | None) -> str:
    return "-" if r is None else str(r)


def _load_pair(source: list[str]):
    """Two file paths, or one fixtures:NAME standing for the pair."""
    if len(source) == 1:
        fx = resolve_fixture(source[0])
        if fx is None or fx.group is None or fx.cayset is None:
            raise BadParameter(
                "expected <group-file> <cayset-file>, or a single fixtures:NAME with both"
            )
        return fx.group, fx.cayset
    if len(source) == 2:
        G = load_group(source[0])
        return G, load_cayset(G, source[1])
    raise BadParameter("expected <group-file> <cayset-file>, or a single fixtures:NAME")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_group(args) -> list[str]:
    G = load_group(args.group_file)
    R = Report(args.kv)
    classes = conjugacy_classes(G)
    R.field("order", G.order)
    R.field("abelian", _b(all(len(c.members) == 1 for c in classes)))
    R.field("exponent", lcm(*(c.element_order for c in classes)))
    R.field("conjugacy-classes", len(classes))
    R.field("valid", "true")
    return R.lines


def cmd_cayley(args) -> list[str]:
    G, S = _load_pair(args.source)
    graph = build_cayley_graph(G, S)
    full = graph_automorphism_group(graph, args.aut_cap)
    dec = decompose(full, G)
    R = Report(args.kv)
    R.field("group-order", G.order)
    R.field("degree", len(S.members))
    R.field("aut-order", len(full))
    R.field("is-grr", _b(dec.is_grr))
    R.field("is-direct-product", _b(dec.is_direct_product))
    R.field("h-order", len(dec.complement) if dec.is_direct_product else 0)
    return R.lines


def cmd_map(args) -> list[str]:
    F = None
    if args.group_file is not None or args.cayset_file is not None:
        if args.group_file is None or args.cayset_file is None:
            raise BadParameter("--group and --cayset must be given together")
        G = load_group(args.group_file)
        F = build_flag_space(G, load_cayset(G, args.cayset_file))
    M = load_map(args.map_file, flag_space=F)
    inv = inventory(M)
    R = Report(args.kv)
    R.field("flags", M.flag_space.flag_count)
    R.field("vertices", len(inv.vertices))
    R.field("edges", inv.edge_count)
    R.field("faces", len(inv.faces))
    R.field("face-lengths", ",".join(str(x) for x in inv.face_lengths))
    R.field("euler-characteristic", inv.euler_characteristic)
    R.field("orientable", _b(inv.orientable))
    R.field("genus" if inv.orientable else "crosscap", inv.genus)
    auts = map_automorphisms(M)
    R.field("aut-order", len(auts))
    R.field("orientation-preserving", len(orientation_preserving_automorphisms(M)))
    R.field("valid", "true")
    return R.lines


def cmd_census_formula(args) -> list[str]:
    G, S = _load_pair(args.source)
    H = None
    if args.h_file is not None:
        H = load_automorphisms(args.h_file, vertex_count=G.order)
    res = census(G, S, H, args.surface, args.mode)
    R = Report(args.kv)
    R.field("surface", res.surface)
    R.field("acting-size", res.acting_size)
    R.field("classes", len(res.classes))
    rows = []
    for st, phi in zip(res.classes, res.phi_values):
        rows.append([
            _rep_label(G, st.representative.vertex_map),
            st.class_size, st.order, st.l_value, st.branch, st.alpha_exponent, phi,
        ])
    R.table("class", ["class", "size", "order", "l", "branch", "alpha", "phi"], rows)
    R.blank()
    _count_fields(R, "total", res.count)
    return R.lines


def cmd_census_oracle(args) -> list[str]:
    G, S = _load_pair(args.source)
    F = build_flag_space(G, S)
    gs = enumerate_embeddings(F, args.semantics, args.surface, args.cap, args.workers)
    acting = extend_group(acting_group(G, S, args.acting), F)
    oc = burnside_count(acting, gs, args.workers)
    R = Report(args.kv)
    R.field("surface", args.surface)
    R.field("semantics", args.semantics)
    R.field("ground-set", len(gs.keys))
    R.field("acting-size", oc.acting_size)
    rows = [
        [_rep_label(G, xi.source.vertex_map), fc]
        for xi, fc in zip(acting, oc.fixed_counts)
    ]
    R.table("fixed", ["element", "fixed"], rows)
    orows = []
    for i, (size, inv) in enumerate(zip(oc.orbit_sizes, oc.orbit_inventories)):
        orows.append([
            i, size, len(inv.vertices), inv.edge_count, len(inv.faces),
            inv.euler_characteristic, _b(inv.orientable),
            ",".join(str(x) for x in inv.face_lengths),
        ])
    R.table(
        "orbit",
        ["orbit", "size", "vertices", "edges", "faces", "chi", "orientable", "face-lengths"],
        orows,
    )
    R.blank()
    R.field("orbit-count", oc.orbit_count)
    if args.dump is not None:
        out = Path(args.dump)
        out.mkdir(parents=True, exist_ok=True)
        width = len(str(max(len(oc.orbit_representatives) - 1, 0)))
        for i, M in enumerate(oc.orbit_representatives):
            save_map(M, str(out / f"rep_{i:0{width}d}.map"))
        R.field("dump-dir", args.dump)
        R.field("dump-count", len(oc.orbit_representatives))
    return R.lines


def cmd_verify(args) -> list[str]:
    G, S = _load_pair(args.source)
    H = None
    if args.h_file is not None:
        H = load_automorphisms(args.h_file, vertex_count=G.order)
    rep = compare_with_formula(G, S, H, args.surface, args.semantics, args.cap, args.workers)
    R = Report(args.kv)
    R.field("surface", rep.surface)
    R.field("semantics", rep.semantics)
    rows = []
    for line in rep.lines:
        st = line.stats
        rows.append([
            _rep_label(G, st.representative.vertex_map),
            st.class_size, st.order, st.l_value, st.branch,
            line.formula_phi, line.oracle_fixed, _fmt_ratio(line.ratio),
        ])
    R.table(
        "class",
        ["class", "size", "order", "l", "branch", "formula", "oracle", "ratio"],
        rows,
    )
    R.blank()
    R.field("formula-total", rep.formula_total)
    R.field("oracle-orbits", rep.oracle_orbits)
    R.field("total-ratio", _fmt_ratio(rep.total_ratio))
    return R.lines


def cmd_sym_grr(args) -> list[str]:
    if args.surface == "O":
        res = sym_orientable_census(args.n, args.mode, args.workers)
    else:
        res = sym_locally_census(args.n, args.mode, args.workers)
    R = Report(args.kv)
    R.field("n", res.n)
    R.field("surface", res.surface)
    if res.special_type is not None:
        R.field("special-involution-type", _fmt_partition(res.special_type))
    rows = []
    for row in res.rows:
        info = row.info
        rows.append([
            _fmt_partition(info.partition), info.class_size, info.order, info.bucket,
            row.l_printed,
            "-" if row.alpha_exponent is None else row.alpha_exponent,
            row.term_exponent,
        ])
    R.table(
        "class",
        ["partition", "size", "order", "bucket", "l", "alpha", "exponent"],
        rows,
    )
    if res.l_table:
        R.table(
            "l-table",
            ["partition", "printed", "recomputed"],
            [[_fmt_partition(r.partition), r.printed, r.recomputed] for r in res.l_table],
        )
    R.blank()
    _count_fields(R, "total", res.total)
    if res.label is not None:
        R.field("label", res.label)
    return R.lines


def cmd_three_inv(args) -> list[str]:
    G, S = _load_pair(args.source)
    res = three_involution_census(G, S.members, args.surface, args.mode)
    R = Report(args.kv)
    R.field("group-order", res.group_order)
    R.field("surface", res.surface)
    R.field("hypothesis-ok", _b(res.hypothesis_ok))
    if res.violations:
        R.table(
            "violation",
            ["t", "x"],
            [[G.name_of(t), G.name_of(x)] for t, x in res.violations],
        )
    rows = [
        [G.name_of(r.representative), r.class_size, r.order, _b(r.even_order),
         r.base_exponent, r.alpha_exponent]
        for r in res.rows
    ]
    R.table(
        "class",
        ["class", "size", "order", "even", "base", "alpha"],
        rows,
    )
    if args.compare:
        crows = []
        for st, assumed_l, assumed_alpha, phi_true, match in three_involution_comparison(
            G, S.members, args.surface
        ):
            crows.append([
                _rep_label(G, st.representative.vertex_map),
                assumed_l, st.l_value, assumed_alpha, st.alpha_exponent,
                phi_true, _b(match),
            ])
        R.table(
            "compare",
            ["class", "assumed-l", "true-l", "assumed-alpha", "true-alpha", "phi", "match"],
            crows,
        )
    R.blank()
    _count_fields(R, "total", res.total)
    return R.lines


def cmd_elem2(args) -> list[str]:
    members = load_cayset_members(args.cayset_file)
    res = elementary_abelian_census(args.n, members, args.surface, args.mode)
    R = Report(args.kv)
    R.field("n", res.n)
    R.field("k", res.k)
    R.field("surface", res.surface)
    R.field("grr-valid", _b(res.grr_valid))
    _count_fields(R, "total", res.total)
    if res.label is not None:
        R.field("label", res.label)
    return R.lines


def cmd_fixtures(args) -> list[str]:
    R = Report(args.kv)
    if args.action == "list":
        R.table(
            "fixture",
            ["name", "description"],
            [[name, FIXTURE_DESCRIPTIONS[name]] for name in FIXTURE_NAMES],
        )
        return R.lines
    names = [args.name] if args.name else list(FIXTURE_NAMES)
    for name in names:
        fixture(name)  # fail early on unknown names
    failures = []
    for name in names:
        for label, ok, detail in run_fixture_checks(name):
            R.field(f"{name}.{label}", "ok" if ok else f"FAIL ({detail})")
            if not ok:
                failures.append(f"{name}.{label}: {detail}")
    if failures:
        raise InternalInconsistency(
            "\n".join(R.lines + [f"{len(failures)} fixture check(s) failed"])
        )
    R.field("checks", "all passed")
    return R.lines


# ---------------------------------------------------------------------------
# Parser and entry point
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    """Usage errors print help and exit 64 instead of argparse's default 2."""

    def error(self, message):
        self.print_help(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        print("error-token: Usage", file=sys.stderr)
        raise SystemExit(64)


def _pair_argument(sub) -> None:
    sub.add_argument(
        "source",
        nargs="+",
        metavar="SOURCE",
        help="group file and cayset file, or one fixtures:NAME",
    )


def build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--kv", action="store_true", help="line-oriented key=value output")

    parser = _Parser(prog="cayleymaps", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", metavar="SUBCOMMAND")

    p = subs.add_parser("group", parents=[common], help="validate a group file")
    p.add_argument("action", choices=("check",))
    p.add_argument("group_file")
    p.set_defaults(func=cmd_group)

    p = subs.add_parser("cayley", parents=[common], help="connection set and graph checks")
    p.add_argument("action", choices=("check",))
    _pair_argument(p)
    p.add_argument("--aut-cap", type=int, default=64)
    p.set_defaults(func=cmd_cayley)

    p = subs.add_parser("map", parents=[common], help="validate a map file")
    p.add_argument("action", choices=("check",))
    p.add_argument("map_file")
    p.add_argument("--group", dest="group_file")
    p.add_argument("--cayset", dest="cayset_file")
    p.set_defaults(func=cmd_map)

    p = subs.add_parser("census", parents=[common], help="count embedding classes")
    csubs = p.add_subparsers(dest="path", metavar="PATH")

    pf = csubs.add_parser("formula", parents=[common], help="class-sum formulas")
    _pair_argument(pf)
    pf.add_argument("--h-file", dest="h_file")
    pf.add_argument("--surface", choices=("O", "N", "L"), default="O")
    pf.add_argument("--mode", default="exact")
    pf.set_defaults(func=cmd_census_formula)

    po = csubs.add_parser("oracle", parents=[common], help="exhaustive enumeration")
    _pair_argument(po)
    po.add_argument("--surface", choices=("O", "N", "L"), default="O")
    po.add_argument("--semantics", choices=("raw", "sigma", "dart"), default=SIGMA)
    po.add_argument("--acting", choices=("rg", "rgxh", "full"), default="rgxh")
    po.add_argument("--cap", type=int, default=DEFAULT_ORACLE_CAP)
    po.add_argument("--workers", type=int, default=None)
    po.add_argument("--dump", metavar="DIR")
    po.set_defaults(func=cmd_census_oracle)

    p = subs.add_parser("verify", parents=[common], help="formula vs oracle, with ratios")
    _pair_argument(p)
    p.add_argument("--h-file", dest="h_file")
    p.add_argument("--surface", choices=("O", "N", "L"), default="O")
    p.add_argument("--semantics", choices=("raw", "sigma", "dart"), default=SIGMA)
    p.add_argument("--cap", type=int, default=DEFAULT_ORACLE_CAP)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("sym-grr", parents=[common], help="symmetric-group cubic censuses")
    p.add_argument("n", type=int)
    p.add_argument("--surface", choices=("O", "L"), default="L")
    p.add_argument("--mode", default="exact")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_sym_grr)

    p = subs.add_parser(
        "three-inv", parents=[common], help="three-involution-generated censuses"
    )
    _pair_argument(p)
    p.add_argument("--surface", choices=("O", "N", "L"), default="L")
    p.add_argument("--mode", default="exact")
    p.add_argument("--compare", action="store_true", help="check the assumed l per class")
    p.set_defaults(func=cmd_three_inv)

    p = subs.add_parser(
        "elem2", parents=[common], help="elementary abelian 2-group censuses"
    )
    p.add_argument("n", type=int)
    p.add_argument("cayset_file")
    p.add_argument("--surface", choices=("O", "N", "L"), default="L")
    p.add_argument("--mode", default="exact")
    p.set_defaults(func=cmd_elem2)

    p = subs.add_parser("fixtures", parents=[common], help="named instances and self-checks")
    p.add_argument("action", choices=("list", "run"))
    p.add_argument("name", nargs="?", default=None)
    p.set_defaults(func=cmd_fixtures)

    return parser


def main(argv=None) -> int:
    # exact-mode totals reach ~1.1M digits at the n=10 cap; the default
    # int-to-str guard (4300 digits) would refuse to print them
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(4_000_000)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if not hasattr(args, "func"):
        parser.print_help(sys.stderr)
        print("error-token: Usage", file=sys.stderr)
        return 64
    try:
        lines = args.func(args)
    except CayleymapsError as e:
        msg = str(e)
        body = ([msg] if msg else []) + [f"error-token: {e.token}"]
        print("\n".join(body))
        return e.exit_code
    print("\n".join(lines))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
