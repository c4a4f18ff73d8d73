"""Command-line entry point.

Subcommands: ``convert`` between file formats, ``reach`` and ``mincost``
and ``profile`` solvers, ``oracle`` as a brute-force cross-check, ``gen``
for seeded instances, and ``bench`` for the scaling harness.  Exit codes:
0 success, 1 usage or parse problems, 2 representation preconditions,
3 cost-structure violations.
"""

from __future__ import annotations

import argparse
import sys

from tgwalks.core import (
    INFINITY,
    RepresentationError,
    TemporalGraph,
    TemporalGraphError,
)
from tgwalks.costs import (
    CostViolation,
    LinComb,
    ShortestFastest,
    lincomb_finalize,
    structure_by_name,
)
from tgwalks.mincost import (
    min_cost_walks,
    reconstruct_min_walk,
    solve_profile,
    solve_profile_bounded_source,
)
from tgwalks.oracle import oracle_min_costs
from tgwalks.reachability import earliest_arrival, reachable_edges
from tgwalks.representation import (
    DoublySortedRep,
    build_fully_sorted,
    build_sorted_rep,
    from_space_time,
    to_space_time,
)
from tgwalks.zerocycle import min_cost_walks_zero

from .bench import run_bench
from .files import (
    FormatError,
    emit_instance,
    emit_rep,
    emit_space_time,
    parse_input,
)
from .generate import lb_arr, lb_dep, make_family

__all__ = ["main"]

DELTA_NAMES = (
    "arrival", "departure", "duration", "travel", "edge_cost", "hops", "waiting",
)


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with code 1, not 2."""

    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load(args) -> tuple[TemporalGraph, DoublySortedRep | None]:
    return parse_input(_read_text(args.input))


def _check_node(g: TemporalGraph, v: int, what: str) -> int:
    if not 0 <= v < g.n:
        raise FormatError(f"{what} {v} out of range for {g.n} nodes")
    return v


def _prepare(
    g: TemporalGraph, rep: DoublySortedRep | None, *, allow_zero: bool
) -> tuple[DoublySortedRep, bool]:
    """Pick the representation and solver route for a cost query.

    Returns ``(rep, zero_route)``.  Without zero-cycle permission a
    zero-travel graph still gets the plain scan when it is zero-acyclic,
    via the event-expansion ordering; a representation file that is not
    half-extend-respecting is routed through the zero-cycle solver, the
    only scan that is exact on such orders.
    """
    if rep is not None:
        return rep, allow_zero or not rep.half_extend_respecting
    if allow_zero:
        return build_sorted_rep(g), True
    mt = g.min_travel()
    if mt is None or mt > 0:
        return build_fully_sorted(g), False
    return from_space_time(g, to_space_time(g, build_sorted_rep(g))), False


def _make_structure(args, g: TemporalGraph):
    if args.cost == "lincomb":
        if args.deltas is None:
            raise FormatError("--cost lincomb requires --deltas d1,...,d7")
        parts = args.deltas.split(",")
        if len(parts) != 7:
            raise FormatError("--deltas must list exactly 7 coefficients")
        coeffs = dict(zip(DELTA_NAMES, (int(p) for p in parts)))
        edge_costs = None
        if args.edge_costs is not None:
            edge_costs = [int(p) for p in args.edge_costs.split(",")]
            if len(edge_costs) != g.m:
                raise FormatError(f"--edge-costs must list {g.m} values")
        return LinComb(**coeffs, edge_costs=edge_costs)
    if args.deltas is not None or args.edge_costs is not None:
        raise FormatError("--deltas/--edge-costs apply only to --cost lincomb")
    return structure_by_name(args.cost)


def _node_summaries(cs, g, entries):
    """Per node, ``(display, witness edge)`` for the cheapest entry, or None.

    ``entries[v]`` are ``(edge, cost)`` pairs; the display is the finalized
    objective for linear combinations, ``duration hops`` for the
    shortest-fastest order, and the raw value otherwise.
    """
    out = []
    for ents in entries:
        if not ents:
            out.append(None)
        elif isinstance(cs, LinComb):
            value, e = lincomb_finalize(cs, g, ents)
            out.append((str(value), e))
        elif isinstance(cs, ShortestFastest):
            best = None
            for e, (start, hops) in ents:
                key = (g.deps[e] + g.travels[e] - start, hops)
                if best is None or key < best[0]:
                    best = (key, e)
            out.append((f"{best[0][0]} {best[0][1]}", best[1]))
        else:
            best = None
            for e, c in ents:
                if best is None or cs.less(c, best[0]):
                    best = (c, e)
            out.append((str(best[0]), best[1]))
    return out


def cmd_convert(args) -> int:
    g, rep = _load(args)
    if args.to == "space-time":
        if rep is None:
            rep = build_sorted_rep(g)
        _write_text(args.output, emit_space_time(g, to_space_time(g, rep)))
        return 0
    if args.half_extend:
        if rep is None or not rep.half_extend_respecting:
            mt = g.min_travel()
            if mt is None or mt > 0:
                rep = build_fully_sorted(g)
            else:
                rep = from_space_time(g, to_space_time(g, build_sorted_rep(g)))
    elif rep is None:
        rep = build_sorted_rep(g)
    _write_text(args.output, emit_rep(g, rep))
    return 0


def cmd_reach(args) -> int:
    g, rep = _load(args)
    _check_node(g, args.source, "--source")
    if rep is None:
        rep = build_fully_sorted(g)
    elif not rep.fully_sorted:
        raise RepresentationError(
            "reach needs a fully sorted representation (positive travel times)"
        )
    arrivals = earliest_arrival(reachable_edges(rep, args.source))
    lines = [f"{v} {a}" for v, a in enumerate(arrivals) if a is not None]
    _write_text(args.output, "".join(line + "\n" for line in lines))
    return 0


def _solve(args, g, rep, cs):
    rep, zero_route = _prepare(g, rep, allow_zero=args.allow_zero_cycles)
    if zero_route:
        return min_cost_walks_zero(rep, cs, args.source)
    return min_cost_walks(rep, cs, args.source)


def cmd_mincost(args) -> int:
    g, rep = _load(args)
    _check_node(g, args.source, "--source")
    cs = _make_structure(args, g)
    res = _solve(args, g, rep, cs)
    lines = []
    for v, summary in enumerate(_node_summaries(cs, g, res.entries)):
        if summary is None:
            lines.append(f"{v} UNREACHABLE")
            continue
        display, e = summary
        if args.walks:
            walk = " ".join(str(x) for x in reconstruct_min_walk(res, e))
            lines.append(f"{v} {display} walk {walk}")
        else:
            lines.append(f"{v} {display}")
    _write_text(args.output, "".join(line + "\n" for line in lines))
    return 0


def cmd_oracle(args) -> int:
    g, rep = _load(args)
    _check_node(g, args.source, "--source")
    cs = _make_structure(args, g)
    res = oracle_min_costs(g, cs, args.source, max_edges=args.max_edges)
    entries = [[(e, res.costs[e]) for e in edges] for edges in res.reachable]
    lines = []
    for v, summary in enumerate(_node_summaries(cs, g, entries)):
        lines.append(f"{v} UNREACHABLE" if summary is None else f"{v} {summary[0]}")
    _write_text(args.output, "".join(line + "\n" for line in lines))
    return 0


def _fmt_lo(lo) -> str:
    return "-inf" if lo == -INFINITY else str(lo)


def cmd_profile(args) -> int:
    g, rep = _load(args)
    lines = []
    if args.dest is not None:
        _check_node(g, args.dest, "--dest")
        g_rev = g.reverse_time()
        rep_rev, zero_route = _prepare(
            g_rev, None, allow_zero=args.allow_zero_cycles
        )
        segs = solve_profile_bounded_source(
            rep_rev, args.dest, allow_zero_cycles=zero_route
        )
        for v, seg in enumerate(segs):
            if not seg:
                lines.append(f"{v} UNREACHABLE")
            else:
                body = " ".join(f"{_fmt_lo(lo)}..{hi}:{a}" for lo, hi, a in seg)
                lines.append(f"{v} {body}")
    else:
        source = 0 if args.source is None else args.source
        _check_node(g, source, "--source")
        rep, zero_route = _prepare(g, rep, allow_zero=args.allow_zero_cycles)
        profiles = solve_profile(rep, source, allow_zero_cycles=zero_route)
        for v, pairs in enumerate(profiles):
            if not pairs:
                lines.append(f"{v} UNREACHABLE")
            else:
                lines.append(f"{v} " + " ".join(f"{d}:{a}" for d, a in pairs))
    _write_text(args.output, "".join(line + "\n" for line in lines))
    return 0


def _parse_perm(text: str | None, n: int):
    if text is None:
        return None
    if text == "id":
        return list(range(1, n + 1))
    return [int(p) for p in text.split(",")]


def cmd_gen(args) -> int:
    if args.n < 1:
        raise FormatError("--n must be at least 1")
    perm = _parse_perm(args.perm, args.n)
    if perm is not None and args.family not in ("lb-dep", "lb-arr"):
        raise FormatError("--perm applies only to the lb-dep/lb-arr families")
    if args.family == "lb-dep":
        g = lb_dep(args.n, perm=perm, seed=args.seed)
    elif args.family == "lb-arr":
        g = lb_arr(args.n, perm=perm, seed=args.seed)
    else:
        g = make_family(args.family, args.n, args.seed, args.m)
    header = [f"family={args.family} n={args.n} seed={args.seed}"]
    _write_text(args.output, emit_instance(g, header))
    return 0


def cmd_bench(args) -> int:
    sizes = [int(p) for p in args.sizes.split(",")]
    if sizes != sorted(sizes) or len(set(sizes)) != len(sizes):
        raise FormatError("--sizes must be strictly ascending")
    cs = structure_by_name(args.cost)
    rows, slope = run_bench(
        args.family,
        sizes,
        cs,
        seed=args.seed,
        allow_zero_cycles=args.allow_zero_cycles,
    )
    out = ["# M build_s solve_s interval_creations cursor_advances markings"]
    for r in rows:
        out.append(
            f"{r.m} {r.build_seconds:.6f} {r.solve_seconds:.6f} "
            f"{r.interval_creations} {r.cursor_advances} {r.markings}"
        )
    out.append(f"slope {slope:.3f}")
    _write_text(args.output, "".join(line + "\n" for line in out))
    return 0


def _add_cost_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--cost",
        default="fewest",
        choices=[
            "fewest", "shortest-fastest", "min-waiting",
            "latest-departure", "earliest-arrival", "lincomb",
        ],
        help="objective to minimize",
    )
    p.add_argument(
        "--deltas",
        help="7 comma-separated coefficients for --cost lincomb: "
        "arrival,departure,duration,travel,edge-cost,hops,waiting",
    )
    p.add_argument(
        "--edge-costs", help="comma-separated per-edge costs for --cost lincomb"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tgwalks", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", help="rewrite an instance in another format")
    p.add_argument("input", help="instance or representation file, '-' for stdin")
    p.add_argument("--to", default="doubly-sorted",
                   choices=["doubly-sorted", "space-time"])
    p.add_argument("--half-extend", action="store_true",
                   help="require a half-extension-respecting arrival order")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("reach", help="earliest arrival per reachable node")
    p.add_argument("input")
    p.add_argument("--source", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_reach)

    p = sub.add_parser("mincost", help="minimum walk cost per node")
    p.add_argument("input")
    p.add_argument("--source", type=int, default=0)
    _add_cost_flags(p)
    p.add_argument("--allow-zero-cycles", action="store_true",
                   help="accept zero-cycles (needs an absorbing objective)")
    p.add_argument("--walks", action="store_true",
                   help="append a witness walk to each line")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_mincost)

    p = sub.add_parser("oracle", help="brute-force mincost for cross-checking")
    p.add_argument("input")
    p.add_argument("--source", type=int, default=0)
    _add_cost_flags(p)
    p.add_argument("--max-edges", type=int, default=None,
                   help="override the edge-count safety limit")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("profile", help="departure/arrival trade-off per node")
    p.add_argument("input")
    group = p.add_mutually_exclusive_group()
    # default None, not 0: argparse skips the exclusivity check for values
    # identical to the default, so --source 0 --dest 2 would slip through
    group.add_argument("--source", type=int,
                       help="profiles of walks from this node (default 0)")
    group.add_argument("--dest", type=int,
                       help="start-time segments toward this destination")
    p.add_argument("--allow-zero-cycles", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("gen", help="write a seeded instance")
    p.add_argument("--family", required=True,
                   choices=["lb-dep", "lb-arr", "random", "zero-heavy"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--m", type=int, default=None,
                   help="edge count for the random families (default 8n)")
    p.add_argument("--perm", help="explicit permutation ('id' or comma list) "
                   "for the lb families")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="time the solver across sizes")
    p.add_argument("--family", default="random",
                   choices=["random", "zero-heavy", "lb-dep", "lb-arr"])
    p.add_argument("--sizes", required=True,
                   help="comma-separated ascending edge counts")
    p.add_argument("--cost", default="fewest",
                   choices=["fewest", "shortest-fastest", "min-waiting",
                            "latest-departure", "earliest-arrival"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--allow-zero-cycles", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CostViolation as exc:
        print(f"tgwalks: error: {exc}", file=sys.stderr)
        return 3
    except RepresentationError as exc:
        print(f"tgwalks: error: {exc}", file=sys.stderr)
        return 2
    except (TemporalGraphError, ValueError, OSError) as exc:
        print(f"tgwalks: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
