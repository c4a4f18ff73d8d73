"""Plain-text readers and writers for graphs and edge-order files.

An instance file holds waiting bounds and edges; a representation file is
an instance file followed by explicit ``arr:``/``dep:`` edge orders.  Both
allow ``#`` comments and blank lines.  See ``docs/formats.md`` for the
byte-level grammar.
"""

from __future__ import annotations

from tgwalks.core import (
    INFINITY,
    RepresentationError,
    TemporalGraph,
    TemporalGraphError,
)
from tgwalks.representation import (
    DoublySortedRep,
    SpaceTimeGraph,
    check_doubly_sorted,
)

__all__ = [
    "FormatError",
    "emit_instance",
    "emit_rep",
    "emit_space_time",
    "parse_input",
    "parse_instance",
    "parse_rep",
]


class FormatError(TemporalGraphError):
    """Input text does not follow the documented file grammar."""


def _content_lines(text: str) -> list[tuple[int, str]]:
    """Non-blank, non-comment lines paired with their 1-based line numbers."""
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append((no, line))
    return out


def _ints(line: str, no: int, count: int, what: str) -> list[int]:
    fields = line.split()
    if len(fields) != count:
        raise FormatError(f"line {no}: expected {count} fields for {what}")
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise FormatError(f"line {no}: non-integer field in {what}") from None


def _parse_beta(token: str, no: int) -> int | float:
    if token == "inf":
        return INFINITY
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"line {no}: beta must be an integer or 'inf'") from None


def _parse_graph(lines: list[tuple[int, str]]) -> tuple[TemporalGraph, int]:
    """Build a graph from the leading lines; also return how many were used."""
    if not lines:
        raise FormatError("empty input")
    no, header = lines[0]
    n, m = _ints(header, no, 2, "the 'n m' header")
    if n < 0 or m < 0:
        raise FormatError(f"line {no}: n and m must be non-negative")
    need = 1 + n + m
    if len(lines) < need:
        raise FormatError(f"input ends early: expected {n} bound and {m} edge lines")

    g = TemporalGraph(n)
    for v in range(n):
        no, line = lines[1 + v]
        fields = line.split()
        if len(fields) != 2:
            raise FormatError(f"line {no}: expected 'alpha beta' for node {v}")
        try:
            alpha = int(fields[0])
        except ValueError:
            raise FormatError(f"line {no}: alpha must be an integer") from None
        g.set_bounds(v, alpha, _parse_beta(fields[1], no))
    for e in range(m):
        no, line = lines[1 + n + e]
        tail, head, dep, travel = _ints(line, no, 4, f"edge {e}")
        g.add_edge(tail, head, dep, travel)
    return g, need


def parse_instance(text: str) -> TemporalGraph:
    """Read an instance file into a graph; trailing content is an error."""
    lines = _content_lines(text)
    g, used = _parse_graph(lines)
    if used < len(lines):
        no, _ = lines[used]
        raise FormatError(f"line {no}: unexpected content after the last edge")
    return g


def _parse_order(line: str, no: int, tag: str, m: int) -> list[int]:
    fields = line.split()
    if not fields or fields[0] != tag:
        raise FormatError(f"line {no}: expected an '{tag}' edge-order line")
    if len(fields) != 1 + m:
        raise FormatError(f"line {no}: '{tag}' must list all {m} edge ids")
    try:
        return [int(f) for f in fields[1:]]
    except ValueError:
        raise FormatError(f"line {no}: non-integer edge id in '{tag}' line") from None


def parse_rep(text: str) -> tuple[TemporalGraph, DoublySortedRep]:
    """Read a representation file and verify its sortedness contracts.

    The ``fully_sorted`` / ``half_extend_respecting`` flags are recomputed
    from the given orders rather than trusted; half-extension is verified
    exhaustively only on small graphs, so a large zero-travel input keeps
    the conservative ``False`` and is routed through the zero-cycle solver.
    """
    lines = _content_lines(text)
    g, used = _parse_graph(lines)
    if len(lines) != used + 2:
        raise FormatError("expected exactly one 'arr:' and one 'dep:' line")
    e_arr = _parse_order(lines[used][1], lines[used][0], "arr:", g.m)
    e_dep = _parse_order(lines[used + 1][1], lines[used + 1][0], "dep:", g.m)
    rep = DoublySortedRep.from_orders(g, e_arr, e_dep)

    sc = check_doubly_sorted(g, rep)
    if not sc.node_arrival_ok:
        raise RepresentationError("arrival order is not sorted within some node")
    if not sc.node_departure_ok:
        raise RepresentationError("departure order is not sorted within some node")
    deps, travels = g.deps, g.travels
    rep.fully_sorted = (
        (g.min_travel() or 0) > 0 or g.m == 0
    ) and all(
        deps[e_arr[i]] + travels[e_arr[i]] <= deps[e_arr[i + 1]] + travels[e_arr[i + 1]]
        for i in range(g.m - 1)
    ) and all(deps[e_dep[i]] <= deps[e_dep[i + 1]] for i in range(g.m - 1))
    rep.half_extend_respecting = rep.fully_sorted or bool(sc.half_extend_ok)
    return g, rep


def parse_input(text: str) -> tuple[TemporalGraph, DoublySortedRep | None]:
    """Read either file kind, detected by the presence of an ``arr:`` line."""
    if any(line.split()[:1] == ["arr:"] for _, line in _content_lines(text)):
        return parse_rep(text)
    return parse_instance(text), None


def _beta_str(beta: int | float) -> str:
    return "inf" if beta == INFINITY else str(beta)


def emit_instance(g: TemporalGraph, header: list[str] | None = None) -> str:
    """Render a graph as an instance file, optionally with leading comments."""
    out = [f"# {h}" for h in header or []]
    out.append(f"{g.n} {g.m}")
    for v in range(g.n):
        out.append(f"{g.alpha[v]} {_beta_str(g.beta[v])}")
    for e in range(g.m):
        out.append(f"{g.tails[e]} {g.heads[e]} {g.deps[e]} {g.travels[e]}")
    return "\n".join(out) + "\n"


def emit_rep(g: TemporalGraph, rep: DoublySortedRep) -> str:
    """Render a representation file: the instance plus both edge orders."""
    body = emit_instance(g)
    arr = " ".join(str(e) for e in rep.e_arr)
    dep = " ".join(str(e) for e in rep.e_dep)
    return f"{body}arr: {arr}\ndep: {dep}\n"


def emit_space_time(g: TemporalGraph, st: SpaceTimeGraph) -> str:
    """Render the event-expanded graph: copies, then C/W-tagged arcs."""
    conn = list(st.connection_arcs())
    waits = list(st.waiting_arcs())
    out = [f"space-time {st.num_copies} {len(conn)} {len(waits)}"]
    for cid, v, t in st.copies():
        out.append(f"{cid} {v}@{t}")
    for src, dst, e in conn:
        out.append(f"C {src} {dst} {e}")
    for src, dst in waits:
        out.append(f"W {src} {dst}")
    return "\n".join(out) + "\n"
