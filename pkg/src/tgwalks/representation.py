"""Edge orderings and the event-expanded view of a temporal graph.

The scan solvers consume a *doubly-sorted representation*: one edge order
``e_arr`` that is non-decreasing in arrival time per head node, and one order
``e_dep`` non-decreasing in departure time per tail node, with cross maps
between them.  When all travel times are positive, globally sorting by
arrival/departure produces such a pair and additionally makes ``e_arr``
*half-extend-respecting* (every edge precedes all edges that could follow it
in a walk, ignoring upper waiting bounds), which is what makes one scan cover
every walk.

With zero-travel edges a global sort is not enough.  The event-expanded
(space-time) view makes the required order explicit: one copy per (node,
event time), one connection arc per temporal edge, and waiting arcs chaining
the copies of a node.  Peeling that multigraph from its sinks yields
half-extend-respecting orders, or proves that none exists because a cycle of
simultaneous zero-travel edges blocks the peel.
"""

from __future__ import annotations

from array import array
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .core import (
    NotZeroAcyclic,
    RepresentationError,
    TemporalGraph,
)

__all__ = [
    "DoublySortedRep",
    "SortCheck",
    "SpaceTimeGraph",
    "build_fully_sorted",
    "build_sorted_rep",
    "check_doubly_sorted",
    "from_space_time",
    "is_zero_acyclic",
    "to_space_time",
]

# Above this edge count the exhaustive half-extension check is skipped by
# default; it is the only quadratic-ish validation in the package.
HALF_EXTEND_CHECK_LIMIT = 10_000


@dataclass
class DoublySortedRep:
    """A pair of edge orders plus the derived lookup structures.

    ``e_arr``/``e_dep`` list edge ids; ``arr_pos``/``dep_pos`` are their
    inverses.  ``dep_buckets[v]`` lists the edges with tail ``v`` in
    ``e_dep`` order and ``bucket_pos[e]`` is the index of ``e`` inside its
    tail's bucket.  ``graph`` is the graph the orders were built for, kept
    so that solvers can take a representation alone.  The flags record how
    the orders were built:
    ``fully_sorted`` means globally sorted by arrival/departure (only claimed
    for positive travel times), ``half_extend_respecting`` means ``e_arr``
    lists every edge before all edges that half-extend it.
    """

    graph: TemporalGraph
    e_arr: array
    e_dep: array
    arr_pos: array
    dep_pos: array
    dep_buckets: list[array]
    bucket_pos: array
    half_extend_respecting: bool = False
    fully_sorted: bool = False

    @property
    def m(self) -> int:
        return len(self.e_arr)

    @classmethod
    def from_orders(
        cls,
        g: TemporalGraph,
        e_arr: Sequence[int],
        e_dep: Sequence[int],
        *,
        half_extend_respecting: bool = False,
        fully_sorted: bool = False,
    ) -> "DoublySortedRep":
        m = g.m
        if len(e_arr) != m or len(e_dep) != m:
            raise RepresentationError("edge orders must list every edge exactly once")
        arr_pos = array("q", [-1]) * m if m else array("q")
        dep_pos = array("q", [-1]) * m if m else array("q")
        for pos, e in enumerate(e_arr):
            if not 0 <= e < m or arr_pos[e] != -1:
                raise RepresentationError("arrival order is not a permutation")
            arr_pos[e] = pos
        for pos, e in enumerate(e_dep):
            if not 0 <= e < m or dep_pos[e] != -1:
                raise RepresentationError("departure order is not a permutation")
            dep_pos[e] = pos
        buckets: list[list[int]] = [[] for _ in range(g.n)]
        bucket_pos = array("q", bytes(8 * m))
        tails = g.tails
        for e in e_dep:
            b = buckets[tails[e]]
            bucket_pos[e] = len(b)
            b.append(e)
        packed_buckets = [array("q", b) for b in buckets]
        return cls(
            graph=g,
            e_arr=array("q", e_arr),
            e_dep=array("q", e_dep),
            arr_pos=arr_pos,
            dep_pos=dep_pos,
            dep_buckets=packed_buckets,
            bucket_pos=bucket_pos,
            half_extend_respecting=half_extend_respecting,
            fully_sorted=fully_sorted,
        )


def _stable_order(keys: Sequence[int]) -> list[int]:
    """Indices sorting ``keys`` non-decreasingly, ties by index."""
    if len(keys) >= 1 << 16:
        return np.argsort(np.asarray(keys, dtype=np.int64), kind="stable").tolist()
    return sorted(range(len(keys)), key=keys.__getitem__)


def build_sorted_rep(g: TemporalGraph) -> DoublySortedRep:
    """Globally sort edges by arrival and by departure time.

    Valid input for the zero-cycle solver for any graph.  The stronger flags
    are only set when all travel times are positive: with zero-travel edges
    a global arrival sort need not respect half-extension.
    """
    arrs = [g.deps[e] + g.travels[e] for e in range(g.m)]
    e_arr = _stable_order(arrs)
    e_dep = _stable_order(g.deps)
    positive = g.m == 0 or min(g.travels) > 0
    return DoublySortedRep.from_orders(
        g, e_arr, e_dep, half_extend_respecting=positive, fully_sorted=positive
    )


def build_fully_sorted(g: TemporalGraph) -> DoublySortedRep:
    """Globally sorted representation; requires positive travel times.

    With a zero-travel edge present the global sort may order simultaneous
    edges incompatibly; convert through :func:`to_space_time` /
    :func:`from_space_time` or use the zero-cycle solver instead.
    """
    if g.m and min(g.travels) <= 0:
        raise RepresentationError(
            "graph has zero-travel edges; build the order via from_space_time "
            "or solve with the zero-cycle scan"
        )
    return build_sorted_rep(g)


class SortCheck(NamedTuple):
    """Outcome of :func:`check_doubly_sorted`.

    ``half_extend_ok`` is ``None`` when the exhaustive check was skipped
    because the graph exceeds :data:`HALF_EXTEND_CHECK_LIMIT` edges.
    """

    node_arrival_ok: bool
    node_departure_ok: bool
    half_extend_ok: bool | None


def _validate_structure(g: TemporalGraph, rep: DoublySortedRep) -> None:
    m = g.m
    if rep.m != m or len(rep.e_dep) != m:
        raise RepresentationError("representation size does not match the graph")
    seen = bytearray(m)
    for e in rep.e_arr:
        if not 0 <= e < m or seen[e]:
            raise RepresentationError("arrival order is not a permutation")
        seen[e] = 1
    seen = bytearray(m)
    for e in rep.e_dep:
        if not 0 <= e < m or seen[e]:
            raise RepresentationError("departure order is not a permutation")
        seen[e] = 1
    for pos, e in enumerate(rep.e_arr):
        if rep.arr_pos[e] != pos:
            raise RepresentationError("arr_pos is inconsistent with e_arr")
    for pos, e in enumerate(rep.e_dep):
        if rep.dep_pos[e] != pos:
            raise RepresentationError("dep_pos is inconsistent with e_dep")
    flat = [e for bucket in rep.dep_buckets for e in bucket]
    if len(rep.dep_buckets) != g.n or sorted(flat) != list(range(m)):
        raise RepresentationError("dep_buckets do not partition the edge set")
    for v, bucket in enumerate(rep.dep_buckets):
        last = -1
        for k, e in enumerate(bucket):
            if g.tails[e] != v or rep.bucket_pos[e] != k:
                raise RepresentationError("dep_buckets or bucket_pos malformed")
            pos = rep.dep_pos[e]
            if pos <= last:
                raise RepresentationError("dep_buckets are not in e_dep order")
            last = pos


def check_doubly_sorted(
    g: TemporalGraph, rep: DoublySortedRep, *, half_extend: bool | None = None
) -> SortCheck:
    """Verify the sortedness contracts of a representation.

    Malformed structure (non-permutations, inconsistent cross maps) raises
    :class:`RepresentationError`; mere sort violations are reported in the
    returned flags.
    """
    _validate_structure(g, rep)
    deps, travels, heads, tails = g.deps, g.travels, g.heads, g.tails

    arrival_ok = True
    last_arr = [None] * g.n
    for e in rep.e_arr:
        v = heads[e]
        a = deps[e] + travels[e]
        prev = last_arr[v]
        if prev is not None and a < prev:
            arrival_ok = False
            break
        last_arr[v] = a

    departure_ok = True
    last_dep = [None] * g.n
    for e in rep.e_dep:
        u = tails[e]
        d = deps[e]
        prev = last_dep[u]
        if prev is not None and d < prev:
            departure_ok = False
            break
        last_dep[u] = d

    if half_extend is None:
        half_extend = g.m <= HALF_EXTEND_CHECK_LIMIT
    half_extend_ok: bool | None = None
    if half_extend:
        half_extend_ok = True
        arr_pos = rep.arr_pos
        alpha = g.alpha
        bucket_deps = [[deps[e] for e in b] for b in rep.dep_buckets]
        for e in range(g.m):
            v = heads[e]
            lo = deps[e] + travels[e] + alpha[v]
            bucket = rep.dep_buckets[v]
            k = bisect_left(bucket_deps[v], lo)
            pe = arr_pos[e]
            # A zero-travel self-loop at a zero-alpha node half-extends
            # itself, so f == e is a genuine violation here.
            for f in bucket[k:]:
                if arr_pos[f] <= pe:
                    half_extend_ok = False
                    break
            if not half_extend_ok:
                break

    return SortCheck(arrival_ok, departure_ok, half_extend_ok)


@dataclass
class SpaceTimeGraph:
    """Event-expanded multigraph of a temporal graph.

    Copies are identified globally: copy ``copy_base[v] + k`` is node ``v``
    at its ``k``-th event time ``node_times[v][k]``.  Connection arcs are
    indexed by the originating edge id; waiting arcs connect consecutive
    copies of a node and are kept implicit.
    """

    n: int
    node_times: list[list[int]]
    copy_base: list[int]
    num_copies: int
    conn_from: list[int]
    conn_to: list[int]

    def copy_id(self, v: int, t: int) -> int:
        times = self.node_times[v]
        k = bisect_left(times, t)
        if k == len(times) or times[k] != t:
            raise KeyError(f"node {v} has no copy at time {t}")
        return self.copy_base[v] + k

    def copy_node(self, cid: int) -> int:
        lo, hi = 0, self.n
        base = self.copy_base
        while lo + 1 < hi:
            mid = (lo + hi) // 2
            if base[mid] <= cid:
                lo = mid
            else:
                hi = mid
        return lo

    def copy_time(self, cid: int) -> int:
        v = self.copy_node(cid)
        return self.node_times[v][cid - self.copy_base[v]]

    def copies(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(copy_id, node, time)`` triples."""
        cid = 0
        for v, times in enumerate(self.node_times):
            for t in times:
                yield cid, v, t
                cid += 1

    def waiting_arcs(self) -> Iterator[tuple[int, int]]:
        for v, times in enumerate(self.node_times):
            base = self.copy_base[v]
            for k in range(len(times) - 1):
                yield base + k, base + k + 1

    def connection_arcs(self) -> Iterator[tuple[int, int, int]]:
        for e, (src, dst) in enumerate(zip(self.conn_from, self.conn_to)):
            yield src, dst, e


def to_space_time(g: TemporalGraph, rep: DoublySortedRep) -> SpaceTimeGraph:
    """Expand the graph into its event copies using the sorted orders.

    Event times of a node are the departures of its out-edges merged with
    the arrivals of its in-edges; both streams come pre-sorted from the
    representation, so the merge is a single pass.
    """
    n, m = g.n, g.m
    deps, travels, heads = g.deps, g.travels, g.heads
    arr_buckets: list[list[int]] = [[] for _ in range(n)]
    for e in rep.e_arr:
        arr_buckets[heads[e]].append(e)

    node_times: list[list[int]] = []
    copy_base = [0] * n
    conn_from = [-1] * m
    conn_to = [-1] * m
    cid = 0
    for v in range(n):
        copy_base[v] = cid
        dep_list = rep.dep_buckets[v]
        arr_list = arr_buckets[v]
        times: list[int] = []
        i = j = 0
        last = None
        while i < len(dep_list) or j < len(arr_list):
            td = deps[dep_list[i]] if i < len(dep_list) else None
            e_arr_edge = arr_list[j] if j < len(arr_list) else None
            ta = (
                deps[e_arr_edge] + travels[e_arr_edge]
                if e_arr_edge is not None
                else None
            )
            if ta is None or (td is not None and td <= ta):
                t, is_dep = td, True
            else:
                t, is_dep = ta, False
            if last is not None and t < last:
                raise RepresentationError(
                    "representation is not node-sorted; run check_doubly_sorted"
                )
            if t != last:
                times.append(t)
                last = t
            k = len(times) - 1
            if is_dep:
                conn_from[dep_list[i]] = cid + k
                i += 1
            else:
                conn_to[arr_list[j]] = cid + k
                j += 1
        cid += len(times)
        node_times.append(times)

    return SpaceTimeGraph(
        n=n,
        node_times=node_times,
        copy_base=copy_base,
        num_copies=cid,
        conn_from=conn_from,
        conn_to=conn_to,
    )


def _peel(st: SpaceTimeGraph, alpha: list[int], forward: bool) -> list[int]:
    """Emit the connection arcs in a walk-extension-respecting order.

    Repeatedly consumes copies whose remaining out-arcs permit it: copies
    with no out-arcs are removed outright together with all their in-arcs;
    copies of positive-``alpha`` nodes whose waiting out-arc is gone shed
    their connection in-arcs early (simultaneous edges cannot chain through
    such a node, so those arcs cannot precede anything still pending).
    Raises :class:`NotZeroAcyclic` when the peel stalls.

    With ``forward`` the arcs are the edge arcs themselves and the reversed
    emission order is arrival-compatible; otherwise all arcs are reversed in
    time and the emission order itself is departure-compatible.
    """
    m = len(st.conn_from)
    W = st.num_copies
    in_conn: list[list[int]] = [[] for _ in range(W)]
    out_conn = [0] * W
    arc_src = st.conn_from if forward else st.conn_to
    arc_dst = st.conn_to if forward else st.conn_from
    for e in range(m):
        in_conn[arc_dst[e]].append(e)
        out_conn[arc_src[e]] += 1

    # Waiting arcs chain copies of one node; time-reversal flips them.
    wait_pred = [-1] * W  # copy the waiting in-arc comes from, -1 when first
    out_wait = bytearray(W)
    for v, times in enumerate(st.node_times):
        base = st.copy_base[v]
        for k in range(len(times) - 1):
            if forward:
                wait_pred[base + k + 1] = base + k
                out_wait[base + k] = 1
            else:
                wait_pred[base + k] = base + k + 1
                out_wait[base + k + 1] = 1

    copy_alpha = bytearray(W)  # nonzero alpha flag per copy
    for v, times in enumerate(st.node_times):
        if alpha[v] > 0:
            base = st.copy_base[v]
            for k in range(len(times)):
                copy_alpha[base + k] = 1

    removed = bytearray(W)
    shed = bytearray(W)  # connection in-arcs already emitted via the early rule
    in_s = bytearray(W)
    in_s2 = bytearray(W)
    arc_gone = bytearray(m)
    wait_gone = bytearray(W)  # waiting in-arc of this copy removed
    emitted: list[int] = []

    stack_s: list[int] = []
    stack_s2: list[int] = []
    for c in range(W):
        if out_conn[c] == 0 and not out_wait[c]:
            in_s[c] = 1
            stack_s.append(c)
        if not out_wait[c] and copy_alpha[c]:
            in_s2[c] = 1
            stack_s2.append(c)

    def drop_out_conn(c: int) -> None:
        out_conn[c] -= 1
        if out_conn[c] == 0 and not out_wait[c] and not in_s[c]:
            in_s[c] = 1
            stack_s.append(c)

    def drop_out_wait(c: int) -> None:
        out_wait[c] = 0
        if out_conn[c] == 0:
            if not in_s[c]:
                in_s[c] = 1
                stack_s.append(c)
        elif copy_alpha[c] and not in_s2[c]:
            in_s2[c] = 1
            stack_s2.append(c)

    while stack_s or stack_s2:
        if stack_s:
            c = stack_s.pop()
            if removed[c]:
                continue
            for e in in_conn[c]:
                if not arc_gone[e]:
                    arc_gone[e] = 1
                    emitted.append(e)
                    drop_out_conn(arc_src[e])
            wp = wait_pred[c]
            if wp >= 0 and not wait_gone[c]:
                wait_gone[c] = 1
                drop_out_wait(wp)
            removed[c] = 1
        else:
            c = stack_s2.pop()
            if removed[c] or shed[c]:
                continue
            shed[c] = 1
            for e in in_conn[c]:
                if not arc_gone[e]:
                    arc_gone[e] = 1
                    emitted.append(e)
                    drop_out_conn(arc_src[e])

    if len(emitted) != m:
        # Walk remaining arcs until a copy repeats; every remaining arc's
        # target still has out-arcs, so the walk cannot dead-end.
        out_arcs: list[list[int]] = [[] for _ in range(W)]
        for e in range(m):
            if not arc_gone[e]:
                out_arcs[arc_src[e]].append(e)
        start = next(e for e in range(m) if not arc_gone[e])
        cur = arc_src[start]
        seen: set[int] = set()
        while cur not in seen:
            seen.add(cur)
            if out_arcs[cur]:
                cur = arc_dst[out_arcs[cur][0]]
            else:
                # only the waiting out-arc remains
                nxt = cur + 1 if forward else cur - 1
                cur = nxt
        raise NotZeroAcyclic(st.copy_node(cur), st.copy_time(cur))

    if forward:
        emitted.reverse()
    return emitted


def from_space_time(g: TemporalGraph, st: SpaceTimeGraph) -> DoublySortedRep:
    """Recover a half-extension-respecting doubly-sorted representation.

    Peels the space-time graph twice (once per time direction) to obtain the
    arrival and departure orders.  Raises :class:`NotZeroAcyclic` when the
    graph admits no such order.
    """
    e_arr = _peel(st, g.alpha, forward=True)
    e_dep = _peel(st, g.alpha, forward=False)
    return DoublySortedRep.from_orders(
        g, e_arr, e_dep, half_extend_respecting=True, fully_sorted=False
    )


def is_zero_acyclic(g: TemporalGraph) -> bool:
    """True when no cycle of simultaneous zero-travel edges exists."""
    try:
        from_space_time(g, to_space_time(g, build_sorted_rep(g)))
    except NotZeroAcyclic:
        return False
    return True
