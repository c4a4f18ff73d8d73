"""Minimum-cost walks to every reachable edge in one linear scan.

The solver sweeps ``e_arr`` once.  When a scanned edge ``e`` with head ``v``
is reachable, the departures of ``v`` that can extend it form a window of
``v``'s departure bucket; instead of touching each position, the walk cost
``c`` is recorded on the whole window.  Windows of one node only move right
(arrivals are sorted per head), so the recorded windows form an ordered
list of disjoint cost intervals per node.  Two facts keep the scan linear:

* a new window can only beat a *suffix* of the list, because stored costs
  are kept non-decreasing; pruning pops from the back;
* positions left behind by a new window can never be covered again, so
  their cost is final; finalization pops from the front.

``best_ext[f]`` is then the minimum cost of a walk from the source that
edge ``f`` can extend, fixed no later than the moment ``f`` itself is
scanned.  Right-isotonicity of the cost structure (see
:mod:`tgwalks.costs`) is what lets a single representative cost stand in
for every walk reaching an interval.

Costs recorded here are minima over the walks the representation
*respects*; on a half-extend-respecting representation of a zero-acyclic
graph that is every walk, hence true single-source minima.  For graphs
with zero-cycles see :mod:`tgwalks.zerocycle`, which reuses
:class:`CostScan` with a block-reordered feed.
"""

from __future__ import annotations

import heapq
from array import array
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from typing import Any, NamedTuple

from .core import INFINITY, TemporalGraph, TemporalGraphError, validate_walk
from .costs import (
    CostStructure,
    FewestEdges,
    ShortestFastest,
    latest_departure,
    lincomb_finalize,
    min_waiting,
)
from .representation import DoublySortedRep

__all__ = [
    "CostScan",
    "MinCostResult",
    "NodeBest",
    "ScanStats",
    "lincomb_minima",
    "min_cost_walks",
    "node_minima",
    "reconstruct_min_walk",
    "shortest_fastest_minima",
    "solve_fewest_edges",
    "solve_min_waiting",
    "solve_profile",
    "solve_profile_bounded_source",
    "solve_shortest_fastest",
]


@dataclass
class ScanStats:
    """Operation counters backing the linear-work claims.

    Creations are bounded by the edge count; truncations by total
    finalizations (each truncating call finalizes at least one position);
    cursor advances count both frontier and coverage moves, at most twice
    the edge count overall.
    """

    interval_creations: int = 0
    interval_removals: int = 0
    interval_truncations: int = 0
    finalizations: int = 0
    cursor_advances: int = 0


class CostScan:
    """Mutable state of one source query.

    Interval lists are plain Python lists with a moving head index, so both
    the finalizing front and the pruning back pop in O(1).  ``buckets`` and
    ``bucket_pos`` are referenced, not copied: the zero-cycle solver passes
    its own mutable copies and swaps same-departure edges mid-run.

    With ``debug`` the per-node structural invariants (disjoint adjacent
    intervals, non-decreasing costs, span consistency) are re-checked after
    every scanned edge.
    """

    __slots__ = (
        "g", "cs", "source", "buckets", "bucket_pos", "bucket_deps",
        "gammas", "entries", "best_ext", "parents", "intervals", "int_head",
        "frontier", "covered", "stats", "debug", "_combine", "_less",
    )

    def __init__(
        self,
        g: TemporalGraph,
        cs: CostStructure,
        source: int,
        buckets: list[list[int]],
        bucket_pos,
        *,
        debug: bool = False,
    ):
        if not 0 <= source < g.n:
            raise TemporalGraphError(f"source {source} out of range for n={g.n}")
        self.g = g
        self.cs = cs
        self.source = source
        self.buckets = buckets
        self.bucket_pos = bucket_pos
        deps = g.deps
        self.bucket_deps = [array("q", [deps[e] for e in b]) for b in buckets]
        self.gammas = cs.gamma_all(g)
        n, m = g.n, g.m
        self.entries: list[list[tuple[int, Any]]] = [[] for _ in range(n)]
        self.best_ext: list[Any] = [None] * m
        self.parents = array("q", [-1]) * m if m else array("q")
        self.intervals: list[list[tuple[int, int, Any, int]]] = [[] for _ in range(n)]
        self.int_head = array("q", bytes(8 * n))
        self.frontier = array("q", bytes(8 * n))  # first position not yet finalized
        self.covered = array("q", [-1]) * n if n else array("q")  # last covered pos
        self.stats = ScanStats()
        self.debug = debug
        self._combine = cs.combine
        self._less = cs.less

    def process_costs(self, v: int, j: int) -> None:
        """Finalize the departure positions of ``v`` up to ``j`` inclusive.

        Front intervals overlapping ``[frontier, j]`` write their cost and
        parent into the covered edges and are consumed or truncated; the
        frontier never moves backwards even when ``j`` lags behind it.
        """
        ivs = self.intervals[v]
        head = self.int_head[v]
        if head < len(ivs) and ivs[head][0] <= j:
            bucket = self.buckets[v]
            best_ext = self.best_ext
            parents = self.parents
            stats = self.stats
            while head < len(ivs):
                l, r, c, e = ivs[head]
                if l > j:
                    break
                stop = r if r <= j else j
                for p in range(l, stop + 1):
                    f = bucket[p]
                    best_ext[f] = c
                    parents[f] = e
                stats.finalizations += stop - l + 1
                if stop == r:
                    head += 1
                    stats.interval_removals += 1
                else:
                    ivs[head] = (j + 1, r, c, e)
                    stats.interval_truncations += 1
                    break
            if head == len(ivs):
                ivs.clear()
                head = 0
            self.int_head[v] = head
        nxt = j + 1
        if nxt > self.frontier[v]:
            self.stats.cursor_advances += nxt - self.frontier[v]
            self.frontier[v] = nxt

    def scan_edge(self, e: int) -> None:
        """One step of the arrival scan.

        Fixes the scanned edge's own extendable cost first (its departure
        position lies at or behind the tail's frontier), then, when the
        edge is reachable, records the cost of its best walk on the window
        of departures it enables.
        """
        g = self.g
        u = g.tails[e]
        self.process_costs(u, self.bucket_pos[e])
        be = self.best_ext[e]
        if be is None:
            if u != self.source:
                if self.debug:
                    self._check_node(u)
                return
            c = self.gammas[e]
            self.parents[e] = e
        else:
            ge = self.gammas[e]
            c = self._combine(be, ge)
            if u == self.source and self._less(ge, c):
                # A fresh start at the source beats extending; ties keep
                # the extension and its parent.
                c = ge
                self.parents[e] = e
        v = g.heads[e]
        self.entries[v].append((e, c))

        a = g.deps[e] + g.travels[e]
        bd = self.bucket_deps[v]
        l = bisect_left(bd, a + g.alpha[v], self.frontier[v])
        cov = self.covered[v]
        b = g.beta[v]
        if b == INFINITY:
            r = len(bd) - 1
        else:
            r = bisect_right(bd, a + b, cov + 1) - 1
        self.process_costs(v, l - 1)

        ivs = self.intervals[v]
        head = self.int_head[v]
        start = l if l > cov + 1 else cov + 1
        less = self._less
        stats = self.stats
        while len(ivs) > head and less(c, ivs[-1][2]):
            start = ivs[-1][0]
            ivs.pop()
            stats.interval_removals += 1
        if head and head == len(ivs):
            ivs.clear()
            self.int_head[v] = 0
        if start <= r:
            ivs.append((start, r, c, e))
            stats.interval_creations += 1
        if r > cov:
            stats.cursor_advances += r - cov
            self.covered[v] = r
        if self.debug:
            self._check_node(u)
            self._check_node(v)

    def run(self, order) -> None:
        """Scan every edge of ``order``; equals ``scan_edge`` in a loop.

        Hot-path variant: per-edge graph lookups are packed into scan-order
        arrays up front (one sequential pass instead of scattered reads on
        every step), and the no-finalization case of ``process_costs`` is
        inlined.  Must stay in lockstep with :meth:`scan_edge`, which
        remains the reference path: ``debug`` runs it literally, and the
        zero-cycle driver feeds it edge by edge.
        """
        if self.debug:
            for e in order:
                self.scan_edge(e)
            return
        g = self.g
        deps, travels = g.deps, g.travels
        t_tail = array("q", [g.tails[e] for e in order])
        t_head = array("q", [g.heads[e] for e in order])
        t_arr = array("q", [deps[e] + travels[e] for e in order])
        bucket_pos = self.bucket_pos
        t_bpos = array("q", [bucket_pos[e] for e in order])
        gammas = self.gammas
        t_gam = [gammas[e] for e in order]

        alpha, beta = g.alpha, g.beta
        source = self.source
        combine, less = self._combine, self._less
        entries, best_ext, parents = self.entries, self.best_ext, self.parents
        intervals, int_head = self.intervals, self.int_head
        frontier, covered = self.frontier, self.covered
        bucket_deps = self.bucket_deps
        creations = removals = advances = 0

        for e, u, v, a, bp, ge in zip(order, t_tail, t_head, t_arr, t_bpos, t_gam):
            ivs = intervals[u]
            if int_head[u] < len(ivs) and ivs[int_head[u]][0] <= bp:
                self.process_costs(u, bp)
            else:
                nxt = bp + 1
                if nxt > frontier[u]:
                    advances += nxt - frontier[u]
                    frontier[u] = nxt

            be = best_ext[e]
            if be is None:
                if u != source:
                    continue
                c = ge
                parents[e] = e
            else:
                c = combine(be, ge)
                if u == source and less(ge, c):
                    c = ge
                    parents[e] = e
            entries[v].append((e, c))

            bd = bucket_deps[v]
            fv = frontier[v]
            l = bisect_left(bd, a + alpha[v], fv)
            cov = covered[v]
            b = beta[v]
            if b == INFINITY:
                r = len(bd) - 1
            else:
                r = bisect_right(bd, a + b, cov + 1) - 1
            j = l - 1
            ivs = intervals[v]
            head = int_head[v]
            if head < len(ivs) and ivs[head][0] <= j:
                self.process_costs(v, j)
                head = int_head[v]
            else:
                nxt = j + 1
                if nxt > fv:
                    advances += nxt - fv
                    frontier[v] = nxt

            start = cov + 1 if l <= cov + 1 else l
            while len(ivs) > head and less(c, ivs[-1][2]):
                start = ivs[-1][0]
                ivs.pop()
                removals += 1
            if head and head == len(ivs):
                ivs.clear()
                int_head[v] = 0
            if start <= r:
                ivs.append((start, r, c, e))
                creations += 1
            if r > cov:
                advances += r - cov
                covered[v] = r

        stats = self.stats
        stats.interval_creations += creations
        stats.interval_removals += removals
        stats.cursor_advances += advances

    def _check_node(self, v: int) -> None:
        ivs = self.intervals[v][self.int_head[v]:]
        lo, hi = self.frontier[v], self.covered[v]
        if not ivs:
            assert hi < lo, f"node {v}: empty list but span [{lo}, {hi}]"
            return
        assert ivs[0][0] == lo, f"node {v}: first interval {ivs[0]} vs frontier {lo}"
        assert ivs[-1][1] == hi, f"node {v}: last interval {ivs[-1]} vs coverage {hi}"
        less_eq = self.cs.less_eq
        prev_r = None
        prev_c = None
        for l, r, c, _e in ivs:
            assert l <= r, f"node {v}: inverted interval ({l}, {r})"
            if prev_r is not None:
                assert l == prev_r + 1, f"node {v}: gap after position {prev_r}"
                assert less_eq(prev_c, c), f"node {v}: interval costs decreased"
            prev_r, prev_c = r, c


@dataclass
class MinCostResult:
    """Per-edge minima of one source query.

    ``entries[v]`` lists ``(edge, cost)`` for every reachable edge with
    head ``v``, in arrival-nondecreasing scan order.  ``parents`` encodes
    witness walks: an edge whose parent is itself starts at the source,
    ``-1`` means undefined (unreachable).  ``best_ext`` keeps the finalized
    extendable costs, mostly for diagnostics and the zero-cycle internals.
    """

    source: int
    graph: TemporalGraph
    structure: CostStructure
    entries: list[list[tuple[int, Any]]]
    best_ext: list[Any]
    parents: array
    stats: ScanStats
    _costs: dict[int, Any] | None = field(default=None, repr=False)

    def edge_costs(self) -> dict[int, Any]:
        """Reachable edge id -> minimum recorded cost."""
        if self._costs is None:
            self._costs = {e: c for ents in self.entries for (e, c) in ents}
        return self._costs


def min_cost_walks(
    rep: DoublySortedRep, cs: CostStructure, s: int, *, debug: bool = False
) -> MinCostResult:
    """Minimum cost per reachable edge over the walks ``rep`` respects.

    On a half-extend-respecting representation of a zero-acyclic graph the
    respected walks are all walks, so the result is the true single-source
    minimum for every edge.  Cost-structure properties are trusted; run
    :func:`tgwalks.costs.check_isotonicity` separately when in doubt.
    """
    scan = CostScan(rep.graph, cs, s, rep.dep_buckets, rep.bucket_pos, debug=debug)
    scan.run(rep.e_arr)
    return MinCostResult(
        source=s,
        graph=rep.graph,
        structure=cs,
        entries=scan.entries,
        best_ext=scan.best_ext,
        parents=scan.parents,
        stats=scan.stats,
    )


def reconstruct_min_walk(res: MinCostResult, e: int) -> list[int]:
    """Witness walk from the source ending with edge ``e``.

    Follows parent pointers to the self-parented start edge, validates the
    result, and re-folds its cost against the recorded value; any mismatch
    raises, so a returned walk is a verified witness.
    """
    costs = res.edge_costs()
    if e not in costs:
        raise TemporalGraphError(f"edge {e} is not reachable from node {res.source}")
    g = res.graph
    parents = res.parents
    walk = [e]
    x = e
    while parents[x] != x:
        x = parents[x]
        walk.append(x)
        if len(walk) > g.m:
            raise TemporalGraphError("parent pointers form a cycle")
    walk.reverse()
    if not validate_walk(g, walk, res.source):
        raise TemporalGraphError("parent chain is not a walk from the source")
    cs = res.structure
    folded = cs.gamma(g, walk[0])
    for f in walk[1:]:
        folded = cs.combine(folded, cs.gamma(g, f))
    if folded != costs[e]:
        raise TemporalGraphError(
            f"walk cost {folded!r} does not match recorded {costs[e]!r}"
        )
    return walk


class NodeBest(NamedTuple):
    """Per-node optimum: finalized objective value and a witness edge."""

    value: Any
    edge: int


def node_minima(res: MinCostResult) -> list[NodeBest | None]:
    """Minimum recorded cost per node under the structure's own order."""
    less = res.structure.less
    out: list[NodeBest | None] = []
    for ents in res.entries:
        best: NodeBest | None = None
        for e, c in ents:
            if best is None or less(c, best.value):
                best = NodeBest(c, e)
        out.append(best)
    return out


def shortest_fastest_minima(res: MinCostResult) -> list[NodeBest | None]:
    """Per node, lexicographic minimum of (duration, edge count).

    The scan keeps one entry per edge holding the latest feasible start and
    its fewest hops; subtracting starts from arrivals yields durations, and
    the node optimum is their lexicographic minimum over the entries.
    """
    g = res.graph
    out: list[NodeBest | None] = []
    for ents in res.entries:
        best: NodeBest | None = None
        for e, (start, hops) in ents:
            key = (g.deps[e] + g.travels[e] - start, hops)
            if best is None or key < best.value:
                best = NodeBest(key, e)
        out.append(best)
    return out


def lincomb_minima(res: MinCostResult) -> list[NodeBest | None]:
    """Finalized linear-combination optimum per node, with witness edges."""
    cs = res.structure
    g = res.graph
    out: list[NodeBest | None] = []
    for ents in res.entries:
        pair = lincomb_finalize(cs, g, ents)
        out.append(None if pair is None else NodeBest(pair[0], pair[1]))
    return out


def solve_fewest_edges(
    rep: DoublySortedRep, s: int
) -> tuple[list[NodeBest | None], MinCostResult]:
    """Fewest edges of any walk to each node, with witness edges."""
    res = min_cost_walks(rep, FewestEdges(), s)
    return node_minima(res), res


def solve_shortest_fastest(
    rep: DoublySortedRep, s: int
) -> tuple[list[NodeBest | None], MinCostResult]:
    """Shortest duration with an edge-count tie-break, per node."""
    res = min_cost_walks(rep, ShortestFastest(), s)
    return shortest_fastest_minima(res), res


def solve_min_waiting(
    rep: DoublySortedRep, s: int
) -> tuple[list[NodeBest | None], MinCostResult]:
    """Least total waiting time over walks to each node."""
    res = min_cost_walks(rep, min_waiting(), s)
    return lincomb_minima(res), res


def solve_profile(
    rep: DoublySortedRep, s: int, *, allow_zero_cycles: bool = False
) -> list[list[tuple[int, int]]]:
    """Pareto-maximal (departure, arrival) pairs of walks to each node.

    Each returned list is strictly increasing in both coordinates: leaving
    the source at any time ``t ≤ d`` of a pair ``(d, a)`` gets you there by
    ``a``, and no walk starting at ``t > d_last`` exists.
    """
    cs = latest_departure()
    if allow_zero_cycles:
        from .zerocycle import min_cost_walks_zero

        res = min_cost_walks_zero(rep, cs, s)
    else:
        res = min_cost_walks(rep, cs, s)
    g = rep.graph
    out: list[list[tuple[int, int]]] = []
    for ents in res.entries:
        best_arr: dict[int, int] = {}
        for e, c in ents:
            a = g.deps[e] + g.travels[e]
            d = c[0]
            cur = best_arr.get(d)
            if cur is None or a < cur:
                best_arr[d] = a
        pairs: list[tuple[int, int]] = []
        min_a: int | None = None
        for d in sorted(best_arr, reverse=True):
            a = best_arr[d]
            if min_a is None or a < min_a:
                pairs.append((d, a))
                min_a = a
        pairs.reverse()
        out.append(pairs)
    return out


def solve_profile_bounded_source(
    rep_rev: DoublySortedRep, x: int, *, allow_zero_cycles: bool = False
) -> list[list[tuple[int | float, int, int]]]:
    """Start-time segments with earliest arrivals at destination ``x``.

    ``rep_rev`` must represent the time-reversed graph (built over
    :meth:`tgwalks.core.TemporalGraph.reverse_time` output); ``x`` is the
    destination in the original orientation.  A walk departing node ``v``
    at time ``d`` serves every start time in the closed window
    ``[d - beta_v, d - alpha_v]``, so per node the per-departure earliest
    arrivals are swept into disjoint closed segments ``(lo, hi, arrival)``
    ordered by time; ``lo`` is ``-INFINITY`` when beta is unbounded.
    """
    cs = latest_departure()
    if allow_zero_cycles:
        from .zerocycle import min_cost_walks_zero

        res = min_cost_walks_zero(rep_rev, cs, x)
    else:
        res = min_cost_walks(rep_rev, cs, x)
    g_rev = rep_rev.graph
    out = []
    for v, ents in enumerate(res.entries):
        # Walks of the reversed graph from x ending with edge e are walks
        # of the original graph starting at v with edge e: the original
        # departure is minus the reversed arrival, and the best (latest)
        # reversed start is minus the earliest original arrival at x.
        best: dict[int, int] = {}
        for e, c in ents:
            d = -(g_rev.deps[e] + g_rev.travels[e])
            a = -c[0]
            cur = best.get(d)
            if cur is None or a < cur:
                best[d] = a
        out.append(_sweep_segments(best, g_rev.alpha[v], g_rev.beta[v]))
    return out


def _sweep_segments(
    best: dict[int, int], alpha_v: int, beta_v: int | float
) -> list[tuple[int | float, int, int]]:
    """Lower envelope of closed coverage windows, as merged segments."""
    heap: list[tuple[int, int]] = []  # (arrival, last covered start time)
    starts: dict[int, list[tuple[int, int]]] = {}
    cuts: set[int] = set()
    for d, a in best.items():
        hi = d - alpha_v
        cuts.add(hi + 1)
        if beta_v == INFINITY:
            heap.append((a, hi))
        else:
            lo = d - beta_v
            cuts.add(lo)
            starts.setdefault(lo, []).append((a, hi))
    heapq.heapify(heap)
    segs: list[tuple[int | float, int, int]] = []
    cur_val: int | None = heap[0][0] if heap else None
    cur_start: int | float = -INFINITY
    for t in sorted(cuts):
        for ev in starts.get(t, ()):
            heapq.heappush(heap, ev)
        while heap and heap[0][1] < t:
            heapq.heappop(heap)
        val = heap[0][0] if heap else None
        if val != cur_val:
            if cur_val is not None:
                segs.append((cur_start, t - 1, cur_val))
            cur_val = val
            cur_start = t
    return segs
