"""Single-source reachable edges in one scan of the arrival order.

An edge is *reachable* from ``s`` when it ends some walk starting at ``s``.
Over a fully sorted representation with positive travel times one pass over
``e_arr`` suffices: whenever a scanned edge is reachable, the edges that can
follow it form a window of its head's departure bucket, and because arrivals
only grow, the windows of one node never move backwards.  A per-node cursor
therefore touches every departure position at most once, which is what makes
the scan linear.

Costs are deliberately absent here; :mod:`tgwalks.mincost` runs the same
scan shape with interval bookkeeping on top.
"""

from __future__ import annotations

from array import array
from bisect import bisect_left, bisect_right
from dataclasses import dataclass

from .core import INFINITY, TemporalGraph, TemporalGraphError, validate_walk
from .representation import DoublySortedRep, RepresentationError

__all__ = [
    "ReachabilityResult",
    "reachable_edges",
    "earliest_arrival",
    "reconstruct_reach_walk",
]


@dataclass
class ReachabilityResult:
    """Output of :func:`reachable_edges`.

    ``reachable[v]`` lists the reachable edges with head ``v`` in scan order,
    which is non-decreasing in arrival time.  ``parents[e]`` is an edge that
    ``e`` extends on some walk from the source (``-1`` when ``e`` departs
    from the source itself and was never marked through another edge).
    ``marks`` records which edges were marked through a window.

    ``markings`` and ``cursor_advances`` instrument the linear-work claim:
    their sum is at most twice the edge count.
    """

    source: int
    graph: TemporalGraph
    reachable: list[list[int]]
    parents: array
    marks: bytearray
    markings: int
    cursor_advances: int

    def is_reachable(self, e: int) -> bool:
        return bool(self.marks[e]) or self.graph.tails[e] == self.source

    def edge_set(self) -> set[int]:
        return {e for edges in self.reachable for e in edges}


def reachable_edges(rep: DoublySortedRep, s: int) -> ReachabilityResult:
    """Compute every reachable edge, grouped by head node.

    Requires a fully sorted representation of a positive-travel graph; with
    zero-travel edges a single marking pass is not sound (route through
    :func:`tgwalks.mincost.min_cost_walks` or the zero-cycle solver, which
    subsume reachability).
    """
    g = rep.graph
    if not rep.fully_sorted:
        raise RepresentationError("reachability scan needs a fully sorted representation")
    if g.m and min(g.travels) <= 0:
        raise RepresentationError("reachability scan needs positive travel times")
    if not 0 <= s < g.n:
        raise TemporalGraphError(f"source {s} out of range for n={g.n}")

    n, m = g.n, g.m
    deps, travels, heads, tails = g.deps, g.travels, g.heads, g.tails
    alpha, beta = g.alpha, g.beta
    buckets = rep.dep_buckets
    bucket_deps = [array("q", [deps[e] for e in b]) for b in buckets]

    reachable: list[list[int]] = [[] for _ in range(n)]
    parents = array("q", [-1]) * m if m else array("q")
    marks = bytearray(m)
    # first departure position of v never marked nor skipped
    cursor = array("q", bytes(8 * n))
    markings = 0
    advances = 0

    for e in rep.e_arr:
        if not marks[e] and tails[e] != s:
            continue
        v = heads[e]
        reachable[v].append(e)
        a = deps[e] + travels[e]
        bd = bucket_deps[v]
        cur = cursor[v]
        l = bisect_left(bd, a + alpha[v], cur)
        b = beta[v]
        r = len(bd) if b == INFINITY else bisect_right(bd, a + b, cur)
        if l < r:
            bucket = buckets[v]
            for p in range(l, r):
                f = bucket[p]
                marks[f] = 1
                parents[f] = e
            markings += r - l
        # Advance past the window even when it is empty: skipped positions
        # depart too early for every later arrival as well.
        new_cur = r if r > l else l
        if new_cur > cur:
            advances += new_cur - cur
            cursor[v] = new_cur

    return ReachabilityResult(
        source=s,
        graph=g,
        reachable=reachable,
        parents=parents,
        marks=marks,
        markings=markings,
        cursor_advances=advances,
    )


def earliest_arrival(res: ReachabilityResult) -> list[int | None]:
    """Per-node earliest arrival time, ``None`` where nothing arrives.

    The first edge of each reachable list already realizes the minimum since
    the lists are arrival-ordered.
    """
    g = res.graph
    return [
        g.deps[edges[0]] + g.travels[edges[0]] if edges else None
        for edges in res.reachable
    ]


def reconstruct_reach_walk(res: ReachabilityResult, e: int) -> list[int]:
    """A walk from the source ending with edge ``e``, as edge ids."""
    g = res.graph
    if not 0 <= e < g.m or not res.is_reachable(e):
        raise TemporalGraphError(f"edge {e} is not reachable from node {res.source}")
    walk = [e]
    parents = res.parents
    while parents[e] != -1:
        e = parents[e]
        walk.append(e)
    walk.reverse()
    if not validate_walk(g, walk, res.source):
        raise TemporalGraphError("parent chain is not a walk from the source")
    return walk
