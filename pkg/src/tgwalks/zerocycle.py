"""Minimum-cost walks on graphs that may contain zero-cycles.

A cycle of simultaneous zero-travel edges through zero-minimum-waiting
nodes defeats every fixed scan order: whichever of its edges is scanned
first could, in principle, be improved by a walk through the others.  When
the cost structure additionally satisfies *absorption* (zero-cycle edges
never improve a cost, see :func:`tgwalks.costs.check_absorption`), optimal
walks never need to close such a cycle, and the scan order can be repaired
on the fly.

The driver feeds the cost scan of :mod:`tgwalks.mincost` in globally
arrival-sorted order.  Edges sharing an arrival time split into four
blocks, scanned as: positive travel, zero travel with tail waiting, the
*zero-block* (zero travel, no waiting at either end), zero travel with
head waiting.  Only zero-block edges can both be extended and extend
others at the same instant; before scanning one, the block is reordered
along a minimum-cost forest of its static digraph so that every walk the
answer needs appears in scan order.  The matching departure-side repair is
a swap of same-departure edges inside the tails' buckets, which is why the
driver hands the scan mutable copies and never touches the input
representation.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from typing import Any, NamedTuple

from .core import TemporalGraph
from .costs import CostStructure, CostViolation
from .mincost import CostScan, MinCostResult
from .representation import DoublySortedRep

__all__ = [
    "ArrivalBlock",
    "MinCostForest",
    "ZeroBlockDigraph",
    "algebraic_dijkstra",
    "min_cost_walks_zero",
    "partition_blocks",
    "reorder_zero_block",
]


class ArrivalBlock(NamedTuple):
    """Edges of one arrival time, split by how they interact with it.

    ``positive`` edges cannot be extended at their own arrival instant by
    anything scanned later; ``tail_wait`` zero-travel edges cannot extend a
    same-time arrival (their tail imposes waiting); ``zero`` edges (the
    zero-block) can do both; ``head_wait`` zero-travel edges cannot be
    extended at this time.  Concatenating the four lists over increasing
    arrival yields a node-arrival-sorted permutation of all edges.
    """

    arrival: int
    positive: list[int]
    tail_wait: list[int]
    zero: list[int]
    head_wait: list[int]


def partition_blocks(rep: DoublySortedRep) -> list[ArrivalBlock]:
    """Split the edges into per-arrival blocks, globally arrival-sorted.

    The global order merges the per-head arrival lists with a priority
    queue keyed by (arrival, head id), so the result is deterministic for
    any valid input ordering.
    """
    g = rep.graph
    deps, travels, tails, heads, alpha = g.deps, g.travels, g.tails, g.heads, g.alpha
    by_head: list[list[int]] = [[] for _ in range(g.n)]
    for e in rep.e_arr:
        by_head[heads[e]].append(e)
    merged = heapq.merge(*by_head, key=lambda e: (deps[e] + travels[e], heads[e]))
    blocks: list[ArrivalBlock] = []
    blk: ArrivalBlock | None = None
    for e in merged:
        a = deps[e] + travels[e]
        if blk is None or blk.arrival != a:
            blk = ArrivalBlock(a, [], [], [], [])
            blocks.append(blk)
        if travels[e] > 0:
            blk.positive.append(e)
        elif alpha[tails[e]] > 0:
            blk.tail_wait.append(e)
        elif alpha[heads[e]] > 0:
            blk.head_wait.append(e)
        else:
            blk.zero.append(e)
    return blocks


@dataclass
class ZeroBlockDigraph:
    """Static view of one zero-block.

    Arcs mirror the block's edges one-to-one as ``(head, weight, edge)``
    adjacency per tail.  ``sources`` lists the nodes reached by a walk
    ending with exactly one block edge, in first-reached order; ``init``
    and ``witness`` carry that walk's cost and final edge.
    """

    cs: CostStructure
    adj: dict[int, list[tuple[int, Any, int]]]
    sources: list[int]
    init: dict[int, Any]
    witness: dict[int, int]


@dataclass
class MinCostForest:
    """Output of :func:`algebraic_dijkstra`.

    ``parent[v]`` is the relaxed in-arc ``(tail, weight, edge)``, ``None``
    for a source that kept its initial key; vertices missing from ``key``
    were unreachable.  ``pop_order`` lists vertices as settled, with keys
    non-decreasing under the structure's order.
    """

    key: dict[int, Any]
    parent: dict[int, tuple[int, Any, int] | None]
    pop_order: list[int]


class _HeapKey:
    """Heap entry ordered by an externally supplied strict order.

    Cost values compare under the structure's order, which need not agree
    with Python's tuple comparison; ties break by vertex id.
    """

    __slots__ = ("cost", "v", "_less")

    def __init__(self, cost: Any, v: int, less) -> None:
        self.cost = cost
        self.v = v
        self._less = less

    def __lt__(self, other: "_HeapKey") -> bool:
        if self._less(self.cost, other.cost):
            return True
        if self._less(other.cost, self.cost):
            return False
        return self.v < other.v


def algebraic_dijkstra(d: ZeroBlockDigraph, *, debug: bool = False) -> MinCostForest:
    """Minimum-cost forest from the sources under the structure's order.

    Binary heap with lazy decrease-key: improved vertices are pushed again
    and stale entries skipped at pop time.  Arc weights must never improve
    a cost (checked by the caller); initial source keys carry no such
    restriction, negative starts merely pop first.
    """
    cs = d.cs
    less = cs.less
    combine = cs.combine
    key: dict[int, Any] = {}
    parent: dict[int, tuple[int, Any, int] | None] = {}
    heap: list[_HeapKey] = []
    for v in d.sources:
        key[v] = d.init[v]
        parent[v] = None
        heap.append(_HeapKey(key[v], v, less))
    heapq.heapify(heap)
    settled: set[int] = set()
    pop_order: list[int] = []
    prev = None
    while heap:
        top = heapq.heappop(heap)
        u = top.v
        if u in settled:
            continue
        settled.add(u)
        pop_order.append(u)
        ku = key[u]
        if debug:
            assert prev is None or not less(ku, prev), "pop keys decreased"
            prev = ku
            arc = parent[u]
            if arc is not None:
                assert key[arc[0]] is not None
                assert combine(key[arc[0]], arc[1]) == ku, "forest fold mismatch"
        for w, c, eid in d.adj.get(u, ()):
            nk = combine(ku, c)
            if w not in key or less(nk, key[w]):
                if debug:
                    assert w not in settled, "settled vertex improved"
                key[w] = nk
                parent[w] = (u, c, eid)
                heapq.heappush(heap, _HeapKey(nk, w, less))
    return MinCostForest(key=key, parent=parent, pop_order=pop_order)


def _covering_cost(scan: CostScan, u: int, q: int) -> Any:
    """Cost stored for departure position ``q`` of ``u``, or ``None``.

    Binary search over the interval list; intervals are adjacent, so the
    rightmost one starting at or before ``q`` covers it iff its right end
    does.
    """
    ivs = scan.intervals[u]
    lo = scan.int_head[u]
    hi = len(ivs)
    while lo < hi:
        mid = (lo + hi) // 2
        if ivs[mid][0] <= q:
            lo = mid + 1
        else:
            hi = mid
    if lo == scan.int_head[u]:
        return None
    l, r, c, _e = ivs[lo - 1]
    return c if q <= r else None


def reorder_zero_block(
    scan: CostScan, block: list[int], tau: int, *, debug: bool = False
) -> list[int]:
    """Scan order for one zero-block, repairing the departure side too.

    The edge opening each forest tree is swapped to the first unclaimed
    position of its tail's departure run at time ``tau`` (tracked by ``p``)
    so both orders agree.  Order: per tree root, the walk-defining edge,
    then the tree's arcs breadth-first; unreached block edges keep their
    relative order at the end.
    """
    g = scan.g
    cs = scan.cs
    gammas = scan.gammas
    tails, heads = g.tails, g.heads
    deps = g.deps

    # Best extendable cost of the (single) interval over each tail's
    # dep=tau run, fixed before any block edge is scanned.
    p: dict[int, int] = {}
    b_tail: dict[int, Any] = {}
    for e in block:
        u = tails[e]
        if u in p:
            continue
        bd = scan.bucket_deps[u]
        lo, hi = scan.frontier[u], len(bd)
        while lo < hi:
            mid = (lo + hi) // 2
            if bd[mid] < tau:
                lo = mid + 1
            else:
                hi = mid
        p[u] = lo
        b_tail[u] = _covering_cost(scan, u, lo)

    source = scan.source
    less = cs.less
    combine = cs.combine
    adj: dict[int, list[tuple[int, Any, int]]] = {}
    init: dict[int, Any] = {}
    witness: dict[int, int] = {}
    sources: list[int] = []
    for e in block:
        u, v = tails[e], heads[e]
        ge = gammas[e]
        if not cs.is_nonnegative(ge):
            raise CostViolation(
                f"zero-cycle edge {e} can decrease a walk cost under "
                f"{cs.name}; the scan order cannot be repaired"
            )
        adj.setdefault(u, []).append((v, ge, e))
        bt = b_tail.get(u)
        if u == source and (bt is None or less(ge, combine(bt, ge))):
            c = ge
        elif bt is not None:
            c = combine(bt, ge)
        else:
            continue
        cur = init.get(v)
        if cur is None:
            sources.append(v)
            init[v] = c
            witness[v] = e
        elif less(c, cur):
            init[v] = c
            witness[v] = e

    if not sources:
        return block

    forest = algebraic_dijkstra(
        ZeroBlockDigraph(cs=cs, adj=adj, sources=sources, init=init, witness=witness),
        debug=debug,
    )
    children: dict[int, list[tuple[int, int]]] = {}
    for w, arc in forest.parent.items():
        if arc is not None:
            children.setdefault(arc[0], []).append((w, arc[2]))

    order: list[int] = []
    emitted = set()
    buckets = scan.buckets
    bucket_pos = scan.bucket_pos
    for v in sources:
        if forest.parent[v] is not None:
            continue
        e = witness[v]
        order.append(e)
        emitted.add(e)
        u = tails[e]
        i, j = p[u], bucket_pos[e]
        if debug:
            assert i <= j and deps[buckets[u][i]] == tau
        if i != j:
            f = buckets[u][i]
            buckets[u][i], buckets[u][j] = e, f
            bucket_pos[e], bucket_pos[f] = i, j
        p[u] = i + 1
        queue = deque((v,))
        while queue:
            x = queue.popleft()
            for w, eid in children.get(x, ()):
                order.append(eid)
                emitted.add(eid)
                queue.append(w)
    if len(order) < len(block):
        order.extend(e for e in block if e not in emitted)
    return order


def min_cost_walks_zero(
    rep: DoublySortedRep, cs: CostStructure, s: int, *, debug: bool = False
) -> MinCostResult:
    """Minimum cost per reachable edge, tolerating zero-cycles.

    Requires isotonicity and absorption of ``cs`` on this instance (see
    :func:`tgwalks.costs.check_absorption`); an absorption breach found at
    a zero-block edge raises :class:`tgwalks.costs.CostViolation`.  On
    zero-acyclic inputs the output equals :func:`tgwalks.mincost.
    min_cost_walks` over a half-extend-respecting representation.  The
    input representation is never mutated.
    """
    g = rep.graph
    buckets = [list(b) for b in rep.dep_buckets]
    bucket_pos = list(rep.bucket_pos)
    scan = CostScan(g, cs, s, buckets, bucket_pos, debug=debug)
    scan_edge = scan.scan_edge
    for blk in partition_blocks(rep):
        for e in blk.positive:
            scan_edge(e)
        for e in blk.tail_wait:
            scan_edge(e)
        if blk.zero:
            for e in reorder_zero_block(scan, blk.zero, blk.arrival, debug=debug):
                scan_edge(e)
        for e in blk.head_wait:
            scan_edge(e)
    return MinCostResult(
        source=s,
        graph=g,
        structure=cs,
        entries=scan.entries,
        best_ext=scan.best_ext,
        parents=scan.parents,
        stats=scan.stats,
    )
