"""Brute-force reference solvers built on explicit walk enumeration.

Everything here is exponential in the worst case and guarded by an edge
budget.  Tests use these to pin down expected outputs of the scan solvers on
small instances; nothing in the package calls them on real workloads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from .core import TemporalGraph, TemporalGraphError
from .costs import CostStructure, CostViolation, LinComb, check_absorption, lincomb_finalize
from .representation import is_zero_acyclic

__all__ = [
    "ORACLE_EDGE_LIMIT",
    "OracleResult",
    "fold_walk_cost",
    "oracle_edge_costs",
    "oracle_edge_costs_multi",
    "oracle_min_costs",
    "oracle_node_values",
    "oracle_profile",
    "oracle_profiles",
    "oracle_reachable_edges",
    "tree_walk",
    "walk_tree",
]

# Edge-simple enumeration can touch 2^m walks; refuse anything that could
# plausibly be handed to the scan solvers instead.
ORACLE_EDGE_LIMIT = 64


def walk_tree(
    g: TemporalGraph, source: int, *, max_edges: int | None = None
) -> tuple[list[int], list[int]]:
    """Enumerate every edge-simple walk from ``source`` as a prefix tree.

    Returns parallel lists ``(parents, eids)``: tree node ``i`` stands for
    the walk obtained by appending edge ``eids[i]`` to the walk of node
    ``parents[i]`` (``-1`` for single-edge walks), and parents always come
    before children.  On a graph free of simultaneous zero-travel cycles a
    walk can never repeat an edge, so the tree covers all walks; otherwise
    it covers exactly the edge-simple ones.
    """
    limit = ORACLE_EDGE_LIMIT if max_edges is None else max_edges
    if g.m > limit:
        raise ValueError(f"oracle is limited to {limit} edges, graph has {g.m}")
    if not 0 <= source < g.n:
        raise TemporalGraphError(f"source {source} out of range for {g.n} nodes")

    out_edges: list[list[int]] = [[] for _ in range(g.n)]
    for e in range(g.m):
        out_edges[g.tails[e]].append(e)

    deps, travels, heads = g.deps, g.travels, g.heads
    alpha, beta = g.alpha, g.beta
    parents: list[int] = []
    eids: list[int] = []
    stack: list[tuple[int, int, int]] = [(-1, e, 1 << e) for e in out_edges[source]]
    while stack:
        par, e, used = stack.pop()
        idx = len(parents)
        parents.append(par)
        eids.append(e)
        v = heads[e]
        a = deps[e] + travels[e]
        lo, hi = alpha[v], beta[v]
        for f in out_edges[v]:
            if used >> f & 1:
                continue
            gap = deps[f] - a
            if lo <= gap <= hi:
                stack.append((idx, f, used | 1 << f))
    return parents, eids


def tree_walk(parents: Sequence[int], eids: Sequence[int], i: int) -> list[int]:
    """Materialize tree node ``i`` of :func:`walk_tree` as an edge id list."""
    walk: list[int] = []
    while i >= 0:
        walk.append(eids[i])
        i = parents[i]
    walk.reverse()
    return walk


def oracle_reachable_edges(
    g: TemporalGraph, source: int, *, max_edges: int | None = None
) -> set[int]:
    """Ids of edges some source walk ends with."""
    _, eids = walk_tree(g, source, max_edges=max_edges)
    return set(eids)


def fold_walk_cost(cs: CostStructure, g: TemporalGraph, walk: Sequence[int]) -> Any:
    """Cost of a concrete walk: seed with the first edge, combine the rest."""
    if not walk:
        raise TemporalGraphError("cannot cost an empty walk")
    c = cs.gamma(g, walk[0])
    for e in walk[1:]:
        c = cs.combine(c, cs.gamma(g, e))
    return c


def oracle_edge_costs_multi(
    structures: Sequence[CostStructure],
    g: TemporalGraph,
    source: int,
    *,
    max_edges: int | None = None,
) -> list[list[Any]]:
    """Cheapest walk cost per final edge for several structures at once.

    Shares one walk tree across all structures; per structure the result
    lists one cost per edge id, ``None`` where no source walk ends.  When
    the graph contains simultaneous zero-travel cycles, restricting to
    edge-simple walks is only sound for structures where looping such a
    cycle never pays off, so that is verified first.
    """
    zero_acyclic = is_zero_acyclic(g)
    for cs in structures:
        if not zero_acyclic and not check_absorption(cs, g):
            raise CostViolation(
                "graph has simultaneous zero-travel cycles and the cost "
                "structure rewards looping them; minimum costs are unbounded"
            )
    parents, eids = walk_tree(g, source, max_edges=max_edges)

    results: list[list[Any]] = []
    for cs in structures:
        gammas = cs.gamma_all(g)
        less = cs.less
        combine = cs.combine
        best: list[Any] = [None] * g.m
        node_cost: list[Any] = [None] * len(parents)
        for i in range(len(parents)):
            par = parents[i]
            e = eids[i]
            c = gammas[e] if par < 0 else combine(node_cost[par], gammas[e])
            node_cost[i] = c
            b = best[e]
            if b is None or less(c, b):
                best[e] = c
        results.append(best)
    return results


def oracle_edge_costs(
    cs: CostStructure,
    g: TemporalGraph,
    source: int,
    *,
    max_edges: int | None = None,
) -> list[Any]:
    """Cheapest walk cost per final edge, ``None`` where nothing ends."""
    return oracle_edge_costs_multi([cs], g, source, max_edges=max_edges)[0]


@dataclass
class OracleResult:
    """Single-source brute-force answer.

    ``costs[e]`` is the cheapest cost over walks ending with edge ``e``
    (``None`` when no walk does); ``reachable[v]`` collects the reachable
    in-edges of ``v``; ``walks`` optionally keeps every enumerated walk.
    """

    source: int
    costs: list[Any]
    reachable: list[set[int]]
    walks: list[list[int]] | None = None


def oracle_min_costs(
    g: TemporalGraph,
    cs: CostStructure,
    s: int,
    *,
    max_edges: int | None = None,
    keep_walks: bool = False,
) -> OracleResult:
    """Exhaustive single-source minima; the reference for the scan solvers."""
    costs = oracle_edge_costs(cs, g, s, max_edges=max_edges)
    reach: list[set[int]] = [set() for _ in range(g.n)]
    for e in range(g.m):
        if costs[e] is not None:
            reach[g.heads[e]].add(e)
    walks = None
    if keep_walks:
        parents, eids = walk_tree(g, s, max_edges=max_edges)
        walks = [tree_walk(parents, eids, i) for i in range(len(parents))]
    return OracleResult(source=s, costs=costs, reachable=reach, walks=walks)


def oracle_node_values(
    cs: LinComb,
    g: TemporalGraph,
    source: int,
    *,
    max_edges: int | None = None,
) -> list[Any]:
    """Finalized optimum per node for a linear-combination objective.

    For a fixed final edge the finalized value is the comparison score plus
    a term depending only on that edge's arrival, so finalizing the per-edge
    minima and taking the best over each node's in-edges is exact.
    """
    best = oracle_edge_costs(cs, g, source, max_edges=max_edges)
    entries: list[list[tuple[int, Any]]] = [[] for _ in range(g.n)]
    for e in range(g.m):
        if best[e] is not None:
            entries[g.heads[e]].append((e, best[e]))
    out: list[Any] = []
    for v in range(g.n):
        pick = lincomb_finalize(cs, g, entries[v])
        out.append(None if pick is None else pick[0])
    return out


def oracle_profile(
    g: TemporalGraph, source: int, v: int, *, max_edges: int | None = None
) -> list[tuple[int, int]]:
    """Pareto-optimal (departure, arrival) pairs of walks to node ``v``."""
    if not 0 <= v < g.n:
        raise TemporalGraphError(f"node {v} out of range for {g.n} nodes")
    return oracle_profiles(g, source, max_edges=max_edges)[v]


def oracle_profiles(
    g: TemporalGraph, source: int, *, max_edges: int | None = None
) -> list[list[tuple[int, int]]]:
    """Pareto-optimal (departure, arrival) pairs of source walks, per node.

    A pair survives when no other walk to the same node departs at least as
    late and arrives at least as early; survivors are strictly increasing in
    both coordinates.  Nodes without incoming walks get an empty list; the
    source itself only gets pairs from walks that loop back to it.
    """
    parents, eids = walk_tree(g, source, max_edges=max_edges)
    deps, travels, heads = g.deps, g.travels, g.heads
    first_dep = [0] * len(parents)
    raw: list[set[tuple[int, int]]] = [set() for _ in range(g.n)]
    for i in range(len(parents)):
        par = parents[i]
        e = eids[i]
        d = deps[e] if par < 0 else first_dep[par]
        first_dep[i] = d
        raw[heads[e]].add((d, deps[e] + travels[e]))

    out: list[list[tuple[int, int]]] = []
    for pairs in raw:
        kept: list[tuple[int, int]] = []
        best_dep = None
        for d, a in sorted(pairs, key=lambda p: (p[1], -p[0])):
            if best_dep is None or d > best_dep:
                kept.append((d, a))
                best_dep = d
        out.append(kept)
    return out
