"""Linear-time single-source optimal walks in temporal graphs.

Edges are timed connections (tail, head, departure, travel) and nodes carry
waiting-time bounds.  Given a doubly-sorted representation of the edge set,
one scan of the arrival order computes, for every reachable edge, the
minimum cost of a source walk ending with it, for any isotone cost
structure; graphs with simultaneous zero-travel cycles are handled by an
extended scan that repairs the order on the fly.  Profiles, bounded-start
earliest arrivals and the classic single-criterion objectives are derived
from the same scan.
"""

from .core import (
    INFINITY,
    TIME_LIMIT,
    NotZeroAcyclic,
    RepresentationError,
    TemporalEdge,
    TemporalGraph,
    TemporalGraphError,
    UNRESTRICTED,
    WaitingBounds,
    WalkMetrics,
    extends,
    half_extends,
    validate_walk,
    walk_metrics,
)
from .costs import (
    CostStructure,
    CostViolation,
    FewestEdges,
    LinComb,
    ShortestFastest,
    check_absorption,
    check_isotonicity,
    earliest_arrival_cost,
    latest_departure,
    lincomb_finalize,
    min_waiting,
    structure_by_name,
)
from .representation import (
    DoublySortedRep,
    SpaceTimeGraph,
    build_fully_sorted,
    build_sorted_rep,
    check_doubly_sorted,
    from_space_time,
    is_zero_acyclic,
    to_space_time,
)
from .reachability import (
    ReachabilityResult,
    earliest_arrival,
    reachable_edges,
    reconstruct_reach_walk,
)
from .mincost import (
    CostScan,
    MinCostResult,
    NodeBest,
    ScanStats,
    lincomb_minima,
    min_cost_walks,
    node_minima,
    reconstruct_min_walk,
    shortest_fastest_minima,
    solve_fewest_edges,
    solve_min_waiting,
    solve_profile,
    solve_profile_bounded_source,
    solve_shortest_fastest,
)
from .zerocycle import (
    ArrivalBlock,
    MinCostForest,
    ZeroBlockDigraph,
    algebraic_dijkstra,
    min_cost_walks_zero,
    partition_blocks,
    reorder_zero_block,
)
from .oracle import (
    OracleResult,
    oracle_edge_costs,
    oracle_min_costs,
    oracle_node_values,
    oracle_profile,
    oracle_profiles,
    oracle_reachable_edges,
)

__version__ = "1.0.0"

__all__ = [
    "INFINITY",
    "TIME_LIMIT",
    "UNRESTRICTED",
    "ArrivalBlock",
    "CostScan",
    "CostStructure",
    "CostViolation",
    "DoublySortedRep",
    "FewestEdges",
    "LinComb",
    "MinCostForest",
    "MinCostResult",
    "NodeBest",
    "NotZeroAcyclic",
    "OracleResult",
    "ReachabilityResult",
    "RepresentationError",
    "ScanStats",
    "ShortestFastest",
    "SpaceTimeGraph",
    "TemporalEdge",
    "TemporalGraph",
    "TemporalGraphError",
    "WaitingBounds",
    "WalkMetrics",
    "ZeroBlockDigraph",
    "algebraic_dijkstra",
    "build_fully_sorted",
    "build_sorted_rep",
    "check_absorption",
    "check_doubly_sorted",
    "check_isotonicity",
    "earliest_arrival",
    "earliest_arrival_cost",
    "extends",
    "from_space_time",
    "half_extends",
    "is_zero_acyclic",
    "latest_departure",
    "lincomb_finalize",
    "lincomb_minima",
    "min_cost_walks",
    "min_cost_walks_zero",
    "min_waiting",
    "node_minima",
    "oracle_edge_costs",
    "oracle_min_costs",
    "oracle_node_values",
    "oracle_profile",
    "oracle_profiles",
    "oracle_reachable_edges",
    "partition_blocks",
    "reachable_edges",
    "reconstruct_min_walk",
    "reconstruct_reach_walk",
    "reorder_zero_block",
    "shortest_fastest_minima",
    "solve_fewest_edges",
    "solve_min_waiting",
    "solve_profile",
    "solve_profile_bounded_source",
    "solve_shortest_fastest",
    "structure_by_name",
    "to_space_time",
    "validate_walk",
    "walk_metrics",
]
