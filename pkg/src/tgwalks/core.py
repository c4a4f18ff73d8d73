"""Temporal graphs, waiting bounds, and walk primitives.

A temporal edge ``(tail, head, dep, travel)`` leaves ``tail`` at time ``dep``
and reaches ``head`` at ``dep + travel``.  Each node carries a waiting window
``[alpha, beta]``: a walk that arrives at node ``v`` at time ``a`` may only
continue with an edge departing in ``[a + alpha, a + beta]``.  Travel times are
non-negative; zero-travel edges are allowed and give rise to the zero-cycle
machinery in :mod:`tgwalks.representation` and :mod:`tgwalks.zerocycle`.
"""

from __future__ import annotations

from array import array
from typing import Iterable, Iterator, MutableSequence, NamedTuple, Sequence

#: Timestamps are kept well inside the signed 64-bit range so that window
#: arithmetic such as ``arr(e) + beta`` cannot overflow in a fixed-width port.
TIME_LIMIT = 1 << 61

#: Sentinel for an unbounded maximum waiting time.
INFINITY = float("inf")


class TemporalGraphError(ValueError):
    """Malformed graph, walk, or representation input."""


class RepresentationError(TemporalGraphError):
    """A representation violates the precondition of the requested operation."""


class NotZeroAcyclic(RepresentationError):
    """The graph contains a cycle of simultaneous zero-travel edges.

    Such a cycle makes every edge-order construction stall; ``node`` and
    ``time`` identify one node copy on a blocking cycle.
    """

    def __init__(self, node: int, time: int):
        self.node = node
        self.time = time
        super().__init__(
            f"zero-cycle through node {node} at time {time}: "
            "no extension-respecting edge order exists"
        )


class WaitingBounds(NamedTuple):
    """Per-node waiting window; ``beta`` may be :data:`INFINITY`."""

    alpha: int
    beta: int | float


UNRESTRICTED = WaitingBounds(0, INFINITY)


class TemporalEdge(NamedTuple):
    tail: int
    head: int
    dep: int
    travel: int

    @property
    def arr(self) -> int:
        return self.dep + self.travel


def _check_time(value: int, what: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise TemporalGraphError(f"{what} must be an integer, got {value!r}")
    if not -TIME_LIMIT <= value <= TIME_LIMIT:
        raise TemporalGraphError(f"{what} {value} exceeds the 2^61 magnitude limit")
    return value


class TemporalGraph:
    """Edge-indexed temporal graph.

    Edges are stored as parallel arrays and identified by their index; all
    solvers refer to edges by id.  Waiting bounds default to unrestricted.
    """

    __slots__ = ("n", "tails", "heads", "deps", "travels", "alpha", "beta")

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int, int, int]] = (),
        bounds: Sequence[tuple[int, int | float]] | None = None,
    ):
        if n < 0:
            raise TemporalGraphError(f"node count must be non-negative, got {n}")
        self.n = n
        # Packed int64 columns: edge ids index all four in parallel.  Keeps
        # the hot scan loops off the pointer-chasing list-of-objects layout.
        self.tails: MutableSequence[int] = array("q")
        self.heads: MutableSequence[int] = array("q")
        self.deps: MutableSequence[int] = array("q")
        self.travels: MutableSequence[int] = array("q")
        for edge in edges:
            self.add_edge(*edge)
        if bounds is None:
            self.alpha: MutableSequence[int] = array("q", bytes(8 * n))
            self.beta: list[int | float] = [INFINITY] * n
        else:
            bounds = list(bounds)
            if len(bounds) != n:
                raise TemporalGraphError(
                    f"expected {n} waiting bounds, got {len(bounds)}"
                )
            self.alpha = array("q")
            self.beta = []
            for v, (alpha, beta) in enumerate(bounds):
                _check_time(alpha, f"alpha of node {v}")
                if alpha < 0:
                    raise TemporalGraphError(f"alpha of node {v} is negative")
                if beta != INFINITY:
                    _check_time(beta, f"beta of node {v}")
                if beta < alpha:
                    raise TemporalGraphError(
                        f"waiting window of node {v} is empty (beta < alpha)"
                    )
                self.alpha.append(alpha)
                self.beta.append(beta)

    @property
    def m(self) -> int:
        return len(self.tails)

    def add_edge(self, tail: int, head: int, dep: int, travel: int) -> int:
        if not 0 <= tail < self.n or not 0 <= head < self.n:
            raise TemporalGraphError(
                f"edge endpoints ({tail}, {head}) out of range for n={self.n}"
            )
        _check_time(dep, "departure time")
        _check_time(travel, "travel time")
        if travel < 0:
            raise TemporalGraphError(f"travel time {travel} is negative")
        _check_time(dep + travel, "arrival time")
        self.tails.append(tail)
        self.heads.append(head)
        self.deps.append(dep)
        self.travels.append(travel)
        return self.m - 1

    def arr(self, e: int) -> int:
        return self.deps[e] + self.travels[e]

    def edge(self, e: int) -> TemporalEdge:
        return TemporalEdge(self.tails[e], self.heads[e], self.deps[e], self.travels[e])

    def edges(self) -> Iterator[TemporalEdge]:
        for e in range(self.m):
            yield self.edge(e)

    def bounds(self, v: int) -> WaitingBounds:
        return WaitingBounds(self.alpha[v], self.beta[v])

    def set_bounds(self, v: int, alpha: int, beta: int | float) -> None:
        _check_time(alpha, f"alpha of node {v}")
        if alpha < 0:
            raise TemporalGraphError(f"alpha of node {v} is negative")
        if beta != INFINITY:
            _check_time(beta, f"beta of node {v}")
        if beta < alpha:
            raise TemporalGraphError(f"waiting window of node {v} is empty")
        self.alpha[v] = alpha
        self.beta[v] = beta

    def min_travel(self) -> int | None:
        return min(self.travels) if self.travels else None

    def reverse_time(self) -> "TemporalGraph":
        """Mirror the graph in time.

        Edge ``(u, v, dep, travel)`` becomes ``(v, u, -(dep + travel), travel)``,
        so walks map to reversed walks with identical waiting gaps; waiting
        bounds carry over unchanged.
        """
        rev = TemporalGraph(self.n, bounds=list(zip(self.alpha, self.beta)))
        for e in range(self.m):
            rev.add_edge(
                self.heads[e], self.tails[e],
                -(self.deps[e] + self.travels[e]), self.travels[e],
            )
        return rev

    def __repr__(self) -> str:
        return f"TemporalGraph(n={self.n}, m={self.m})"


def extends(g: TemporalGraph, e: int, f: int) -> bool:
    """True when edge ``f`` can directly follow edge ``e`` in a walk."""
    v = g.heads[e]
    if g.tails[f] != v:
        return False
    gap = g.deps[f] - (g.deps[e] + g.travels[e])
    return g.alpha[v] <= gap <= g.beta[v]


def half_extends(g: TemporalGraph, e: int, f: int) -> bool:
    """Like :func:`extends` but ignoring the upper waiting bound."""
    v = g.heads[e]
    return g.tails[f] == v and g.deps[f] - (g.deps[e] + g.travels[e]) >= g.alpha[v]


def validate_walk(g: TemporalGraph, walk: Sequence[int], source: int | None = None) -> bool:
    """Check that ``walk`` is a sequence of edge ids forming a valid walk."""
    if not walk:
        return False
    for e in walk:
        if not 0 <= e < g.m:
            raise TemporalGraphError(f"edge id {e} out of range")
    if source is not None and g.tails[walk[0]] != source:
        return False
    return all(extends(g, e, f) for e, f in zip(walk, walk[1:]))


class WalkMetrics(NamedTuple):
    departure: int
    arrival: int
    duration: int
    edges: int
    travel: int
    waiting: int


def walk_metrics(g: TemporalGraph, walk: Sequence[int]) -> WalkMetrics:
    """Summary quantities of a walk; raises on an invalid edge sequence."""
    if not validate_walk(g, walk):
        raise TemporalGraphError(f"not a valid walk: {list(walk)}")
    dep = g.deps[walk[0]]
    arr = g.arr(walk[-1])
    travel = sum(g.travels[e] for e in walk)
    duration = arr - dep
    return WalkMetrics(
        departure=dep,
        arrival=arr,
        duration=duration,
        edges=len(walk),
        travel=travel,
        waiting=duration - travel,
    )
