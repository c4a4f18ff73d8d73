"""Cost structures for walk optimization.

A cost structure is a totally ordered set of cost values together with a
per-edge seed cost ``gamma`` and an extension operator ``combine``: a walk
``e1, ..., ek`` costs ``gamma(e1) + gamma(e2) + ...`` folded left-to-right
with ``combine``.  The scan solvers require right-isotonicity (extending two
comparable costs by the same edge preserves their order); the zero-cycle
solver additionally requires that zero-travel edges through zero-``alpha``
nodes never decrease a cost ("absorption").  Both properties have randomized
checkers below.

Values are plain Python objects (ints or tuples); the absent cost is ``None``
and lives outside the ordered set.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .core import TemporalGraph, TemporalGraphError

#: Linear-combination coefficients and per-edge costs are capped so that
#: objective evaluations stay far from the 2^63 overflow line.
COEFF_LIMIT = 1 << 20

CostValue = Any


class CostViolation(TemporalGraphError):
    """A cost structure fails a property required by the requested solver."""


class CostStructure:
    """Interface shared by all cost structures.

    Subclasses must provide constant-time ``gamma``, ``combine`` and
    ``less_eq``; ``less`` is the derived strict order.
    """

    name = "abstract"

    def gamma(self, g: TemporalGraph, e: int) -> CostValue:
        raise NotImplementedError

    def combine(self, a: CostValue, b: CostValue) -> CostValue:
        raise NotImplementedError

    def less_eq(self, a: CostValue, b: CostValue) -> bool:
        raise NotImplementedError

    def less(self, a: CostValue, b: CostValue) -> bool:
        return self.less_eq(a, b) and not self.less_eq(b, a)

    def is_nonnegative(self, c: CostValue) -> bool:
        """Whether appending a ``c``-weighted edge can never improve a cost.

        Formally: x ⪯ x ⊕ c for every value x.  The zero-cycle solver needs
        this per cycle edge.  The default probes x = c, which is exact for
        every bundled structure (their ⊕ only adds the accumulator field);
        structures where the left operand shifts the comparison should
        override.
        """
        return self.less_eq(c, self.combine(c, c))

    def gamma_all(self, g: TemporalGraph) -> list:
        return [self.gamma(g, e) for e in range(g.m)]

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


class FewestEdges(CostStructure):
    """Walk cost is its number of edges."""

    name = "fewest"

    def gamma(self, g: TemporalGraph, e: int) -> int:
        return 1

    def gamma_all(self, g: TemporalGraph) -> list:
        return [1] * g.m

    @staticmethod
    def combine(a: int, b: int) -> int:
        return a + b

    @staticmethod
    def less_eq(a: int, b: int) -> bool:
        return a <= b

    @staticmethod
    def less(a: int, b: int) -> bool:
        return a < b


class ShortestFastest(CostStructure):
    """Prefer walks that leave later, then ones with fewer edges.

    A value ``(start, k)`` records the departure time of the walk's first
    edge and its edge count.  Combined with the arrival time of the last
    edge this yields shortest-duration walks with an edge-count tie-break;
    see :func:`tgwalks.mincost.solve_shortest_fastest`.
    """

    name = "shortest-fastest"

    def gamma(self, g: TemporalGraph, e: int) -> tuple[int, int]:
        return (g.deps[e], 1)

    @staticmethod
    def combine(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
        return (a[0], a[1] + b[1])

    @staticmethod
    def less_eq(a: tuple[int, int], b: tuple[int, int]) -> bool:
        return a[0] > b[0] or (a[0] == b[0] and a[1] <= b[1])

    @staticmethod
    def less(a: tuple[int, int], b: tuple[int, int]) -> bool:
        return a[0] > b[0] or (a[0] == b[0] and a[1] < b[1])


def _check_coeff(value: int, what: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise TemporalGraphError(f"{what} must be an integer, got {value!r}")
    if abs(value) > COEFF_LIMIT:
        raise TemporalGraphError(f"{what} {value} exceeds the 2^20 magnitude limit")
    return value


class LinComb(CostStructure):
    """Linear combination of the classic walk quantities.

    The objective of a walk ``Q`` is::

        arrival   * arr(Q)   - departure * dep(Q)
      + duration  * (arr(Q) - dep(Q))
      + travel    * total_travel(Q)  + edge_cost * sum of c(e)
      + hops      * len(Q)           + waiting   * total_waiting(Q)

    where ``c(e)`` is an optional per-edge cost (zero when absent).  A cost
    value is a pair ``(start, acc)`` carrying the walk's first departure and
    the accumulated per-edge contributions; the objective is recovered by
    :func:`lincomb_finalize`.  Coefficients and per-edge costs are capped at
    2^20 in magnitude.
    """

    name = "lincomb"

    def __init__(
        self,
        arrival: int = 0,
        departure: int = 0,
        duration: int = 0,
        travel: int = 0,
        edge_cost: int = 0,
        hops: int = 0,
        waiting: int = 0,
        edge_costs: Sequence[int] | None = None,
    ):
        for what, value in (
            ("arrival", arrival), ("departure", departure), ("duration", duration),
            ("travel", travel), ("edge_cost", edge_cost), ("hops", hops),
            ("waiting", waiting),
        ):
            _check_coeff(value, f"{what} coefficient")
        self.arrival = arrival
        self.departure = departure
        self.duration = duration
        self.travel = travel
        self.edge_cost = edge_cost
        self.hops = hops
        self.waiting = waiting
        if edge_costs is not None:
            edge_costs = tuple(edge_costs)
            for i, c in enumerate(edge_costs):
                _check_coeff(c, f"cost of edge {i}")
        self.edge_costs = edge_costs
        # Weight on the walk's arrival resp. departure in the objective.
        self._head_w = arrival + duration + waiting
        self._tail_w = departure + duration + waiting

    def delta(self, g: TemporalGraph, e: int) -> int:
        """Contribution of a single edge to the accumulator."""
        d = (self.travel - self.waiting) * g.travels[e] + self.hops
        if self.edge_costs is not None:
            d += self.edge_cost * self.edge_costs[e]
        return d

    def gamma(self, g: TemporalGraph, e: int) -> tuple[int, int]:
        return (g.deps[e], self.delta(g, e))

    @staticmethod
    def combine(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
        return (a[0], a[1] + b[1])

    def less_eq(self, a: tuple[int, int], b: tuple[int, int]) -> bool:
        w = self._tail_w
        return a[1] - w * a[0] <= b[1] - w * b[0]

    def less(self, a: tuple[int, int], b: tuple[int, int]) -> bool:
        w = self._tail_w
        return a[1] - w * a[0] < b[1] - w * b[0]

    def finalize_value(self, g: TemporalGraph, e: int, c: tuple[int, int]) -> int:
        """Objective of the best walk ending with edge ``e`` at cost ``c``."""
        return self._head_w * (g.deps[e] + g.travels[e]) - self._tail_w * c[0] + c[1]

    def __repr__(self) -> str:
        coeffs = ", ".join(
            f"{k}={getattr(self, k)}"
            for k in ("arrival", "departure", "duration", "travel",
                      "edge_cost", "hops", "waiting")
            if getattr(self, k)
        )
        return f"LinComb({coeffs})"


def min_waiting() -> LinComb:
    """Objective: total time spent waiting at intermediate nodes."""
    return LinComb(waiting=1)


def latest_departure() -> LinComb:
    """Objective: leave the source as late as possible (minimize ``-dep``)."""
    return LinComb(departure=1)


def earliest_arrival_cost() -> LinComb:
    """Objective: arrive as early as possible."""
    return LinComb(arrival=1)


def lincomb_finalize(
    cs: LinComb, g: TemporalGraph, entries: Iterable[tuple[int, tuple[int, int]]]
) -> tuple[int, int] | None:
    """Minimum objective over ``(edge, cost)`` entries, with a witness edge.

    Returns ``(value, edge)`` or ``None`` when no entry exists.  Ties keep
    the first entry.
    """
    best = None
    best_e = -1
    for e, c in entries:
        value = cs.finalize_value(g, e, c)
        if best is None or value < best:
            best = value
            best_e = e
    if best is None:
        return None
    return best, best_e


def check_isotonicity(cs: CostStructure, triples: Iterable[tuple]) -> bool:
    """Randomized right-isotonicity check over sampled ``(a, b, c)`` triples.

    For every triple with ``a`` at most ``b`` it must hold that extending
    both by ``c`` preserves the order.  Also spot-checks totality of the
    order on each pair.
    """
    for a, b, c in triples:
        if not (cs.less_eq(a, b) or cs.less_eq(b, a)):
            return False
        if cs.less_eq(a, b) and not cs.less_eq(cs.combine(a, c), cs.combine(b, c)):
            return False
        if cs.less_eq(b, a) and not cs.less_eq(cs.combine(b, c), cs.combine(a, c)):
            return False
    return True


def sample_costs(
    cs: CostStructure, g: TemporalGraph, rng: random.Random, count: int = 64
) -> list:
    """Sample plausible cost values: edge seeds and random combinations."""
    if g.m == 0:
        return []
    seeds = [cs.gamma(g, e) for e in range(g.m)]
    samples = list(seeds)
    while len(samples) < count:
        a = rng.choice(samples)
        b = rng.choice(seeds)
        samples.append(cs.combine(a, b))
    return samples[:count]


def check_absorption(
    cs: CostStructure, g: TemporalGraph, samples: Sequence | None = None
) -> bool:
    """Check that zero-travel edges through zero-``alpha`` nodes absorb.

    For each such edge ``e`` and each sampled cost ``c`` it must hold that
    ``c`` is at most ``c`` extended by ``gamma(e)``.  This is the property
    that makes minimum costs attainable in the presence of zero-cycles.
    Vacuously true when no such edge exists.
    """
    critical = [
        e for e in range(g.m)
        if g.travels[e] == 0 and g.alpha[g.tails[e]] == 0 and g.alpha[g.heads[e]] == 0
    ]
    if not critical:
        return True
    if samples is None:
        samples = sample_costs(cs, g, random.Random(0x5eed))
    for e in critical:
        ge = cs.gamma(g, e)
        for c in samples:
            if not cs.less_eq(c, cs.combine(c, ge)):
                return False
    return True


def structure_by_name(name: str, **kwargs) -> CostStructure:
    """Look up a bundled cost structure by its CLI name."""
    if name == "fewest":
        return FewestEdges()
    if name == "shortest-fastest":
        return ShortestFastest()
    if name == "min-waiting":
        return min_waiting()
    if name == "latest-departure":
        return latest_departure()
    if name == "earliest-arrival":
        return earliest_arrival_cost()
    if name == "lincomb":
        return LinComb(**kwargs)
    raise TemporalGraphError(f"unknown cost structure {name!r}")
