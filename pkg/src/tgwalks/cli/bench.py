"""Timing harness for the scan solvers.

Each size is generated in memory, the representation build and the solve
are timed separately (garbage collection paused around the solve), and the
instrumented work counters are collected so linear-work claims can be
checked against the edge count.  The headline number is the least-squares
slope of log solve time against log edge count.

Solves are timed with CPU time, not wall time: the slope is a statement
about the solver's work, and wall clock on a shared box folds scheduler
noise into exactly the signal being measured.
"""

from __future__ import annotations

import gc
import math
from dataclasses import dataclass
from time import perf_counter, process_time

from tgwalks.costs import CostStructure, FewestEdges
from tgwalks.mincost import min_cost_walks
from tgwalks.reachability import reachable_edges
from tgwalks.representation import build_fully_sorted, build_sorted_rep
from tgwalks.zerocycle import min_cost_walks_zero

from .generate import make_family

__all__ = ["BenchRow", "loglog_slope", "run_bench"]


@dataclass
class BenchRow:
    """One benchmark size: timings in seconds plus work counters."""

    m: int
    build_seconds: float
    solve_seconds: float
    interval_creations: int
    cursor_advances: int
    markings: int


def loglog_slope(xs: list[float], ys: list[float]) -> float:
    """Least-squares slope of log(y) against log(x)."""
    lx = [math.log(x) for x in xs]
    ly = [math.log(max(y, 1e-9)) for y in ys]
    n = len(lx)
    mx = sum(lx) / n
    my = sum(ly) / n
    num = sum((a - mx) * (b - my) for a, b in zip(lx, ly))
    den = sum((a - mx) ** 2 for a in lx)
    return num / den


def run_bench(
    family: str,
    sizes: list[int],
    cs: CostStructure | None = None,
    *,
    seed: int = 0,
    source: int = 0,
    allow_zero_cycles: bool = False,
) -> tuple[list[BenchRow], float]:
    """Time the solver across sizes and return the rows plus the slope.

    ``sizes`` are edge counts; node counts follow as max(2, M // 8).  On
    positive-travel families a reachability pass contributes the marking
    counter; the zero-cycle route has no analogue, so it reports zero.
    """
    if cs is None:
        cs = FewestEdges()
    rows = []
    for m in sizes:
        # Hub families emit 2n edges.  The random families get average degree
        # 64: sparser graphs percolate poorly in time (a walk's remaining
        # horizon roughly halves per hop), leaving the scan nothing to do.
        n = max(1, m // 2) if family.startswith("lb-") else max(2, m // 64)
        g = make_family(family, n, seed, m)

        mt = g.min_travel()
        t0 = perf_counter()
        if allow_zero_cycles or (mt is not None and mt <= 0):
            rep = build_sorted_rep(g)
            zero_route = True
        else:
            rep = build_fully_sorted(g)
            zero_route = False
        build = perf_counter() - t0

        gc.disable()
        try:
            t0 = process_time()
            if zero_route:
                res = min_cost_walks_zero(rep, cs, source)
            else:
                res = min_cost_walks(rep, cs, source)
            solve = process_time() - t0
        finally:
            gc.enable()

        markings = 0
        if not zero_route:
            markings = reachable_edges(rep, source).markings
        rows.append(
            BenchRow(
                m=g.m,
                build_seconds=build,
                solve_seconds=solve,
                interval_creations=res.stats.interval_creations,
                cursor_advances=res.stats.cursor_advances,
                markings=markings,
            )
        )
    slope = (
        loglog_slope([r.m for r in rows], [r.solve_seconds for r in rows])
        if len(rows) >= 2
        else float("nan")
    )
    return rows, slope
