"""Shared fixtures: small hand instances and seeded random corpora."""

from __future__ import annotations

import random

import pytest

from tgwalks.core import INFINITY, TemporalGraph
from tgwalks.costs import (
    FewestEdges,
    LinComb,
    ShortestFastest,
    earliest_arrival_cost,
    latest_departure,
    min_waiting,
)


def bundled_structures():
    """One instance of every bundled cost structure."""
    return [
        FewestEdges(),
        ShortestFastest(),
        min_waiting(),
        latest_departure(),
        earliest_arrival_cost(),
    ]


def canon_costs(cs, g, costs: dict):
    """Edge -> comparable cost value.

    Linear-combination values carry the walk's first departure, which may
    differ between tied optima; the finalized objective is what is unique.
    """
    if isinstance(cs, LinComb):
        return {e: cs.finalize_value(g, e, c) for e, c in costs.items()}
    return dict(costs)


def rand_positive_instance(rng: random.Random) -> TemporalGraph:
    """Random instance, travel 1..5, waiting bounds mixing beta=0 and beta=inf."""
    n = rng.randint(2, 8)
    m = rng.randint(1, 40)
    g = TemporalGraph(n)
    for _ in range(m):
        g.add_edge(
            rng.randrange(n), rng.randrange(n), rng.randint(0, 30), rng.randint(1, 5)
        )
    for v in range(n):
        r = rng.random()
        if r < 0.5:
            continue
        if r < 0.65:
            g.set_bounds(v, rng.randint(1, 4), INFINITY)
        elif r < 0.8:
            g.set_bounds(v, 0, 0)
        elif r < 0.9:
            g.set_bounds(v, 0, rng.randint(1, 6))
        else:
            a = rng.randint(1, 3)
            g.set_bounds(v, a, a + rng.randint(0, 4))
    return g


def rand_zero_instance(rng: random.Random) -> TemporalGraph:
    """Random instance with zero-travel edges bunched onto few time points."""
    n = rng.randint(2, 7)
    m = rng.randint(1, 24)
    g = TemporalGraph(n)
    for _ in range(m):
        u, v = rng.randrange(n), rng.randrange(n)
        if rng.random() < 0.55:
            g.add_edge(u, v, rng.randint(0, 5), 0)
        else:
            g.add_edge(u, v, rng.randint(0, 5), rng.randint(1, 3))
    for v in range(n):
        r = rng.random()
        if r < 0.7:
            continue
        if r < 0.85:
            g.set_bounds(v, rng.randint(1, 2), INFINITY)
        else:
            g.set_bounds(v, 0, rng.randint(0, 4))
    return g


@pytest.fixture
def g1() -> TemporalGraph:
    """Three nodes on a line plus a late shortcut, unrestricted waiting."""
    return TemporalGraph(3, [(0, 1, 1, 1), (1, 2, 3, 1), (0, 2, 5, 1)])


@pytest.fixture
def g1_no_wait(g1) -> TemporalGraph:
    # same edges, but node 1 forbids waiting entirely
    g1.set_bounds(1, 0, 0)
    return g1


@pytest.fixture
def g2() -> TemporalGraph:
    """A two-node zero-cycle fed by one positive seed edge."""
    return TemporalGraph(3, [(0, 1, 4, 1), (1, 2, 5, 0), (2, 1, 5, 0)])


@pytest.fixture
def g3() -> TemporalGraph:
    """Zero-travel chain: both hops happen at the same instant."""
    return TemporalGraph(4, [(0, 1, 0, 1), (1, 2, 1, 0), (2, 3, 1, 0)])
