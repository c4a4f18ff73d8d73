"""Seeded instance generators.

Two adversarial two-layer families force any comparison-based scan to sort
one side of the bipartition (permuted travel times in one, permuted fan-out
departures in the other), plus two random families sized for benchmarks:
positive travel throughout, and a zero-travel-heavy mix with few distinct
departure times so simultaneous blocks get large.
"""

from __future__ import annotations

import random

from tgwalks.core import INFINITY, TemporalGraph

__all__ = [
    "canonical_times",
    "lb_arr",
    "lb_dep",
    "make_family",
    "random_positive",
    "zero_heavy",
]


def canonical_times(n: int) -> tuple[list[int], list[int]]:
    """Interleaved hub times: arrivals at odd 2i-1, fan-out at even 2i."""
    tau = [2 * i - 1 for i in range(1, n + 1)]
    t = [2 * i for i in range(1, n + 1)]
    return tau, t


def _perm(n: int, perm: list[int] | None, seed: int) -> list[int]:
    if perm is not None:
        if sorted(perm) != list(range(1, n + 1)):
            raise ValueError(f"perm must be a permutation of 1..{n}")
        return perm
    out = list(range(1, n + 1))
    random.Random(seed).shuffle(out)
    return out


def lb_dep(n: int, *, perm: list[int] | None = None, seed: int = 0) -> TemporalGraph:
    """Hub instance whose source edges carry a hidden travel permutation.

    Node 0 feeds hub 1 with n edges departing at -1..-n whose travels are
    chosen so edge i arrives at the hub at time tau_perm(i); n fan-out
    edges leave the hub at time t_j toward sink j+1.  Every sink j is
    reached with minimum total waiting t_j - tau_j.
    """
    pi = _perm(n, perm, seed)
    tau, t = canonical_times(n)
    g = TemporalGraph(n + 2)
    for i in range(1, n + 1):
        g.add_edge(0, 1, -i, tau[pi[i - 1] - 1] + i)
    for j in range(1, n + 1):
        g.add_edge(1, j + 1, t[j - 1], t[n - 1] + j - t[j - 1])
    return g


def lb_arr(n: int, *, perm: list[int] | None = None, seed: int = 0) -> TemporalGraph:
    """Hub instance whose fan-out departures carry a hidden permutation.

    Mirror family of :func:`lb_dep`: source edges arrive at the hub in
    canonical order, but fan-out edge j departs at t_perm(j), so the scan
    must recover the permutation on the departure side instead.
    """
    pp = _perm(n, perm, seed)
    tau, t = canonical_times(n)
    g = TemporalGraph(n + 2)
    for i in range(1, n + 1):
        g.add_edge(0, 1, -i, tau[i - 1] + i)
    for j in range(1, n + 1):
        dep = t[pp[j - 1] - 1]
        g.add_edge(1, j + 1, dep, t[n - 1] + j - dep)
    return g


def random_positive(n: int, m: int, seed: int) -> TemporalGraph:
    """Uniform random edges with travel in 1..5 and mixed waiting bounds.

    Bounds cover the delicate cases: mostly unrestricted (a reached node
    stays extendable, keeping instances well connected), some alpha > 0,
    some finite beta including beta = 0, and some two-sided windows.
    """
    rng = random.Random(seed)
    horizon = max(4, 4 * m // max(1, n))
    g = TemporalGraph(n)
    for _ in range(m):
        g.add_edge(
            rng.randrange(n), rng.randrange(n), rng.randrange(horizon), rng.randint(1, 5)
        )
    for v in range(n):
        r = rng.random()
        if r < 0.70:
            continue
        if r < 0.85:
            g.set_bounds(v, rng.randint(1, 3), INFINITY)
        elif r < 0.95:
            g.set_bounds(v, 0, rng.randint(0, 8))
        else:
            alpha = rng.randint(1, 3)
            g.set_bounds(v, alpha, alpha + rng.randint(0, 5))
    return g


def zero_heavy(n: int, m: int, seed: int) -> TemporalGraph:
    """Random mix where half the edges have zero travel.

    Departure times are squeezed into a small range so many zero-travel
    edges share an arrival time, producing large simultaneous blocks (and,
    usually, zero-cycles).  Most nodes keep alpha = 0 so the blocks stay
    traversable in a single instant.
    """
    rng = random.Random(seed)
    horizon = max(4, m // (4 * max(1, n)))
    g = TemporalGraph(n)
    for _ in range(m):
        u, v = rng.randrange(n), rng.randrange(n)
        if rng.random() < 0.5:
            g.add_edge(u, v, rng.randrange(horizon), 0)
        else:
            g.add_edge(u, v, rng.randrange(horizon), rng.randint(1, 3))
    for v in range(n):
        r = rng.random()
        if r < 0.80:
            continue
        if r < 0.90:
            g.set_bounds(v, rng.randint(1, 2), INFINITY)
        else:
            g.set_bounds(v, 0, rng.randint(2, 6))
    return g


def make_family(
    family: str, n: int, seed: int, m: int | None = None
) -> TemporalGraph:
    """Dispatch by family name as used by the command-line tools."""
    if family == "lb-dep":
        return lb_dep(n, seed=seed)
    if family == "lb-arr":
        return lb_arr(n, seed=seed)
    edges = m if m is not None else 8 * n
    if family == "random":
        return random_positive(n, edges, seed)
    if family == "zero-heavy":
        return zero_heavy(n, edges, seed)
    raise ValueError(f"unknown family {family!r}")
