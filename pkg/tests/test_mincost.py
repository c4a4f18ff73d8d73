"""The interval-list cost scan: per-edge minima, node optima, profiles."""

from __future__ import annotations

import random

import pytest

from tgwalks.core import INFINITY, TemporalGraph, TemporalGraphError, validate_walk
from tgwalks.costs import FewestEdges, LinComb, latest_departure, min_waiting
from tgwalks.mincost import (
    CostScan,
    lincomb_minima,
    min_cost_walks,
    node_minima,
    reconstruct_min_walk,
    solve_fewest_edges,
    solve_min_waiting,
    solve_profile,
    solve_profile_bounded_source,
    solve_shortest_fastest,
)
from tgwalks.oracle import (
    oracle_min_costs,
    oracle_node_values,
    oracle_profiles,
    walk_tree,
)
from tgwalks.reachability import reachable_edges
from tgwalks.representation import build_fully_sorted

from conftest import bundled_structures, canon_costs, rand_positive_instance


class TestFrozenSmall:
    def test_g1_fewest(self, g1):
        res = min_cost_walks(build_fully_sorted(g1), FewestEdges(), 0, debug=True)
        assert res.entries == [[], [(0, 1)], [(1, 2), (2, 1)]]
        assert reconstruct_min_walk(res, 1) == [0, 1]
        assert reconstruct_min_walk(res, 2) == [2]
        assert node_minima(res) == [None, (1, 0), (1, 2)]
        bests, _ = solve_fewest_edges(build_fully_sorted(g1), 0)
        assert bests == node_minima(res)

    def test_g1_min_waiting(self, g1):
        res = min_cost_walks(build_fully_sorted(g1), min_waiting(), 0, debug=True)
        assert res.entries[2] == [(1, (1, -2)), (2, (5, -1))]
        bests, _ = solve_min_waiting(build_fully_sorted(g1), 0)
        assert bests[2] == (0, 2)  # the direct edge never waits

    def test_g1_shortest_fastest(self, g1):
        bests, _ = solve_shortest_fastest(build_fully_sorted(g1), 0)
        assert bests[1] == ((1, 1), 0)
        assert bests[2] == ((1, 1), 2)

    def test_single_edge_source_rule(self):
        g = TemporalGraph(2, [(0, 1, 7, 2)])
        res = min_cost_walks(build_fully_sorted(g), FewestEdges(), 0, debug=True)
        assert res.entries[1] == [(0, 1)]
        assert res.parents[0] == 0  # self-parented start edge

    def test_fresh_start_beats_extension(self):
        # edge 2 extends edge 0 but also leaves the source itself
        g = TemporalGraph(2, [(0, 0, 0, 1), (0, 0, 0, 1), (0, 1, 3, 1)])
        res = min_cost_walks(build_fully_sorted(g), FewestEdges(), 0, debug=True)
        assert dict(res.entries[1])[2] == 1
        assert reconstruct_min_walk(res, 2) == [2]

    def test_unreachable_source_half(self, g1):
        res = min_cost_walks(build_fully_sorted(g1), FewestEdges(), 1, debug=True)
        assert res.entries == [[], [], [(1, 1)]]

    def test_beta_zero_forces_the_shortcut(self, g1_no_wait):
        res = min_cost_walks(build_fully_sorted(g1_no_wait), FewestEdges(), 0)
        assert sorted(res.edge_costs()) == [0, 2]

    def test_reconstruct_rejects_unreachable(self, g1):
        res = min_cost_walks(build_fully_sorted(g1), FewestEdges(), 1)
        with pytest.raises(TemporalGraphError):
            reconstruct_min_walk(res, 0)

    def test_bad_source(self, g1):
        with pytest.raises(TemporalGraphError):
            min_cost_walks(build_fully_sorted(g1), FewestEdges(), -1)


class TestScanEquivalence:
    """The packed loop must stay in lockstep with the reference stepper."""

    def test_run_matches_scan_edge(self):
        rng = random.Random(0x5CA9)
        for _ in range(120):
            g = rand_positive_instance(rng)
            rep = build_fully_sorted(g)
            s = rng.randrange(g.n)
            for cs in bundled_structures():
                fast = min_cost_walks(rep, cs, s)
                slow = CostScan(g, cs, s, rep.dep_buckets, rep.bucket_pos)
                for e in rep.e_arr:
                    slow.scan_edge(e)
                assert fast.entries == slow.entries
                assert fast.best_ext == slow.best_ext
                assert fast.parents == slow.parents
                assert fast.stats.interval_creations == slow.stats.interval_creations
                assert fast.stats.cursor_advances == slow.stats.cursor_advances

    def test_counters_stay_linear(self):
        rng = random.Random(0xD1CE)
        for _ in range(60):
            g = rand_positive_instance(rng)
            res = min_cost_walks(build_fully_sorted(g), FewestEdges(), rng.randrange(g.n))
            st = res.stats
            assert st.interval_creations <= g.m
            assert st.cursor_advances <= 2 * g.m
            assert st.finalizations <= g.m
            assert st.interval_removals <= st.interval_creations


class TestAgainstOracle:
    def test_all_structures_positive_instances(self):
        rng = random.Random(0x0A51)
        structures = bundled_structures()
        for _ in range(150):
            g = rand_positive_instance(rng)
            rep = build_fully_sorted(g)
            s = rng.randrange(g.n)
            for cs in structures:
                res = min_cost_walks(rep, cs, s, debug=True)
                want = oracle_min_costs(g, cs, s)
                got = canon_costs(cs, g, res.edge_costs())
                ref = canon_costs(
                    cs, g, {e: c for e, c in enumerate(want.costs) if c is not None}
                )
                assert got == ref

    def test_witness_walks_validate(self):
        rng = random.Random(0x3A3A)
        for _ in range(60):
            g = rand_positive_instance(rng)
            rep = build_fully_sorted(g)
            s = rng.randrange(g.n)
            res = min_cost_walks(rep, FewestEdges(), s)
            for e in res.edge_costs():
                walk = reconstruct_min_walk(res, e)
                assert validate_walk(g, walk, s) and walk[-1] == e

    def test_node_values_match_oracle(self):
        rng = random.Random(0x90DE)
        for _ in range(60):
            g = rand_positive_instance(rng)
            rep = build_fully_sorted(g)
            s = rng.randrange(g.n)
            for cs in (min_waiting(), latest_departure(), LinComb(duration=1, hops=1)):
                res = min_cost_walks(rep, cs, s)
                got = [None if b is None else b.value for b in lincomb_minima(res)]
                assert got == oracle_node_values(cs, g, s)

    def test_reach_sets_agree_with_marking_pass(self):
        rng = random.Random(0xAB1E)
        for _ in range(60):
            g = rand_positive_instance(rng)
            rep = build_fully_sorted(g)
            s = rng.randrange(g.n)
            marked = reachable_edges(rep, s)
            res = min_cost_walks(rep, FewestEdges(), s)
            assert [
                [e for e, _ in ents] for ents in res.entries
            ] == marked.reachable


class TestProfiles:
    def test_g1_profiles(self, g1):
        assert solve_profile(build_fully_sorted(g1), 0) == [
            [],
            [(1, 2)],
            [(1, 4), (5, 6)],
        ]

    def test_beta_zero_profile(self, g1_no_wait):
        assert solve_profile(build_fully_sorted(g1_no_wait), 0)[2] == [(5, 6)]

    def test_profiles_match_oracle(self):
        rng = random.Random(0x9403)
        for _ in range(120):
            g = rand_positive_instance(rng)
            s = rng.randrange(g.n)
            got = solve_profile(build_fully_sorted(g), s)
            assert got == oracle_profiles(g, s)
            for pairs in got:
                assert all(a < b for (a, _), (b, _) in zip(pairs, pairs[1:]))
                assert all(a < b for (_, a), (_, b) in zip(pairs, pairs[1:]))

    def test_bounded_source_segments(self, g1):
        g1.set_bounds(0, 0, 1)
        rep_rev = build_fully_sorted(g1.reverse_time())
        segs = solve_profile_bounded_source(rep_rev, 2)
        assert segs[0] == [(0, 1, 4), (4, 5, 6)]
        assert segs[1] == [(-INFINITY, 3, 4)]
        assert segs[2] == []

    def test_bounded_source_matches_brute_force(self):
        rng = random.Random(0xB00)
        for _ in range(40):
            g = rand_positive_instance(rng)
            x = rng.randrange(g.n)
            rep_rev = build_fully_sorted(g.reverse_time())
            segs = solve_profile_bounded_source(rep_rev, x)
            for v in range(g.n):
                if v == x:
                    continue
                lookup = {}
                for lo, hi, a in segs[v]:
                    lo = -40 if lo == -INFINITY else lo
                    for t in range(max(lo, -40), min(hi, 40) + 1):
                        lookup[t] = a
                want = _starts_brute(g, v, x)
                assert lookup == want, (v, x)


def _starts_brute(g, v, x, lo=-40, hi=40):
    """Earliest arrival at x per integer start time at v, by enumeration."""
    parents, eids = walk_tree(g, v)
    pairs = []  # (first departure, arrival) of walks v -> x
    first = [0] * len(parents)
    for i in range(len(parents)):
        e = eids[i]
        first[i] = g.deps[e] if parents[i] < 0 else first[parents[i]]
        if g.heads[e] == x:
            pairs.append((first[i], g.arr(e)))
    out = {}
    a_v, b_v = g.alpha[v], g.beta[v]
    for t in range(lo, hi + 1):
        best = None
        for d, a in pairs:
            if a_v <= d - t <= b_v and (best is None or a < best):
                best = a
        if best is not None:
            out[t] = best
    return out
