"""Cost structure algebra: orders, isotonicity, absorption."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tgwalks.core import TemporalGraph, TemporalGraphError
from tgwalks.costs import (
    COEFF_LIMIT,
    FewestEdges,
    LinComb,
    ShortestFastest,
    check_absorption,
    check_isotonicity,
    earliest_arrival_cost,
    latest_departure,
    lincomb_finalize,
    min_waiting,
    sample_costs,
    structure_by_name,
)

from conftest import bundled_structures, rand_zero_instance


def test_fewest_edges_algebra(g1):
    cs = FewestEdges()
    assert cs.gamma_all(g1) == [1, 1, 1]
    assert cs.combine(2, 1) == 3
    assert cs.less(1, 2) and not cs.less(2, 2)
    assert cs.is_nonnegative(1)


def test_shortest_fastest_prefers_late_starts(g1):
    cs = ShortestFastest()
    assert cs.gamma(g1, 2) == (5, 1)
    assert cs.combine((1, 1), (3, 1)) == (1, 2)
    # later start wins, edge count only breaks ties
    assert cs.less((5, 9), (1, 1))
    assert cs.less((5, 1), (5, 2))
    assert not cs.less((5, 1), (5, 1))


def test_min_waiting_values(g1):
    cs = min_waiting()
    # value = (first departure, -sum of travels); objective adds the arrival
    assert cs.gamma(g1, 0) == (1, -1)
    c = cs.combine(cs.gamma(g1, 0), cs.gamma(g1, 1))
    assert c == (1, -2)
    assert cs.finalize_value(g1, 1, c) == 1  # waited 3 - 2 at node 1


def test_latest_departure_objective(g1):
    cs = latest_departure()
    c01 = cs.combine(cs.gamma(g1, 0), cs.gamma(g1, 1))
    assert cs.finalize_value(g1, 1, c01) == -1
    assert cs.finalize_value(g1, 2, cs.gamma(g1, 2)) == -5
    assert cs.less(cs.gamma(g1, 2), c01)


def test_earliest_arrival_objective(g1):
    cs = earliest_arrival_cost()
    c01 = cs.combine(cs.gamma(g1, 0), cs.gamma(g1, 1))
    assert cs.finalize_value(g1, 1, c01) == 4
    assert cs.finalize_value(g1, 2, cs.gamma(g1, 2)) == 6


def test_lincomb_general_objective():
    g = TemporalGraph(3, [(0, 1, 2, 3), (1, 2, 7, 1)])
    cs = LinComb(duration=2, hops=1, edge_cost=1, edge_costs=[4, 9])
    c = cs.combine(cs.gamma(g, 0), cs.gamma(g, 1))
    # duration 6, hops 2, edge costs 13
    assert cs.finalize_value(g, 1, c) == 2 * 6 + 2 + 13


def test_lincomb_rejects_bad_coefficients():
    with pytest.raises(TemporalGraphError):
        LinComb(arrival=COEFF_LIMIT + 1)
    with pytest.raises(TemporalGraphError):
        LinComb(hops=1.5)
    with pytest.raises(TemporalGraphError):
        LinComb(edge_cost=1, edge_costs=[0, COEFF_LIMIT + 1])


def test_lincomb_finalize_ties_keep_first(g1):
    cs = LinComb(hops=1)
    picked = lincomb_finalize(cs, g1, [(2, (5, 1)), (0, (1, 1))])
    assert picked == (1, 2)
    assert lincomb_finalize(cs, g1, []) is None


def test_structure_by_name_round_trip():
    for name in (
        "fewest",
        "shortest-fastest",
        "min-waiting",
        "latest-departure",
        "earliest-arrival",
    ):
        assert structure_by_name(name).name in (name, "lincomb")
    cs = structure_by_name("lincomb", hops=2)
    assert isinstance(cs, LinComb) and cs.hops == 2
    with pytest.raises(TemporalGraphError):
        structure_by_name("cheapest")


class TestIsotonicity:
    def test_bundled_structures_pass(self):
        rng = random.Random(0xA11CE)
        g = TemporalGraph(4)
        for _ in range(12):
            g.add_edge(
                rng.randrange(4), rng.randrange(4), rng.randint(-6, 9), rng.randint(0, 4)
            )
        for cs in bundled_structures():
            samples = sample_costs(cs, g, rng, count=48)
            triples = [
                (rng.choice(samples), rng.choice(samples), rng.choice(samples))
                for _ in range(2000)
            ]
            assert check_isotonicity(cs, triples), cs.name

    @settings(max_examples=200, deadline=None)
    @given(
        a=st.tuples(st.integers(-50, 50), st.integers(-50, 50)),
        b=st.tuples(st.integers(-50, 50), st.integers(-50, 50)),
        c=st.tuples(st.integers(-50, 50), st.integers(-50, 50)),
        coeffs=st.tuples(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5)),
    )
    def test_lincomb_is_isotone_for_any_coefficients(self, a, b, c, coeffs):
        dur, hops, wait = coeffs
        cs = LinComb(duration=dur, hops=hops, waiting=wait)
        assert check_isotonicity(cs, [(a, b, c)])


class TestAbsorption:
    def test_planted_negative_hops_flagged(self):
        g = TemporalGraph(2, [(0, 1, 5, 0), (1, 0, 5, 0)])
        assert not check_absorption(LinComb(hops=-1), g)
        for cs in bundled_structures():
            assert check_absorption(cs, g), cs.name

    def test_vacuous_without_critical_edges(self, g1):
        # positive travel everywhere: nothing to absorb
        assert check_absorption(LinComb(hops=-1), g1)

    def test_alpha_shields_zero_edges(self):
        g = TemporalGraph(2, [(0, 1, 5, 0), (1, 0, 5, 0)])
        g.set_bounds(0, 1, 2)
        g.set_bounds(1, 1, 2)
        assert check_absorption(LinComb(hops=-1), g)

    def test_randomized_zero_instances(self):
        rng = random.Random(7)
        for _ in range(30):
            g = rand_zero_instance(rng)
            for cs in bundled_structures():
                assert check_absorption(cs, g), cs.name
