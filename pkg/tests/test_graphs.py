from __future__ import annotations

import math

import numpy as np
import pytest

from penner.errors import InvalidInput, InvalidParameter
from penner.graphs import (
    IntersectionGraph,
    adjacency_spectral_radius,
    cycle_graph,
    enriched_cycle_graph,
    genus_lower_bound,
    is_bipartite,
    path_graph,
    shortest_induced_odd_cycle,
    tree_lower_bound,
)


def test_cycle_graph_structure():
    g = cycle_graph(3)
    assert len(g.edges()) == 3
    g4 = cycle_graph(4)
    assert all(sum(row) == 2 for row in g4.omega)
    g5 = cycle_graph(5)
    assert g5.omega[4][0] == 1 and g5.omega[0][2] == 0


def test_cycle_graph_rejects_short():
    with pytest.raises(InvalidParameter):
        cycle_graph(2)
    with pytest.raises(InvalidParameter):
        enriched_cycle_graph(2)


def test_enriched_cycle_graph():
    g = enriched_cycle_graph(3)
    assert g.n == 4
    assert sorted((g.degree(v) for v in range(4)), reverse=True) == [3, 2, 2, 1]
    g7 = enriched_cycle_graph(7)
    assert g7.n == 8 and len(g7.edges()) == 8
    assert g7.neighbors(7) == [0]


def test_graph_validation():
    with pytest.raises(InvalidInput):
        IntersectionGraph(2, ((0, 1), (2, 0)))
    with pytest.raises(InvalidInput):
        IntersectionGraph(2, ((1, 0), (0, 0)))
    with pytest.raises(InvalidInput):
        IntersectionGraph.from_edges(3, [(0, 0)])


def test_json_round_trip():
    g = IntersectionGraph.from_edges(4, [(0, 1, 2), (1, 2), (2, 3)])
    assert IntersectionGraph.from_json(g.to_json()) == g


@pytest.mark.parametrize("l", range(3, 41))
def test_bipartite_cycles(l):
    assert is_bipartite(cycle_graph(l)) == (l % 2 == 0)


def test_bipartite_examples():
    assert is_bipartite(cycle_graph(4))
    assert not is_bipartite(cycle_graph(5))
    assert not is_bipartite(enriched_cycle_graph(5))


def test_shortest_induced_odd_cycle():
    assert shortest_induced_odd_cycle(cycle_graph(7)) == 7
    assert shortest_induced_odd_cycle(enriched_cycle_graph(9)) == 9
    assert shortest_induced_odd_cycle(cycle_graph(4)) is None


def test_induced_cycle_skips_double_edges():
    # triangle 0-1-2 with a double edge {0, 1}; the 5-cycle 0-3-4-5-1... is not induced either,
    # so the only induced odd cycle is the pentagon 2-6-7-8-9 attached at 2
    edges = [(0, 1, 2), (1, 2), (2, 0), (2, 6), (6, 7), (7, 8), (8, 9), (9, 2)]
    g = IntersectionGraph.from_edges(10, edges)
    assert shortest_induced_odd_cycle(g) == 5


@pytest.mark.parametrize("l", range(3, 40, 2))
def test_genus_bound_odd_cycles(l):
    assert genus_lower_bound(cycle_graph(l)) == l + 1


def test_genus_bound_examples():
    assert genus_lower_bound(cycle_graph(5)) == 6
    assert genus_lower_bound(enriched_cycle_graph(5)) == 6
    assert genus_lower_bound(cycle_graph(6)) is None


def test_adjacency_spectral_radius():
    assert adjacency_spectral_radius(path_graph(2)) == pytest.approx(1.0, abs=1e-10)
    tree = IntersectionGraph.from_edges(3, [(0, 1, 2), (1, 2, 1)])
    assert adjacency_spectral_radius(tree) == pytest.approx(math.sqrt(5), abs=1e-10)
    assert adjacency_spectral_radius(cycle_graph(6)) == pytest.approx(2.0, abs=1e-10)


def test_adjacency_spectral_radius_matches_numpy():
    g = enriched_cycle_graph(9)
    ref = max(np.linalg.eigvalsh(g.adjacency()))
    assert adjacency_spectral_radius(g) == pytest.approx(ref, abs=1e-9)


def test_adjacency_spectral_radius_disconnected():
    with pytest.raises(InvalidInput):
        adjacency_spectral_radius(IntersectionGraph.from_edges(4, [(0, 1), (2, 3)]))


def test_paths_approach_two_from_below():
    vals = [adjacency_spectral_radius(path_graph(n)) for n in range(2, 51)]
    assert all(a < b for a, b in zip(vals, vals[1:]))
    assert all(v < 2 for v in vals)
    assert vals[-1] > 1.99


def test_tree_lower_bound():
    assert tree_lower_bound(0) == 1.0
    assert tree_lower_bound(math.sqrt(5)) == pytest.approx((7 + 3 * math.sqrt(5)) / 2)
    assert tree_lower_bound(math.sqrt(5)) == pytest.approx(6.854, abs=5e-4)
    grid = [tree_lower_bound(a / 10) for a in range(51)]
    assert all(a < b for a, b in zip(grid, grid[1:]))
    with pytest.raises(InvalidParameter):
        tree_lower_bound(-1)


def test_tree_lower_bound_solves_thurston_relation():
    for a in (0.5, 1.0, 2.3):
        lam = tree_lower_bound(a)
        assert lam + 1 / lam - 2 == pytest.approx(a * a)
