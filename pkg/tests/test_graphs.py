import math

import numpy as np
import pytest

from combench.errors import DisconnectedGraph, InvalidSpec, ValidationError
from combench.graphs import (
    LandmarkSet,
    WeightedGraph,
    epsilon_net_greedy,
    generate,
    geodesic_distances,
    is_epsilon_net,
)

from util import random_connected_graph


def cycle(m):
    return generate({"kind": "cycle", "params": {"m": m}, "seed": 0})


class TestGeodesics:
    def test_unit_c4_opposite(self):
        dm = geodesic_distances(cycle(4))
        assert dm.entry(0, 2) == 2

    def test_single_weighted_edge(self):
        g = WeightedGraph.from_edges(2, [(0, 1, 3.5)])
        assert geodesic_distances(g).entry(0, 1) == 3.5

    def test_disconnected_flag(self):
        g = WeightedGraph.from_edges(2, [])
        with pytest.raises(DisconnectedGraph):
            geodesic_distances(g, require_finite=True)
        assert math.isinf(geodesic_distances(g).entry(0, 1))

    def test_metric_axioms_random(self):
        for seed in range(8):
            g = random_connected_graph(9, seed, weighted=True)
            arr = geodesic_distances(g).toarray()
            assert np.allclose(arr, arr.T)
            assert np.allclose(np.diag(arr), 0)
            n = g.n
            for i in range(n):
                for j in range(n):
                    for k in range(n):
                        assert arr[i, j] <= arr[i, k] + arr[k, j] + 1e-12

    def test_validation(self):
        with pytest.raises(ValidationError):
            WeightedGraph.from_edges(2, [(0, 0)])
        with pytest.raises(ValidationError):
            WeightedGraph.from_edges(2, [(0, 1, -1.0)])
        with pytest.raises(ValidationError):
            WeightedGraph.from_edges(2, [(0, 1), (1, 0)])

    def test_lazy_rows_above_dense_limit(self, monkeypatch):
        import combench.graphs as gr

        g = random_connected_graph(8, 1, weighted=True)
        monkeypatch.setattr(gr, "DENSE_LIMIT", 4)
        lazy = gr.geodesic_distances(g)
        monkeypatch.undo()
        dense = geodesic_distances(g)
        assert lazy.entry(0, 5) == dense.entry(0, 5)
        assert np.allclose(lazy.toarray(), dense.toarray())


class TestEpsilonNet:
    def test_c8_two_landmarks(self):
        assert is_epsilon_net(cycle(8), LandmarkSet({0, 4}, 2)).is_net

    def test_zero_eps_full_vertex_set(self):
        g = cycle(8)
        assert is_epsilon_net(g, LandmarkSet(set(range(8)), 0)).is_net

    def test_c8_single_landmark_not_sample(self):
        chk = is_epsilon_net(cycle(8), LandmarkSet({0}, 2))
        assert not chk.is_sample and chk.is_sparse

    def test_greedy_c8(self):
        net = epsilon_net_greedy(cycle(8), 2.0, seed=0)
        assert sorted(net.landmarks) == [0, 4]

    def test_greedy_eps_at_least_diameter(self):
        g = cycle(8)
        net = epsilon_net_greedy(g, 4.0, seed=3)
        assert net.landmarks == frozenset({3})

    def test_greedy_eps_zero_takes_all(self):
        g = cycle(5)
        assert epsilon_net_greedy(g, 0.0, seed=0).landmarks == frozenset(range(5))

    def test_greedy_always_net(self):
        for seed in range(12):
            g = random_connected_graph(10, seed, weighted=True)
            diam = geodesic_distances(g).diameter()
            eps = float(np.random.default_rng(seed).uniform(0, diam)) if diam else 0.0
            net = epsilon_net_greedy(g, eps, seed=seed)
            assert is_epsilon_net(g, net).is_net

    def test_greedy_monotone_in_eps(self):
        for seed in range(6):
            g = random_connected_graph(10, seed, weighted=True)
            diam = geodesic_distances(g).diameter()
            sizes = [
                len(epsilon_net_greedy(g, frac * diam, seed=0).landmarks)
                for frac in (0.2, 0.4, 0.8)
            ]
            assert sizes == sorted(sizes, reverse=True)


class TestGenerate:
    def test_cycle_six(self):
        g = cycle(6)
        assert g.n == 6 and g.edge_count == 6
        assert all(w == 1.0 for _, _, w in g.edges)

    def test_er_deterministic(self):
        spec = {"kind": "random_er", "params": {"n": 8, "p": 0.4}, "seed": 1}
        assert generate(spec) == generate(spec)

    def test_random_tree(self):
        g = generate({"kind": "random_tree", "params": {"n": 10}, "seed": 5})
        assert g.edge_count == 9 and g.is_connected()

    def test_bad_spec(self):
        with pytest.raises(InvalidSpec):
            generate({"kind": "moebius"})
        with pytest.raises(InvalidSpec):
            generate({"kind": "cycle", "params": {"m": 2}})
        with pytest.raises(InvalidSpec):
            generate({"kind": "cycle", "params": {"m": 5, "bogus": 1}})

    def test_json_roundtrip(self):
        g = random_connected_graph(7, 2, weighted=True)
        assert WeightedGraph.from_json_dict(g.to_json_dict()) == g
        assert WeightedGraph.from_json_dict({"n": 2, "edges": [[0, 1]]}).edges == (
            (0, 1, 1.0),
        )
