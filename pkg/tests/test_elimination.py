from itertools import permutations

import numpy as np
import pytest

from combench.errors import (
    IllegalStep,
    InstanceTooLarge,
    MissingLabel,
    NotEliminatable,
    ValidationError,
)
from combench.elimination import (
    EliminationStep,
    LinearizedDag,
    back_eliminate,
    bipartite_jacobian,
    front_eliminate,
    greedy_vertex_sequence,
    optimal_sequence,
    path_sum_jacobian,
    run_sequence,
    vertex_eliminate,
)

from util import random_dag


def chain():
    return LinearizedDag(1, 1, 1, frozenset({(0, 1), (1, 2)}),
                         (((0, 1), 2.0), ((1, 2), 3.0)))


def diamond():
    arcs = {(0, 1), (0, 2), (1, 3), (2, 3)}
    labels = tuple((a, 1.0) for a in arcs)
    return LinearizedDag(1, 2, 1, frozenset(arcs), labels)


class TestEdgeElimination:
    def test_front_chain(self):
        g2, cost = front_eliminate(chain(), (0, 1))
        assert cost == 1
        assert g2.arcs == frozenset({(0, 2)})
        assert dict(g2.labels) == {(0, 2): 6.0}
        assert g2.is_bipartite

    def test_front_cost_is_successor_count(self):
        # z feeds two sinks: cost 2
        arcs = {(0, 1), (1, 2), (1, 3)}
        g = LinearizedDag(1, 1, 2, frozenset(arcs))
        _, cost = front_eliminate(g, (0, 1))
        assert cost == 2

    def test_back_chain(self):
        g2, cost = back_eliminate(chain(), (1, 2))
        assert cost == 1
        assert g2.arcs == frozenset({(0, 2)})
        assert dict(g2.labels) == {(0, 2): 6.0}

    def test_back_cost_is_predecessor_count(self):
        arcs = {(0, 2), (1, 2), (2, 3)}
        g = LinearizedDag(2, 1, 1, frozenset(arcs))
        _, cost = back_eliminate(g, (2, 3))
        assert cost == 2

    def test_back_equals_front_on_mirrored_dag(self):
        def mirror(g: LinearizedDag) -> LinearizedDag:
            total = g.n + g.p + g.m
            arcs = frozenset((total - 1 - j, total - 1 - i) for i, j in g.arcs)
            labels = None
            if g.labels is not None:
                labels = tuple(((total - 1 - j, total - 1 - i), v)
                               for (i, j), v in g.labels)
            return LinearizedDag(g.m, g.p, g.n, arcs, labels)

        for seed in range(10):
            g = random_dag(seed, n_sources=2, p_mid=3, m_sinks=2)
            total = g.n + g.p + g.m
            candidates = [a for a in g.arcs if a[0] >= g.n]
            if not candidates:
                continue
            i, j = candidates[0]
            back_res, back_cost = back_eliminate(g, (i, j))
            front_res, front_cost = front_eliminate(
                mirror(g), (total - 1 - j, total - 1 - i))
            assert back_cost == front_cost, seed
            assert mirror(front_res).arcs == back_res.arcs, seed

    def test_not_eliminatable(self):
        g = chain()
        with pytest.raises(NotEliminatable):
            front_eliminate(g, (1, 2))  # head is a sink
        with pytest.raises(NotEliminatable):
            back_eliminate(g, (0, 1))  # tail is a source
        with pytest.raises(NotEliminatable):
            front_eliminate(g, (0, 2))  # absent arc


class TestVertexElimination:
    def test_diamond_total(self):
        g = diamond()
        g1, c1 = vertex_eliminate(g, 1)
        g2, c2 = vertex_eliminate(g1, 2)
        assert c1 + c2 == 2
        assert dict(g2.labels) == {(0, 3): 2.0}

    def test_cost_formula(self):
        arcs = {(0, 2), (1, 2), (2, 3), (2, 4), (2, 5)}
        g = LinearizedDag(2, 1, 3, frozenset(arcs))
        _, cost = vertex_eliminate(g, 2)
        assert cost == 6

    def test_vertex_equals_front_of_in_edges(self):
        for seed in range(12):
            g = random_dag(seed, n_sources=2, p_mid=4, m_sinks=2)
            for z in g.intermediates():
                by_vertex, vcost = vertex_eliminate(g, z)
                h = g
                total = 0
                for pred in g.predecessors(z):
                    h, c = front_eliminate(h, (pred, z))
                    total += c
                assert h.arcs == by_vertex.arcs, (seed, z)
                assert total == vcost, (seed, z)
                if g.labels is not None:
                    a = dict(by_vertex.labels)
                    b = dict(h.labels)
                    assert a.keys() == b.keys()
                    assert all(abs(a[k] - b[k]) < 1e-12 for k in a)


class TestSequences:
    def test_chain_vertex_sequence(self):
        final, cost, complete = run_sequence(chain(), [EliminationStep.vertex(1)])
        assert complete and cost == 1

    def test_empty_sequence_on_bipartite(self):
        g = LinearizedDag(1, 0, 1, frozenset({(0, 1)}))
        final, cost, complete = run_sequence(g, [])
        assert complete and cost == 0

    def test_illegal_step_reports_index(self):
        with pytest.raises(IllegalStep) as err:
            run_sequence(chain(), [EliminationStep.vertex(1),
                                   EliminationStep.vertex(1)])
        assert err.value.context["index"] == 1

    def test_all_complete_orders_agree(self):
        for seed in range(8):
            g = random_dag(seed, n_sources=2, p_mid=4, m_sinks=1)
            oracle = path_sum_jacobian(g)
            arcsets = set()
            for order in permutations(g.intermediates()):
                final, cost, complete = run_sequence(
                    g, [EliminationStep.vertex(z) for z in order])
                assert complete
                arcsets.add(final.arcs)
                got = bipartite_jacobian(final)
                assert np.allclose(got, oracle, rtol=1e-12, atol=1e-12), seed
            assert len(arcsets) == 1, seed


class TestSearch:
    def test_greedy_chain_of_three(self):
        arcs = {(0, 1), (1, 2), (2, 3), (3, 4)}
        g = LinearizedDag(1, 3, 1, frozenset(arcs))
        steps, cost = greedy_vertex_sequence(g)
        assert cost == 3

    def test_greedy_diamond(self):
        steps, cost = greedy_vertex_sequence(diamond())
        assert cost == 2
        assert [s.target for s in steps] == [1, 2]

    def test_optimal_prefers_cheap_order(self):
        # two intermediates where eliminating the downstream one first wins
        arcs = {(0, 2), (1, 2), (2, 3), (3, 4)}
        g = LinearizedDag(2, 2, 1, frozenset(arcs))
        _, cost = optimal_sequence(g, "vertex")
        assert cost == 3
        steps, _ = optimal_sequence(g, "vertex")
        assert steps[0].target == 3

    def test_chain_vertex_optimum(self):
        arcs = {(0, 1), (1, 2), (2, 3), (3, 4)}
        g = LinearizedDag(1, 3, 1, frozenset(arcs))
        assert optimal_sequence(g, "vertex")[1] == 3

    def test_subset_costs_match_rewritten_graphs(self):
        # the DP computes neighborhoods through the eliminated set by
        # original-graph reachability; they must equal the rewritten graph's
        from combench.elimination import _markowitz_after

        for seed in range(8):
            g = random_dag(seed, n_sources=2, p_mid=5, m_sinks=2, labeled=False)
            rng = np.random.default_rng(seed)
            zs = g.intermediates()
            order = list(rng.permutation(zs))
            h = g
            eliminated: set[int] = set()
            for z in order[:-1]:
                h, _ = vertex_eliminate(h, z)
                eliminated.add(z)
                for rest in zs:
                    if rest in eliminated:
                        continue
                    direct = (len(h.predecessors(rest))
                              * len(h.successors(rest)))
                    via_dp = _markowitz_after(g, frozenset(eliminated), rest)
                    assert direct == via_dp, (seed, rest)

    def test_greedy_never_beats_optimal(self):
        for seed in range(10):
            g = random_dag(seed, n_sources=2, p_mid=4, m_sinks=2, labeled=False)
            _, greedy_cost = greedy_vertex_sequence(g)
            _, best = optimal_sequence(g, "vertex")
            assert greedy_cost >= best, seed

    def test_edge_mode_at_most_vertex_mode(self):
        for seed in range(6):
            g = random_dag(seed, n_sources=2, p_mid=3, m_sinks=1, labeled=False)
            if len(g.arcs) > 12:
                continue
            _, vcost = optimal_sequence(g, "vertex")
            esteps, ecost = optimal_sequence(g, "edge")
            assert ecost <= vcost, seed
            final, cost, complete = run_sequence(g, esteps)
            assert complete and cost == ecost

    def test_caps(self):
        g = random_dag(0, n_sources=2, p_mid=4, m_sinks=1)
        with pytest.raises(InstanceTooLarge):
            optimal_sequence(g, "vertex", cap_vertices=2)
        with pytest.raises(InstanceTooLarge):
            optimal_sequence(g, "edge", cap_edges=2)


class TestJacobian:
    def test_chain_single_path(self):
        assert path_sum_jacobian(chain()) == pytest.approx(np.array([[6.0]]))

    def test_diamond_two_paths(self):
        assert path_sum_jacobian(diamond()) == pytest.approx(np.array([[2.0]]))

    def test_missing_labels(self):
        g = LinearizedDag(1, 1, 1, frozenset({(0, 1), (1, 2)}))
        with pytest.raises(MissingLabel):
            path_sum_jacobian(g)

    def test_random_dags_match_eliminations(self):
        for seed in range(15):
            g = random_dag(seed, n_sources=3, p_mid=4, m_sinks=2)
            oracle = path_sum_jacobian(g)
            steps, _ = greedy_vertex_sequence(g)
            final, _, complete = run_sequence(g, steps)
            assert complete
            assert np.allclose(bipartite_jacobian(final), oracle, atol=1e-12)


class TestValidation:
    def test_one_based_json_roundtrip(self):
        g = diamond()
        assert LinearizedDag.from_json_dict(g.to_json_dict()) == g

    def test_rejects_arcs_into_sources(self):
        with pytest.raises(ValidationError):
            LinearizedDag(2, 1, 1, frozenset({(0, 1), (0, 2), (2, 3)}))

    def test_rejects_dangling_intermediates(self):
        with pytest.raises(ValidationError):
            LinearizedDag(1, 1, 1, frozenset({(0, 1)}))  # z has no successors
