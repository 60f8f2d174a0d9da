from itertools import combinations

import numpy as np
import pytest

from combench.errors import InstanceTooLarge, NotATree
from combench.forcing import (
    force_closure,
    is_contingent_zfs,
    is_leaky_zfs,
    is_zero_forcing,
    min_contingent_zfs,
    tree_contingent_set,
)
from combench.graphs import WeightedGraph, generate

from util import all_connected_graphs, random_tree


def path(n):
    return generate({"kind": "path", "params": {"n": n}, "seed": 0})


def cycle(m):
    return generate({"kind": "cycle", "params": {"m": m}, "seed": 0})


def star(leaves):
    return WeightedGraph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


class TestClosure:
    def test_path_endpoint_forces_all(self):
        st = force_closure(path(4), {0})
        assert st.all_colored
        assert st.history == ((0, 1), (1, 2), (2, 3))

    def test_c4_single_vertex_stalls(self):
        st = force_closure(cycle(4), {0})
        assert st.colored == frozenset({0})
        assert st.history == ()

    def test_full_set_empty_history(self):
        g = cycle(5)
        st = force_closure(g, range(5))
        assert st.all_colored and st.history == ()

    def test_confluence_under_shuffles(self):
        for seed in range(10):
            rng = np.random.default_rng(seed)
            g = generate({"kind": "random_er",
                          "params": {"n": 9, "p": 0.3}, "seed": seed})
            Z = set(int(v) for v in rng.choice(9, size=3, replace=False))
            reference = force_closure(g, Z).colored
            for order_seed in range(5):
                assert force_closure(g, Z, order_seed=order_seed).colored == reference

    def test_monotone_in_seed_set(self):
        for seed in range(10):
            g = generate({"kind": "random_er",
                          "params": {"n": 8, "p": 0.35}, "seed": seed})
            rng = np.random.default_rng(seed)
            small = set(int(v) for v in rng.choice(8, size=2, replace=False))
            large = small | {int(rng.integers(8))}
            assert force_closure(g, small).colored <= force_closure(g, large).colored


class TestContingent:
    def test_star_two_leaves_plain_forcing(self):
        assert is_contingent_zfs(star(3), {1, 2}, 0)

    def test_p3_both_leaves_survives_one_removal(self):
        assert is_contingent_zfs(path(3), {0, 2}, 1)

    def test_p3_middle_fails_one_removal(self):
        assert not is_contingent_zfs(path(3), {1}, 1)

    def test_k0_equals_plain_zero_forcing(self):
        for seed in range(8):
            g = generate({"kind": "random_er",
                          "params": {"n": 7, "p": 0.35}, "seed": seed})
            rng = np.random.default_rng(seed)
            Z = set(int(v) for v in rng.choice(7, size=3, replace=False))
            assert is_contingent_zfs(g, Z, 0) == is_zero_forcing(g, Z)


class TestLeaky:
    def test_zero_leaks_is_plain_forcing(self):
        g = cycle(6)
        assert is_leaky_zfs(g, {0, 1}, 0) == is_zero_forcing(g, {0, 1})

    def test_p3_leaves_one_leak(self):
        assert is_leaky_zfs(path(3), {0, 2}, 1)

    def test_equivalence_random_spotcheck(self):
        for seed in range(12):
            g = generate({"kind": "random_er",
                          "params": {"n": 7, "p": 0.35}, "seed": seed})
            rng = np.random.default_rng(seed + 100)
            Z = set(int(v) for v in rng.choice(7, size=int(rng.integers(1, 5)),
                                               replace=False))
            for k in (1, 2):
                assert is_leaky_zfs(g, Z, k) == is_contingent_zfs(g, Z, k)

    def test_equivalence_exhaustive_n4(self):
        for g in all_connected_graphs(4):
            for size in range(5):
                for Z in combinations(range(4), size):
                    for k in (1, 2):
                        assert is_contingent_zfs(g, Z, k) == is_leaky_zfs(g, Z, k)


class TestMinSearch:
    def test_c4_minimum_pair(self):
        Z = min_contingent_zfs(cycle(4), 0)
        assert Z == frozenset({0, 1})

    def test_p4_single(self):
        assert min_contingent_zfs(path(4), 0) == frozenset({0})

    def test_tree_formula_any_k(self):
        for seed in range(6):
            t = random_tree(7, seed)
            for k in (1, 2):
                assert min_contingent_zfs(t, k) == tree_contingent_set(t, k)

    def test_cap_enforced(self):
        g = generate({"kind": "random_er", "params": {"n": 14, "p": 0.3}, "seed": 0})
        with pytest.raises(InstanceTooLarge):
            min_contingent_zfs(g, 0, cap=12)


class TestTreeLemma:
    def test_p3_k1(self):
        assert tree_contingent_set(path(3), 1) == frozenset({0, 2})

    def test_star_census(self):
        assert tree_contingent_set(star(4), 1) == frozenset({1, 2, 3, 4})
        assert tree_contingent_set(star(4), 4) == frozenset(range(5))

    def test_not_a_tree(self):
        with pytest.raises(NotATree):
            tree_contingent_set(cycle(4), 1)

    def test_low_degree_set_is_minimal(self):
        for seed in range(8):
            t = random_tree(8, seed)
            for k in (1, 2):
                Z = tree_contingent_set(t, k)
                assert is_contingent_zfs(t, Z, k)
                for drop in Z:
                    assert not is_contingent_zfs(t, Z - {drop}, k)

    def test_leaf_theorem(self):
        # any t-1 of the t leaves force a tree
        for seed in range(8):
            t = random_tree(9, seed)
            masks = t.neighbor_masks()
            leaves = [v for v in range(t.n) if bin(masks[v]).count("1") == 1]
            for skip in leaves:
                Z = set(leaves) - {skip}
                assert is_contingent_zfs(t, Z, 0)
