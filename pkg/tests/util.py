"""Shared generators and independent oracles for the test suite."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from combench.graphs import WeightedGraph
from combench.elimination import LinearizedDag
from combench.tda.complexes import FilteredComplex


def random_connected_graph(n: int, seed: int, p: float = 0.35,
                           weighted: bool = False) -> WeightedGraph:
    """ER graph resampled until connected; optional random weights."""
    rng = np.random.default_rng(seed)
    while True:
        edges = []
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < p:
                    w = float(rng.uniform(0.5, 2.0)) if weighted else 1.0
                    edges.append((u, v, w))
        g = WeightedGraph.from_edges(n, edges)
        if g.is_connected():
            return g


def random_tree(n: int, seed: int) -> WeightedGraph:
    rng = np.random.default_rng(seed)
    edges = [(int(rng.integers(0, v)), v, 1.0) for v in range(1, n)]
    return WeightedGraph.from_edges(n, edges)


def all_connected_graphs(n: int):
    """Every labeled connected simple graph on n vertices (unit weights)."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        g = WeightedGraph.from_edges(n, edges)
        if g.is_connected():
            yield g


def random_dag(seed: int, n_sources=2, p_mid=3, m_sinks=1, extra=0.3,
               labeled=True) -> LinearizedDag:
    """Random linearized DAG where every intermediate and sink is fed."""
    rng = np.random.default_rng(seed)
    total = n_sources + p_mid + m_sinks
    arcs = set()
    for z in range(n_sources, n_sources + p_mid):
        arcs.add((int(rng.integers(0, z)), z))
        arcs.add((z, int(rng.integers(z + 1, total))))
    for y in range(n_sources + p_mid, total):
        if not any(b == y for _, b in arcs):
            arcs.add((int(rng.integers(0, n_sources + p_mid)), y))
    for i in range(n_sources + p_mid):  # any non-sink tail
        for j in range(max(i + 1, n_sources), total):  # any non-source head
            if rng.random() < extra:
                arcs.add((i, j))
    labels = tuple((a, float(rng.uniform(-2, 2))) for a in arcs) if labeled else None
    return LinearizedDag(n_sources, p_mid, m_sinks, frozenset(arcs), labels)


def gf2_rank(columns: list[int]) -> int:
    """Rank of a GF(2) matrix given as bit-packed columns."""
    rank = 0
    basis: list[int] = []
    for col in columns:
        for b in basis:
            col = min(col, col ^ b)
        if col:
            basis.append(col)
            basis.sort(reverse=True)
            rank += 1
    return rank


def betti_numbers(fc: FilteredComplex, alpha: float, max_dim: int) -> list[int]:
    """Betti numbers of the complex at scale alpha, by boundary ranks.

    Independent of the persistence pairing: beta_k = dim C_k - rank d_k -
    rank d_(k+1), computed with plain GF(2) Gaussian elimination.
    """
    simplices = fc.at(alpha)
    by_dim: dict[int, list] = {}
    for s in simplices:
        by_dim.setdefault(len(s) - 1, []).append(s)
    index = {}
    for d, group in by_dim.items():
        for i, s in enumerate(sorted(group)):
            index[s] = i
    ranks = {}
    for d, group in by_dim.items():
        if d == 0:
            ranks[0] = 0
            continue
        cols = []
        for s in group:
            col = 0
            for face in combinations(s, len(s) - 1):
                col |= 1 << index[face]
            cols.append(col)
        ranks[d] = gf2_rank(cols)
    out = []
    for d in range(max_dim + 1):
        dim_ck = len(by_dim.get(d, []))
        out.append(dim_ck - ranks.get(d, 0) - ranks.get(d + 1, 0))
    return out


def witness_members_direct(dm, W, L, alpha: float, max_dim: int):
    """Witness-complex membership by literal quantifier evaluation.

    A candidate simplex is in iff for EVERY nonempty subset tau there is
    SOME witness w with d(w, l) <= d(w, l') + alpha for all l in tau and
    l' in L minus tau.  No threshold algebra; used as the oracle.
    """
    W, L = sorted(set(W)), sorted(set(L))
    out = set()
    for size in range(1, min(max_dim + 1, len(L)) + 1):
        for sigma in combinations(L, size):
            ok = True
            for tsize in range(1, len(sigma) + 1):
                for tau in combinations(sigma, tsize):
                    others = [l for l in L if l not in tau]
                    if not any(
                        all(dm.entry(w, l) <= dm.entry(w, o) + alpha + 1e-12
                            for l in tau for o in others)
                        for w in W
                    ):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                out.add(sigma)
    return out


def dowker_members_direct(dm, W, L, alpha: float, max_dim: int):
    """Dowker membership at one scale: some witness within alpha of all
    simplex vertices."""
    W, L = sorted(set(W)), sorted(set(L))
    out = set()
    for size in range(1, min(max_dim + 1, len(L)) + 1):
        for sigma in combinations(L, size):
            if any(all(dm.entry(w, l) <= alpha + 1e-12 for l in sigma)
                   for w in W):
                out.add(sigma)
    return out


def subdivide(g: WeightedGraph) -> WeightedGraph:
    """Replace every edge by a length-2 path through a fresh vertex."""
    edges = []
    nxt = g.n
    for u, v, _ in g.edges:
        edges += [(u, nxt, 1.0), (nxt, v, 1.0)]
        nxt += 1
    return WeightedGraph.from_edges(nxt, edges)


def maxcut_bruteforce(g: WeightedGraph) -> int:
    best = 0
    for mask in range(1 << g.n):
        cut = sum(1 for u, v, _ in g.edges if (mask >> u & 1) != (mask >> v & 1))
        best = max(best, cut)
    return best
