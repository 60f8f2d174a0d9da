"""Cardinality-based hypergraph s-t cuts.

A bipartition {S, complement} is charged w[i] for every hyperedge with
exactly i vertices on its smaller side, w[0] = 0.  This module evaluates
that objective, minimizes it exhaustively, and reduces the tractable
regimes to directed min-cut: the all-or-nothing case (every cut hyperedge
costs 1), the 4-uniform case with split penalty w2 in [1, 2] via a pair of
cardinality gadgets per hyperedge, and the max-cut correspondence at
w2 < 1.  All arithmetic is exact rational.

Hypergraph JSON schema:
``{"n": int, "s": int, "t": int, "edges": [[v, ...], ...]}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from .errors import (
    InstanceTooLarge,
    TerminalViolation,
    ValidationError,
    WeightOutOfRange,
)
from .graphs import WeightedGraph
from .maxflow import FlowNetwork

BRUTE_FORCE_CAP = 20


@dataclass(frozen=True)
class Hypergraph:
    n: int
    edges: tuple[frozenset[int], ...]
    s: int
    t: int

    def __post_init__(self):
        if not (0 <= self.s < self.n and 0 <= self.t < self.n) or self.s == self.t:
            raise ValidationError("terminals must be distinct in-range vertices",
                                  s=self.s, t=self.t, n=self.n)
        edges = tuple(frozenset(e) for e in self.edges)
        for e in edges:
            if len(e) < 2:
                raise ValidationError("hyperedges need at least 2 vertices", edge=sorted(e))
            if any(not 0 <= v < self.n for v in e):
                raise ValidationError("hyperedge member out of range", edge=sorted(e))
        object.__setattr__(self, "edges", edges)

    @property
    def max_edge_size(self) -> int:
        return max((len(e) for e in self.edges), default=0)

    def is_uniform(self, r: int) -> bool:
        return all(len(e) == r for e in self.edges)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "s": self.s,
            "t": self.t,
            "edges": [sorted(e) for e in self.edges],
        }

    @staticmethod
    def from_json_dict(data: Mapping) -> "Hypergraph":
        for key in ("n", "s", "t", "edges"):
            if key not in data:
                raise ValidationError(f"hypergraph JSON needs key '{key}'")
        return Hypergraph(
            int(data["n"]),
            tuple(frozenset(map(int, e)) for e in data["edges"]),
            int(data["s"]),
            int(data["t"]),
        )


@dataclass(frozen=True)
class CutWeights:
    """Split penalties w[0..r/2]; w[i] charges hyperedges with i on the small side."""

    w: tuple[Fraction, ...]

    def __post_init__(self):
        w = tuple(Fraction(x) for x in self.w)
        if not w or w[0] != 0:
            raise ValidationError("w[0] must be 0", w=[str(x) for x in self.w])
        if any(x < 0 for x in w):
            raise ValidationError("penalties must be nonnegative")
        object.__setattr__(self, "w", w)

    @staticmethod
    def all_ones(max_edge_size: int) -> "CutWeights":
        return CutWeights((Fraction(0),) + (Fraction(1),) * (max_edge_size // 2))

    def penalty(self, small_side: int) -> Fraction:
        if small_side >= len(self.w):
            raise ValidationError("penalty index beyond weight table",
                                  index=small_side, table=len(self.w))
        return self.w[small_side]


def _check_terminals(H: Hypergraph, S: frozenset[int]) -> None:
    if H.s not in S or H.t in S:
        raise TerminalViolation("S must contain s and exclude t",
                                s=H.s, t=H.t, S=sorted(S))


def cut_value(H: Hypergraph, S: Iterable[int], w: CutWeights) -> Fraction:
    """Objective sum over hyperedges of w[min(|e&S|, |e-S|)]."""
    S = frozenset(S)
    _check_terminals(H, S)
    total = Fraction(0)
    for e in H.edges:
        inside = len(e & S)
        total += w.penalty(min(inside, len(e) - inside))
    return total


def _lex_candidates(H: Hypergraph):
    """All terminal-respecting S, each as a sorted tuple (iteration order arbitrary)."""
    rest = [v for v in range(H.n) if v not in (H.s, H.t)]
    for r in range(len(rest) + 1):
        for extra in combinations(rest, r):
            yield tuple(sorted((H.s,) + extra))


def brute_force_min_cut(
    H: Hypergraph, w: CutWeights, cap: int = BRUTE_FORCE_CAP
) -> tuple[frozenset[int], Fraction]:
    """Exact minimizer over all terminal-respecting bipartitions.

    Ties break to the lexicographically smallest S.  Serves as the oracle
    for every reduction in this module.
    """
    if H.n > cap:
        raise InstanceTooLarge("hypergraph above brute-force cap", n=H.n, cap=cap)
    best: tuple[Fraction, tuple[int, ...]] | None = None
    for S in _lex_candidates(H):
        val = cut_value(H, S, w)
        if best is None or val < best[0] or (val == best[0] and S < best[1]):
            best = (val, S)
    assert best is not None
    return frozenset(best[1]), best[0]


def _hypergraph_vertex_side(net: FlowNetwork, H: Hypergraph) -> frozenset[int]:
    reach = net.residual_reachable(H.s)
    return frozenset(v for v in range(H.n) if v in reach)


def lawler_min_cut(H: Hypergraph) -> tuple[Fraction, frozenset[int]]:
    """Minimum number of hyperedges to delete to separate s from t.

    Classical node-pair reduction: each hyperedge e gets auxiliary nodes
    (e_in, e_out) with a unit arc e_in -> e_out and infinite arcs v -> e_in,
    e_out -> v for every member v.  Equals the cardinality objective with
    w[i] = 1 for all i > 0.
    """
    inf = Fraction(len(H.edges) + 1)
    net = FlowNetwork(H.n)
    for e in H.edges:
        a = net.add_node()
        b = net.add_node()
        net.add_arc(a, b, Fraction(1))
        for v in e:
            net.add_arc(v, a, inf)
            net.add_arc(b, v, inf)
    value = net.max_flow(H.s, H.t)
    return value, _hypergraph_vertex_side(net, H)


def _add_cardinality_gadget(net: FlowNetwork, members, a: Fraction, b: int) -> None:
    """Auxiliary pair charging a * min(i, b) when i members sit on the small side."""
    e_in = net.add_node()
    e_out = net.add_node()
    net.add_arc(e_in, e_out, a * b)
    for v in members:
        net.add_arc(v, e_in, a)
        net.add_arc(e_out, v, a)


def gadget_min_cut_4uniform(H: Hypergraph, w2) -> tuple[Fraction, frozenset[int]]:
    """4-uniform cut with penalties (w1, w2) = (1, w2), solved via max-flow.

    Each hyperedge becomes two cardinality gadgets with coefficients
    a1 = 2 - w2 (cap at 1) and a2 = w2 - 1 (cap at 2), so a split with i
    vertices on the small side costs a1*min(i,1) + a2*min(i,2), which is 1
    at i = 1 and w2 at i = 2.  Both coefficients are nonnegative exactly
    when 1 <= w2 <= 2, the regime where this reduction is valid.
    """
    w2 = Fraction(w2)
    if not Fraction(1) <= w2 <= Fraction(2):
        raise WeightOutOfRange("gadget reduction needs w2 in [1, 2]", w2=str(w2))
    if not H.is_uniform(4):
        raise ValidationError("gadget reduction needs a 4-uniform hypergraph")
    net = FlowNetwork(H.n)
    a1 = Fraction(2) - w2
    a2 = w2 - Fraction(1)
    for e in H.edges:
        _add_cardinality_gadget(net, e, a1, 1)
        _add_cardinality_gadget(net, e, a2, 2)
    value = net.max_flow(H.s, H.t)
    return value, _hypergraph_vertex_side(net, H)


def maxcut_reduction(G: WeightedGraph) -> Hypergraph:
    """Wrap each graph edge {u, v} into a hyperedge {u, v, s, t}.

    With w2 = 0 < w1 the minimum hypergraph cut equals |E| - maxcut(G):
    every hyperedge is forced cut by its terminals, and 2-vs-2 splits are
    free exactly for the edges a bipartition cuts.
    """
    s, t = G.n, G.n + 1
    edges = tuple(frozenset({u, v, s, t}) for u, v, _ in G.edges)
    return Hypergraph(G.n + 2, edges, s, t)


def no_even_split_min(
    H: Hypergraph, cap: int = BRUTE_FORCE_CAP
) -> tuple[int, frozenset[int]]:
    """Fewest 1-vs-3 splits subject to zero 2-vs-2 splits (4-uniform).

    S = {s} never makes an even split, so the problem is always feasible.
    Brute force; this is the w2 -> infinity limit of the weighted problem.
    """
    if not H.is_uniform(4):
        raise ValidationError("no-even-split needs a 4-uniform hypergraph")
    if H.n > cap:
        raise InstanceTooLarge("hypergraph above brute-force cap", n=H.n, cap=cap)
    best: tuple[int, tuple[int, ...]] | None = None
    for S in _lex_candidates(H):
        Sset = frozenset(S)
        odd = 0
        feasible = True
        for e in H.edges:
            i = min(len(e & Sset), 4 - len(e & Sset))
            if i == 2:
                feasible = False
                break
            if i == 1:
                odd += 1
        if feasible and (best is None or odd < best[0] or (odd == best[0] and S < best[1])):
            best = (odd, S)
    assert best is not None  # S = {s} is always feasible
    return best[0], frozenset(best[1])
