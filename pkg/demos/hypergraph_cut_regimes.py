"""
Cardinality-based hypergraph cuts across the penalty range
==========================================================

A 4-uniform hyperedge can be split 1-vs-3 (penalty 1) or 2-vs-2 (penalty
w2).  The three regimes of w2 behave very differently; the brute-force
oracle keeps every reduction honest.
"""

from fractions import Fraction

from combench.graphs import WeightedGraph
from combench.hypercut import (
    CutWeights,
    Hypergraph,
    brute_force_min_cut,
    cut_value,
    gadget_min_cut_4uniform,
    lawler_min_cut,
    maxcut_reduction,
    no_even_split_min,
)

H = Hypergraph(
    8,
    tuple(frozenset(e) for e in
          [{0, 1, 2, 7}, {1, 2, 3, 4}, {2, 4, 5, 6}, {0, 3, 5, 7}]),
    s=0, t=7,
)

# Sweep w2 across [1, 2]: the flow reduction (two cardinality gadgets per
# hyperedge) tracks the exhaustive optimum exactly.
for w2 in (Fraction(1), Fraction(5, 4), Fraction(3, 2), Fraction(2)):
    value, S = gadget_min_cut_4uniform(H, w2)
    _, expect = brute_force_min_cut(H, CutWeights((0, 1, w2)))
    print(f"w2={w2}: flow value {value} (brute force {expect}), S={sorted(S)}")

# All-ones penalties reduce to plain hyperedge deletion (node-pair
# construction with a unit bridging arc per hyperedge).
value, S = lawler_min_cut(H)
print("all-ones optimum:", value, "cut side:", sorted(S))

# Below w2 = 1 the problem encodes max-cut: each graph edge becomes a
# hyperedge {u, v, s, t}, and free 2-vs-2 splits reward cutting edges.
square = WeightedGraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
reduction = maxcut_reduction(square)
_, value = brute_force_min_cut(reduction, CutWeights((0, 1, 0)))
print("square graph: |E| - maxcut =", value, "(maxcut =", len(square.edges) - value, ")")

# And as w2 grows without bound we land on the no-even-split problem:
# forbid 2-vs-2 splits outright, minimize the 1-vs-3 count.
count, S = no_even_split_min(H)
print("no-even-split: odd splits =", count, "S =", sorted(S))
print("  objective recheck:",
      cut_value(H, S, CutWeights((0, 1, 10 ** 6))))
