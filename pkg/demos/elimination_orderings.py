"""
Elimination orderings on a linearized DAG
=========================================

Fusing local partials edge by edge or vertex by vertex always produces the
same Jacobian; what changes is the multiplication count.  Order matters.
"""

import numpy as np

from combench.elimination import (
    EliminationStep,
    LinearizedDag,
    bipartite_jacobian,
    front_eliminate,
    greedy_vertex_sequence,
    optimal_sequence,
    path_sum_jacobian,
    run_sequence,
    vertex_eliminate,
)

# Two inputs feed a shared intermediate which fans out, then everything
# funnels into one output:  x1,x2 -> z1 -> z2 -> y with a skip arc.
arcs = {(0, 2), (1, 2), (2, 3), (3, 4), (2, 4)}
rng = np.random.default_rng(7)
labels = tuple((a, float(rng.uniform(-2, 2))) for a in sorted(arcs))
g = LinearizedDag(n=2, p=2, m=1, arcs=frozenset(arcs), labels=labels)

# The path-sum formula gives the Jacobian without any elimination:
# sum over source-to-sink paths of the product of arc labels.
oracle = path_sum_jacobian(g)
print("path-sum Jacobian:", oracle)

# Eliminate intermediates in the two possible orders.
for order in ([2, 3], [3, 2]):
    final, cost, complete = run_sequence(
        g, [EliminationStep.vertex(z) for z in order])
    print(f"order {order}: cost {cost}, Jacobian {bipartite_jacobian(final)}")

# The Markowitz-style greedy picks the cheapest vertex each round; the
# subset-DP oracle certifies the true optimum.
greedy_steps, greedy_cost = greedy_vertex_sequence(g)
optimal_steps, optimal_cost = optimal_sequence(g, "vertex")
print("greedy cost:", greedy_cost, "| optimal vertex cost:", optimal_cost)

# Edge elimination refines vertex elimination (a vertex step is a macro of
# front steps on its in-arcs) and can only do better.
edge_steps, edge_cost = optimal_sequence(g, "edge")
print("optimal edge cost:", edge_cost)

# Vertex elimination of z equals front-eliminating all in-arcs of z.
whole, _ = vertex_eliminate(g, 2)
h = g
for pred in g.predecessors(2):
    h, _ = front_eliminate(h, (pred, 2))
print("vertex == front-of-in-edges:", whole.arcs == h.arcs)
