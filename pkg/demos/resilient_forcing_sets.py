"""
Resilient zero-forcing sets
===========================

Ordinary zero-forcing, what edge failures do to it, and why the
edge-deletion (contingent) and pendant-leak formulations agree.
"""

from combench.forcing import (
    force_closure,
    is_contingent_zfs,
    is_leaky_zfs,
    min_contingent_zfs,
    tree_contingent_set,
)
from combench.graphs import WeightedGraph, generate

# A path forces from one endpoint: each colored vertex has a unique
# uncolored neighbor, so the color sweeps across.
path = generate({"kind": "path", "params": {"n": 6}, "seed": 0})
state = force_closure(path, {0})
print("path closure from one endpoint:", sorted(state.colored))
print("forcing moves:", state.history)

# One endpoint is not resilient: deleting its incident edge strands it.
print("endpoint survives 1 edge deletion?", is_contingent_zfs(path, {0}, 1))
print("both endpoints survive 1 deletion?", is_contingent_zfs(path, {0, 5}, 1))

# The leaky formulation hangs a pendant on adversarially chosen vertices
# instead of deleting edges; the verdicts always match.
print("leaky agrees:",
      is_leaky_zfs(path, {0, 5}, 1) == is_contingent_zfs(path, {0, 5}, 1))

# On trees the minimum k-resilient set has a clean description: exactly the
# vertices of degree at most k.
spider = WeightedGraph.from_edges(
    7, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 6)])
for k in (1, 2):
    closed_form = tree_contingent_set(spider, k)
    searched = min_contingent_zfs(spider, k)
    print(f"k={k}: degree-<= {k} set {sorted(closed_form)} "
          f"== brute-force minimum {sorted(searched)}")

# Cycles need two adjacent seeds even without failures.
cycle = generate({"kind": "cycle", "params": {"m": 8}, "seed": 0})
print("cycle minimum forcing set:", sorted(min_contingent_zfs(cycle, 0)))
