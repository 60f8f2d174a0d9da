"""
Reversing a computation under a memory budget
=============================================

Adjoining a program's DAG needs its intermediate values in reverse order.
Store everything and pay no recomputation, store nothing and pay a
quadratic resweep bill, or checkpoint cleverly in between.
"""

from combench.reversal import (
    chain_dag,
    chain_revolve,
    chain_revolve_cost,
    optimal_reversal_bruteforce,
    recompute_all_schedule,
    simulate_reversal,
    store_all_schedule,
)

p = 20
g = chain_dag(p)  # one input, p intermediates, one output

# Extremes: full tape vs inputs-only.
tape = simulate_reversal(g, store_all_schedule(g), M=g.n + p)
lean = simulate_reversal(g, recompute_all_schedule(g), M=g.n)
print(f"store-all:     memory {tape.peak_persistent_memory:>3}, "
      f"re-evaluations {tape.computational_cost}")
print(f"recompute-all: memory {lean.peak_persistent_memory:>3}, "
      f"re-evaluations {lean.computational_cost} (= p(p-1)/2)")

# The whole Pareto front for a handful of checkpoint slots.
print("\ncheckpoints -> re-evaluations (binomial schedule):")
for c in range(1, 7):
    sched = chain_revolve(p, c)
    rep = simulate_reversal(g, sched, M=g.n + c)
    assert rep.computational_cost == chain_revolve_cost(p, c)
    print(f"  c={c}: {rep.computational_cost}")

# For small instances an exhaustive schedule search certifies the DP.
small = chain_dag(5)
for budget in range(small.n, small.n + 5):
    _, cost = optimal_reversal_bruteforce(small, budget)
    print(f"p=5, M={budget}: optimal re-evaluations {cost}")

# A peek at the actions revolve emits for p=6, c=2.
sched = chain_revolve(6, 2)
print("\nrevolve(6, 2) actions:")
print(" ".join(f"{a.kind[:3]}{a.vertex}" for a in sched.actions))
