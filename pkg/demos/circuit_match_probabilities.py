"""
How expressive is a parity-phase circuit?
=========================================

A binary matrix A fixes which qubit subsets receive tunable phases.  Two
random parameter samples look alike exactly when their integer indicator
vectors match, and the probability of that collision is a purely
combinatorial quantity.
"""

from combench.express import (
    BinaryMatrix,
    circuit_phases,
    closed_form_identity,
    closed_form_star,
    indicators,
    match_probability_bruteforce,
    maximal_abelian_probability,
    weight_leq_k_matrix,
)

# Indicators in action: column a_i scores each sample column by a mod-2
# inner product, then the scores add up as plain integers.
A = BinaryMatrix.from_bitstrings(
    ["1000", "0100", "0010", "0001", "1100", "1010", "1001"])
x = BinaryMatrix.from_bitstrings(["1100", "0100", "1010", "0001"])
print("indicator vector:", indicators(A, x))

# A = identity: matching indicators is matching row sums, and the collision
# probability factors row by row.
for n, t in [(1, 1), (2, 2), (3, 3)]:
    closed = closed_form_identity(n, t)
    brute = match_probability_bruteforce(BinaryMatrix.identity(n), t)
    print(f"identity n={n} t={t}: {closed} (brute force {brute})")

# The star family adds the pairs {1, r}: one extra coordinate of
# correlation, still summable in closed form.
for t in (1, 2, 3):
    print(f"star n=3 t={t}: {closed_form_star(3, t)} "
          f"(brute {match_probability_bruteforce(BinaryMatrix.star(3), t)})")

# More columns can only shrink the collision set (monotonicity).
ident = match_probability_bruteforce(BinaryMatrix.identity(3), 2)
star = match_probability_bruteforce(BinaryMatrix.star(3), 2)
full = match_probability_bruteforce(BinaryMatrix.full_nonzero(3), 2)
print("monotone:", ident, ">=", star, ">=", full)

# The maximal circuit (every nonzero column) collapses to a string puzzle:
# two uniform words over a 2^n-letter alphabet agreeing up to permutation.
print("maximal n=3 t=2:", maximal_abelian_probability(3, 2), "== brute:", full)

# Weight-bounded families interpolate between the two solved endpooints;
# only the brute-force route applies to the middle cases.
mid = weight_leq_k_matrix(4, 2)
print("weight<=2 on 4 rows has", mid.col_count, "columns; t=1 collision:",
      match_probability_bruteforce(mid, 1))

# The same columns drive the circuit's phase profile.
phases = circuit_phases(BinaryMatrix.star(2), [0.3, 0.5, 0.2])
print("phase vector of a 2-qubit star circuit:", phases)
