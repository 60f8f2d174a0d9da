"""Exact L-infinity bottleneck distance between persistence diagrams.

Candidate distances are the finitely many pairwise costs and diagonal
costs; a binary search over them plus a bipartite matching feasibility
test yields the exact optimum.  Essential classes (death = inf) must agree
in count and are matched to each other by sorted birth.
"""

from __future__ import annotations

from ..errors import EssentialMismatch
from .persistence import PersistenceDiagram

Point = tuple[float, float]


def _pair_cost(p: Point, q: Point) -> float:
    return max(abs(p[0] - q[0]), abs(p[1] - q[1]))


def _diag_cost(p: Point) -> float:
    return (p[1] - p[0]) / 2.0


def _matching_feasible(P: list[Point], Q: list[Point], t: float) -> bool:
    """Perfect matching test at threshold t, with diagonal projections.

    Left side: points of P plus one diagonal slot per point of Q; right
    side symmetric.  Kuhn's augmenting-path matching; sizes here are tiny.
    """
    nl = len(P) + len(Q)
    nr = len(Q) + len(P)
    eps = 1e-12 * (1.0 + t)

    def allowed(i: int, j: int) -> bool:
        pi_real = i < len(P)
        qj_real = j < len(Q)
        if pi_real and qj_real:
            return _pair_cost(P[i], Q[j]) <= t + eps
        if pi_real:  # P point onto the diagonal
            return _diag_cost(P[i]) <= t + eps
        if qj_real:  # diagonal slot absorbs a Q point
            return _diag_cost(Q[j]) <= t + eps
        return True  # diagonal to diagonal is free

    match_r: list[int | None] = [None] * nr

    def try_augment(i: int, seen: list[bool]) -> bool:
        for j in range(nr):
            if not seen[j] and allowed(i, j):
                seen[j] = True
                if match_r[j] is None or try_augment(match_r[j], seen):
                    match_r[j] = i
                    return True
        return False

    matched = 0
    for i in range(nl):
        if try_augment(i, [False] * nr):
            matched += 1
    return matched == nl


def bottleneck_distance(pd1: PersistenceDiagram, pd2: PersistenceDiagram, dim: int) -> float:
    """Exact bottleneck distance restricted to one homology dimension."""
    ess1 = sorted(pd1.essential_in_dim(dim))
    ess2 = sorted(pd2.essential_in_dim(dim))
    if len(ess1) != len(ess2):
        raise EssentialMismatch(
            "diagrams disagree on essential class count",
            dim=dim, count1=len(ess1), count2=len(ess2),
        )
    essential_cost = max((abs(a - b) for a, b in zip(ess1, ess2)), default=0.0)

    P = pd1.finite_in_dim(dim)
    Q = pd2.finite_in_dim(dim)
    if not P and not Q:
        return essential_cost

    candidates = {0.0}
    candidates.update(_pair_cost(p, q) for p in P for q in Q)
    candidates.update(_diag_cost(p) for p in P)
    candidates.update(_diag_cost(q) for q in Q)
    grid = sorted(candidates)

    lo, hi = 0, len(grid) - 1
    if not _matching_feasible(P, Q, grid[hi]):
        raise EssentialMismatch("no feasible matching at maximal candidate", dim=dim)
    while lo < hi:
        mid = (lo + hi) // 2
        if _matching_feasible(P, Q, grid[mid]):
            hi = mid
        else:
            lo = mid + 1
    return max(essential_cost, grid[lo])
