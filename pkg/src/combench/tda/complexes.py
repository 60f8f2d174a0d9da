"""Vietoris-Rips, witness, and Dowker filtrations on a graph metric.

A simplex is a sorted tuple of vertex indices.  Filtrations are stored as
(simplex, value) lists ordered by (value, dimension, lexicographic), which
makes downstream reduction deterministic.  The default ``max_dim`` is 2:
on metric graphs the interest is one-dimensional homology, and H1 only
needs the 2-skeleton.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from ..errors import (
    EmptyLandmarks,
    EmptyWitnesses,
    InfiniteDistance,
    InvalidFiltration,
    ValidationError,
)
from ..graphs import DistanceMatrix, WeightedGraph

Simplex = tuple[int, ...]


@dataclass(frozen=True)
class FilteredComplex:
    """Simplices with filtration values, closed under faces."""

    simplices: tuple[tuple[Simplex, float], ...]

    def __post_init__(self):
        ordered = tuple(
            sorted(
                ((tuple(sorted(set(s))), float(v)) for s, v in self.simplices),
                key=lambda item: (item[1], len(item[0]), item[0]),
            )
        )
        object.__setattr__(self, "simplices", ordered)

    def validate(self) -> None:
        """Raise :class:`InvalidFiltration` unless faces precede cofaces."""
        value = {s: v for s, v in self.simplices}
        if len(value) != len(self.simplices):
            raise InvalidFiltration("duplicate simplex in filtration")
        for s, v in self.simplices:
            if len(s) == 1:
                continue
            for face in combinations(s, len(s) - 1):
                if face not in value:
                    raise InvalidFiltration("missing face", simplex=s, face=face)
                if value[face] > v:
                    raise InvalidFiltration(
                        "face enters after coface", simplex=s, face=face
                    )

    def at(self, alpha: float) -> list[Simplex]:
        """Simplices present at scale alpha."""
        return [s for s, v in self.simplices if v <= alpha]

    def euler_characteristic(self, alpha: float) -> int:
        return sum((-1) ** (len(s) - 1) for s in self.at(alpha))

    @property
    def max_dimension(self) -> int:
        return max((len(s) - 1 for s, _ in self.simplices), default=-1)

    def critical_values(self) -> list[float]:
        return sorted({v for _, v in self.simplices})


def _finite_square(d: DistanceMatrix) -> np.ndarray:
    arr = d.toarray()
    if not np.all(np.isfinite(arr)):
        raise InfiniteDistance("metric has infinite entries (graph disconnected?)")
    return arr


def vietoris_rips(d: DistanceMatrix, alpha_max: float, max_dim: int = 2) -> FilteredComplex:
    """Flag filtration: a simplex enters at its largest pairwise distance.

    Simplices with entry value above ``alpha_max`` are dropped, as are
    dimensions above ``max_dim``.
    """
    if max_dim < 0:
        raise ValidationError("max_dim must be nonnegative", max_dim=max_dim)
    arr = _finite_square(d)
    n = d.n
    out: list[tuple[Simplex, float]] = [((v,), 0.0) for v in range(n)]
    # edges first, then extend cliques dimension by dimension
    edges = [
        ((u, v), float(arr[u, v]))
        for u in range(n)
        for v in range(u + 1, n)
        if arr[u, v] <= alpha_max
    ]
    if max_dim >= 1:
        out.extend(edges)
    for dim in range(2, max_dim + 1):
        for verts in combinations(range(n), dim + 1):
            val = max(arr[a, b] for a, b in combinations(verts, 2))
            if val <= alpha_max:
                out.append((verts, float(val)))
    return FilteredComplex(tuple(out))


def _validated_subsets(d: DistanceMatrix, W, L) -> tuple[list[int], list[int]]:
    W, L = sorted(set(W)), sorted(set(L))
    if not L:
        raise EmptyLandmarks("landmark set is empty")
    if not W:
        raise EmptyWitnesses("witness set is empty")
    for v in W + L:
        if not 0 <= v < d.n:
            raise ValidationError("vertex out of range", vertex=v, n=d.n)
    return W, L


def witness_complex(
    d: DistanceMatrix, W, L, alpha: float, max_dim: int = 2
) -> FilteredComplex:
    """Witness complex snapshot at scale alpha.

    A simplex on landmarks is present iff every sub-tuple has a witness
    whose distance to each member beats its distance to every non-member
    by at most alpha.  Filtration values come from the finite critical
    grid {d(w,l) - d(w,l')} of the defining inequalities, so the returned
    complex carries each simplex's exact entry scale.
    """
    if alpha < 0:
        raise ValidationError("alpha must be nonnegative", alpha=alpha)
    W, L = _validated_subsets(d, W, L)
    arr = _finite_square(d)
    out: list[tuple[Simplex, float]] = []

    def subset_threshold(tau: Sequence[int]) -> float:
        # smallest alpha at which some witness works for tau
        others = [l for l in L if l not in tau]
        best = np.inf
        for w in W:
            worst = max(arr[w, l] for l in tau)
            margin = min((arr[w, o] for o in others), default=np.inf)
            best = min(best, max(0.0, worst - margin))
        return best

    threshold_cache: dict[Simplex, float] = {}

    def birth(sigma: Simplex) -> float:
        val = 0.0
        for size in range(1, len(sigma) + 1):
            for tau in combinations(sigma, size):
                if tau not in threshold_cache:
                    threshold_cache[tau] = subset_threshold(tau)
                val = max(val, threshold_cache[tau])
        return val

    for dim in range(min(max_dim, len(L) - 1) + 1):
        for sigma in combinations(L, dim + 1):
            b = birth(sigma)
            if b <= alpha:
                out.append((sigma, b))
    return FilteredComplex(tuple(out))


def dowker_complex(d: DistanceMatrix, W, L, max_dim: int = 2) -> FilteredComplex:
    """Full Dowker filtration on landmark simplices.

    A simplex enters at the smallest alpha for which one witness is within
    alpha of all its vertices: min over witnesses of the max distance.
    """
    W, L = _validated_subsets(d, W, L)
    arr = _finite_square(d)
    sub = arr[np.ix_(W, L)]  # witness x landmark distances
    out: list[tuple[Simplex, float]] = []
    for dim in range(min(max_dim, len(L) - 1) + 1):
        for idx in combinations(range(len(L)), dim + 1):
            val = float(np.min(np.max(sub[:, idx], axis=1)))
            out.append((tuple(L[i] for i in idx), val))
    return FilteredComplex(tuple(out))


def genus(g: WeightedGraph) -> int:
    """First Betti number of the graph: |E| - |V| + #components."""
    return g.edge_count - g.n + len(g.components())
