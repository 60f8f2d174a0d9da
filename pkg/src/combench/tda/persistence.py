"""Persistence diagrams by boundary-matrix column reduction over GF(2).

Columns are Python ints used as bit vectors; reduction XORs away shared
pivots left to right.  Zero-length pairs are discarded; classes that never
die get death = inf.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from ..errors import InvalidFiltration
from .complexes import FilteredComplex, Simplex

INF = math.inf


@dataclass(frozen=True)
class PersistenceDiagram:
    """Multiset of (dimension, birth, death) with birth < death."""

    points: tuple[tuple[int, float, float], ...]

    def __post_init__(self):
        pts = tuple(sorted((int(d), float(b), float(x)) for d, b, x in self.points))
        for dim, b, x in pts:
            if not b < x:
                raise InvalidFiltration("diagram point needs birth < death",
                                        point=(dim, b, x))
        object.__setattr__(self, "points", pts)

    def in_dim(self, dim: int) -> list[tuple[float, float]]:
        return [(b, d) for dd, b, d in self.points if dd == dim]

    def finite_in_dim(self, dim: int) -> list[tuple[float, float]]:
        return [(b, d) for b, d in self.in_dim(dim) if math.isfinite(d)]

    def essential_in_dim(self, dim: int) -> list[float]:
        return [b for b, d in self.in_dim(dim) if math.isinf(d)]

    def as_multiset(self) -> Counter:
        return Counter(self.points)

    def betti(self, dim: int, alpha: float) -> int:
        """Rank of dim-homology at scale alpha, read off the diagram."""
        return sum(1 for b, d in self.in_dim(dim) if b <= alpha < d)

    def to_json_list(self) -> list[dict]:
        return [
            {"dim": dim, "birth": b, "death": ("inf" if math.isinf(d) else d)}
            for dim, b, d in self.points
        ]

    @staticmethod
    def from_json_list(data: Iterable[dict]) -> "PersistenceDiagram":
        pts = []
        for row in data:
            death = row["death"]
            pts.append((row["dim"], row["birth"],
                        INF if death == "inf" else float(death)))
        return PersistenceDiagram(tuple(pts))


def persistence(fc: FilteredComplex) -> PersistenceDiagram:
    """Standard reduction of the filtration's boundary matrix over GF(2)."""
    fc.validate()
    order: list[tuple[Simplex, float]] = list(fc.simplices)
    index = {s: i for i, (s, _) in enumerate(order)}
    columns: list[int] = []
    for s, _ in order:
        col = 0
        if len(s) > 1:
            for face in combinations(s, len(s) - 1):
                col |= 1 << index[face]
        columns.append(col)

    pivot_owner: dict[int, int] = {}
    pairs: list[tuple[int, int]] = []
    for j, col in enumerate(columns):
        while col:
            low = col.bit_length() - 1
            if low not in pivot_owner:
                pivot_owner[low] = j
                pairs.append((low, j))
                break
            col ^= columns[pivot_owner[low]]
        columns[j] = col

    paired = {i for p in pairs for i in p}
    points: list[tuple[int, float, float]] = []
    for i, j in pairs:
        birth, death = order[i][1], order[j][1]
        if birth < death:
            points.append((len(order[i][0]) - 1, birth, death))
    for i, (s, v) in enumerate(order):
        if i not in paired:
            points.append((len(s) - 1, v, INF))
    return PersistenceDiagram(tuple(points))
