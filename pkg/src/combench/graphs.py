"""Weighted simple graphs, geodesic metrics, and landmark nets.

Vertices are dense integers ``0..n-1``; external names are mapped at the
I/O boundary.  Graph values are immutable after construction and safe to
share across threads.

Graph JSON schema: ``{"n": int, "edges": [[u, v, w], ...]}`` with 0-based
indices; a two-element edge entry means weight 1.0.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra as _dijkstra

from .errors import DisconnectedGraph, InvalidSpec, LandmarkOutOfRange, ValidationError

# All-pairs matrices are materialized below this size, computed row by row
# (and cached) above it.
DENSE_LIMIT = 2000


@dataclass(frozen=True)
class WeightedGraph:
    """Simple undirected graph with positive edge weights."""

    n: int
    edges: tuple[tuple[int, int, float], ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValidationError("vertex count must be nonnegative", n=self.n)
        seen = set()
        normalized = []
        for e in self.edges:
            if len(e) != 3:
                raise ValidationError("edge must be (u, v, weight)", edge=e)
            u, v, w = e
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValidationError("edge endpoint out of range", edge=e, n=self.n)
            if u == v:
                raise ValidationError("self-loops are not allowed", vertex=u)
            if not w > 0:
                raise ValidationError("edge weights must be positive", edge=e)
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValidationError("duplicate edge", edge=key)
            seen.add(key)
            normalized.append((key[0], key[1], float(w)))
        object.__setattr__(self, "edges", tuple(sorted(normalized)))

    @staticmethod
    def from_edges(n: int, edges: Iterable[Sequence]) -> "WeightedGraph":
        """Build from ``(u, v)`` or ``(u, v, w)`` entries; missing weight is 1."""
        norm = []
        for e in edges:
            e = tuple(e)
            if len(e) == 2:
                e = (e[0], e[1], 1.0)
            norm.append(e)
        return WeightedGraph(n, tuple(norm))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def adjacency(self) -> list[list[tuple[int, float]]]:
        adj: list[list[tuple[int, float]]] = [[] for _ in range(self.n)]
        for u, v, w in self.edges:
            adj[u].append((v, w))
            adj[v].append((u, w))
        return adj

    def neighbor_masks(self) -> list[int]:
        """Adjacency as bitmasks (weights ignored); used by forcing code."""
        masks = [0] * self.n
        for u, v, _ in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return masks

    def degree(self, v: int) -> int:
        return sum(1 for a, b, _ in self.edges if v in (a, b))

    def components(self) -> list[set[int]]:
        seen = [False] * self.n
        adj = self.adjacency()
        comps = []
        for start in range(self.n):
            if seen[start]:
                continue
            stack, comp = [start], set()
            seen[start] = True
            while stack:
                u = stack.pop()
                comp.add(u)
                for v, _ in adj[u]:
                    if not seen[v]:
                        seen[v] = True
                        stack.append(v)
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def to_json_dict(self) -> dict:
        return {"n": self.n, "edges": [[u, v, w] for u, v, w in self.edges]}

    @staticmethod
    def from_json_dict(data: Mapping) -> "WeightedGraph":
        if not isinstance(data, Mapping) or "n" not in data or "edges" not in data:
            raise ValidationError("graph JSON needs keys 'n' and 'edges'")
        return WeightedGraph.from_edges(int(data["n"]), data["edges"])


class DistanceMatrix:
    """Geodesic distances of a :class:`WeightedGraph`.

    Dense for graphs up to :data:`DENSE_LIMIT` vertices; larger graphs get
    per-source rows computed on demand and cached.  Entries are ``inf``
    between different components.
    """

    def __init__(self, graph: WeightedGraph):
        self._graph = graph
        self.n = graph.n
        rows, cols, vals = [], [], []
        for u, v, w in graph.edges:
            rows += [u, v]
            cols += [v, u]
            vals += [w, w]
        self._sparse = csr_matrix((vals, (rows, cols)), shape=(self.n, self.n))
        self._rows: dict[int, np.ndarray] = {}
        self._dense: np.ndarray | None = None
        if self.n <= DENSE_LIMIT:
            if self.n == 0:
                self._dense = np.zeros((0, 0))
            else:
                self._dense = _dijkstra(self._sparse, directed=False)

    def row(self, u: int) -> np.ndarray:
        if self._dense is not None:
            return self._dense[u]
        if u not in self._rows:
            self._rows[u] = _dijkstra(self._sparse, directed=False, indices=u)
        return self._rows[u]

    def entry(self, u: int, v: int) -> float:
        return float(self.row(u)[v])

    def __getitem__(self, key: tuple[int, int]) -> float:
        return self.entry(*key)

    def toarray(self) -> np.ndarray:
        if self._dense is None:
            self._dense = _dijkstra(self._sparse, directed=False)
        return self._dense

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.toarray())))

    def diameter(self) -> float:
        """Largest finite entry (the metric diameter on a connected graph)."""
        if self.n == 0:
            return 0.0
        return float(np.max(self.toarray()[np.isfinite(self.toarray())], initial=0.0))


@dataclass(frozen=True)
class LandmarkSet:
    landmarks: frozenset[int]
    epsilon: float

    def __post_init__(self):
        object.__setattr__(self, "landmarks", frozenset(self.landmarks))
        if self.epsilon < 0:
            raise ValidationError("epsilon must be nonnegative", epsilon=self.epsilon)


@dataclass(frozen=True)
class NetCheck:
    is_sample: bool
    is_sparse: bool

    @property
    def is_net(self) -> bool:
        return self.is_sample and self.is_sparse


def geodesic_distances(g: WeightedGraph, require_finite: bool = False) -> DistanceMatrix:
    """Shortest-path metric of ``g`` (Dijkstra per source, weights > 0).

    With ``require_finite`` the caller demands a true metric and a
    disconnected graph raises :class:`DisconnectedGraph`; otherwise cross-
    component entries are ``inf``.
    """
    dm = DistanceMatrix(g)
    if require_finite and not dm.is_finite():
        raise DisconnectedGraph("graph is disconnected", n=g.n)
    return dm


def is_epsilon_net(g: WeightedGraph, landmarks: LandmarkSet) -> NetCheck:
    """Check the sample (cover) and sparsity halves of the net property.

    ``is_sample``: every vertex has a landmark within epsilon.
    ``is_sparse``: pairwise landmark distances all exceed epsilon.
    """
    L = sorted(landmarks.landmarks)
    if g.n == 0:
        return NetCheck(True, True)
    if not L:
        raise LandmarkOutOfRange("landmark set is empty")
    if any(not 0 <= u < g.n for u in L):
        raise LandmarkOutOfRange("landmark outside vertex range", landmarks=L, n=g.n)
    dm = geodesic_distances(g)
    eps = landmarks.epsilon
    is_sample = all(min(dm.entry(u, v) for u in L) <= eps for v in range(g.n))
    is_sparse = all(
        dm.entry(L[i], L[j]) > eps for i in range(len(L)) for j in range(i + 1, len(L))
    )
    return NetCheck(is_sample, is_sparse)


def epsilon_net_greedy(g: WeightedGraph, epsilon: float, seed: int = 0) -> LandmarkSet:
    """Farthest-point landmark insertion.

    Starts from the seed-selected vertex (``seed % n``) and repeatedly adds
    the vertex farthest from the current set while that distance exceeds
    epsilon; ties go to the smallest vertex index.  The result always
    satisfies :func:`is_epsilon_net`.
    """
    if g.n == 0:
        return LandmarkSet(frozenset(), epsilon)
    if epsilon < 0:
        raise ValidationError("epsilon must be nonnegative", epsilon=epsilon)
    dm = geodesic_distances(g, require_finite=True)
    start = seed % g.n
    chosen = [start]
    mindist = dm.row(start).copy()
    while True:
        far = int(np.argmax(mindist))  # first occurrence = smallest-index tie-break
        best = mindist[far]
        if best <= epsilon:
            break
        chosen.append(far)
        mindist = np.minimum(mindist, dm.row(far))
    return LandmarkSet(frozenset(chosen), epsilon)


def generate(spec: Mapping) -> WeightedGraph:
    """Seeded graph generator.

    ``spec`` is ``{"kind": ..., "params": {...}, "seed": int}`` with kinds
    ``cycle`` (m, weight), ``path`` (n, weight), ``random_er`` (n, p), and
    ``random_tree`` (n).  Output is deterministic for a fixed seed; cycle
    and path get unit weights unless overridden.
    """
    if not isinstance(spec, Mapping) or "kind" not in spec:
        raise InvalidSpec("generator spec needs a 'kind'")
    kind = spec["kind"]
    params = dict(spec.get("params", {}))
    seed = int(spec.get("seed", 0))
    rng = np.random.default_rng(seed)
    try:
        if kind == "cycle":
            m = int(params.pop("m", params.pop("n", -1)))
            w = float(params.pop("weight", 1.0))
            if m < 3:
                raise InvalidSpec("cycle needs m >= 3", m=m)
            edges = [(i, (i + 1) % m, w) for i in range(m)]
            g = WeightedGraph.from_edges(m, edges)
        elif kind == "path":
            n = int(params.pop("n", -1))
            w = float(params.pop("weight", 1.0))
            if n < 1:
                raise InvalidSpec("path needs n >= 1", n=n)
            g = WeightedGraph.from_edges(n, [(i, i + 1, w) for i in range(n - 1)])
        elif kind == "random_er":
            n = int(params.pop("n", -1))
            p = float(params.pop("p", -1))
            if n < 0 or not 0 <= p <= 1:
                raise InvalidSpec("random_er needs n >= 0 and p in [0,1]", n=n, p=p)
            edges = [
                (u, v, 1.0)
                for u in range(n)
                for v in range(u + 1, n)
                if rng.random() < p
            ]
            g = WeightedGraph.from_edges(n, edges)
        elif kind == "random_tree":
            n = int(params.pop("n", -1))
            if n < 1:
                raise InvalidSpec("random_tree needs n >= 1", n=n)
            g = WeightedGraph.from_edges(n, _random_tree_edges(n, rng))
        else:
            raise InvalidSpec("unknown generator kind", kind=kind)
    except (TypeError, ValueError) as exc:
        raise InvalidSpec(f"bad generator parameters: {exc}", kind=kind) from exc
    if params:
        raise InvalidSpec("unused generator parameters", extra=sorted(params))
    return g


def _random_tree_edges(n: int, rng: np.random.Generator) -> list[tuple[int, int, float]]:
    """Uniform labeled tree via a random Pruefer sequence."""
    if n == 1:
        return []
    if n == 2:
        return [(0, 1, 1.0)]
    prufer = [int(rng.integers(n)) for _ in range(n - 2)]
    degree = [1] * n
    for v in prufer:
        degree[v] += 1
    edges = []
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for v in prufer:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v, 1.0))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v, 1.0))
    return edges


def graph_diameter(g: WeightedGraph) -> float:
    return geodesic_distances(g, require_finite=True).diameter()
