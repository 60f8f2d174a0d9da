"""Edge and vertex elimination on linearized DAGs.

A linearized DAG partitions vertices into sources X = 0..n-1,
intermediates Z = n..n+p-1, and sinks Y = n+p..n+p+m-1, with arcs (i, j)
respecting i < j.  Eliminations rewrite the graph toward the bipartite
source-to-sink form while fusing local partials by the chain rule:
coinciding new and old arcs sum their labels.  Costs follow the structural
model: front-eliminating (i, j) costs |succ(j)|, back-eliminating costs
|pred(i)|, eliminating vertex j costs |pred(j)| * |succ(j)|.

DAG JSON schema: ``{"n": int, "p": int, "m": int, "arcs": [[i, j, label?]]}``
with 1-based vertex numbering, normalized to 0-based internally.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    IllegalStep,
    InstanceTooLarge,
    MissingLabel,
    NotEliminatable,
    ValidationError,
)


@dataclass(frozen=True)
class EliminationStep:
    kind: str  # "front" | "back" | "vertex"
    target: tuple[int, int] | int

    def __post_init__(self):
        if self.kind not in ("front", "back", "vertex"):
            raise ValidationError("unknown elimination kind", kind=self.kind)
        if self.kind == "vertex":
            if not isinstance(self.target, int):
                raise ValidationError("vertex step needs a vertex index")
        else:
            if not (isinstance(self.target, tuple) and len(self.target) == 2):
                raise ValidationError("edge step needs an arc (i, j)")

    @staticmethod
    def front(i: int, j: int) -> "EliminationStep":
        return EliminationStep("front", (i, j))

    @staticmethod
    def back(i: int, j: int) -> "EliminationStep":
        return EliminationStep("back", (i, j))

    @staticmethod
    def vertex(j: int) -> "EliminationStep":
        return EliminationStep("vertex", j)


@dataclass(frozen=True)
class LinearizedDag:
    n: int  # sources
    p: int  # intermediates
    m: int  # sinks
    arcs: frozenset[tuple[int, int]]
    labels: tuple[tuple[tuple[int, int], float], ...] | None = None

    def __post_init__(self):
        if min(self.n, self.p, self.m) < 0 or self.n == 0:
            raise ValidationError("need n >= 1 and p, m >= 0",
                                  n=self.n, p=self.p, m=self.m)
        total = self.n + self.p + self.m
        arcs = frozenset((int(i), int(j)) for i, j in self.arcs)
        for i, j in arcs:
            if not (0 <= i < j < total):
                raise ValidationError("arcs must satisfy 0 <= i < j < |V|", arc=(i, j))
            if j < self.n:
                raise ValidationError("sources cannot have in-arcs", arc=(i, j))
            if i >= self.n + self.p:
                raise ValidationError("sinks cannot have out-arcs", arc=(i, j))
        object.__setattr__(self, "arcs", arcs)
        if self.labels is not None:
            lab = tuple(sorted(((int(a), int(b)), float(v)) for (a, b), v in self.labels))
            if {arc for arc, _ in lab} != arcs:
                raise ValidationError("labels, when present, must cover every arc")
            object.__setattr__(self, "labels", lab)
        # every intermediate must sit on a source-to-sink path
        for z in self.intermediates():
            if not self.predecessors(z):
                raise ValidationError("intermediate without predecessors", vertex=z)
            if not self.successors(z):
                raise ValidationError("intermediate without successors", vertex=z)

    # vertex roles (an intermediate disappears from every arc once eliminated)
    def sources(self) -> list[int]:
        return list(range(self.n))

    def sinks(self) -> list[int]:
        return list(range(self.n + self.p, self.n + self.p + self.m))

    def intermediates(self) -> list[int]:
        present = {v for arc in self.arcs for v in arc}
        return [z for z in range(self.n, self.n + self.p) if z in present]

    def predecessors(self, v: int) -> list[int]:
        return sorted(i for i, j in self.arcs if j == v)

    def successors(self, v: int) -> list[int]:
        return sorted(j for i, j in self.arcs if i == v)

    def label_map(self) -> dict[tuple[int, int], float]:
        if self.labels is None:
            raise MissingLabel("dag carries no labels")
        return dict(self.labels)

    @property
    def is_bipartite(self) -> bool:
        return not self.intermediates()

    def with_labels(self, labels: Mapping[tuple[int, int], float]) -> "LinearizedDag":
        return LinearizedDag(self.n, self.p, self.m, self.arcs,
                             tuple(labels.items()))

    def to_json_dict(self) -> dict:
        rows = []
        lab = dict(self.labels) if self.labels is not None else {}
        for i, j in sorted(self.arcs):
            row = [i + 1, j + 1]  # 1-based on the wire
            if (i, j) in lab:
                row.append(lab[(i, j)])
            rows.append(row)
        return {"n": self.n, "p": self.p, "m": self.m, "arcs": rows}

    @staticmethod
    def from_json_dict(data: Mapping) -> "LinearizedDag":
        for key in ("n", "p", "m", "arcs"):
            if key not in data:
                raise ValidationError(f"dag JSON needs key '{key}'")
        arcs, labels = [], {}
        for row in data["arcs"]:
            i, j = int(row[0]) - 1, int(row[1]) - 1
            arcs.append((i, j))
            if len(row) > 2:
                labels[(i, j)] = float(row[2])
        if labels and len(labels) != len(arcs):
            raise ValidationError("either all arcs carry labels or none do")
        return LinearizedDag(
            int(data["n"]), int(data["p"]), int(data["m"]),
            frozenset(arcs),
            tuple(labels.items()) if labels else None,
        )


def _fuse(labels: dict | None, arc: tuple[int, int], contribution: float):
    if labels is None:
        return
    labels[arc] = labels.get(arc, 0.0) + contribution


def _rebuild(g: LinearizedDag, arcs: set, labels: dict | None) -> LinearizedDag:
    return LinearizedDag(
        g.n, g.p, g.m, frozenset(arcs),
        tuple(labels.items()) if labels is not None else None,
    )


def front_eliminate(g: LinearizedDag, arc: tuple[int, int]) -> tuple[LinearizedDag, int]:
    """Push arc (i, j) through j's successors; cost |succ(j)|.

    Adds (i, k) for every successor k of j (labels fuse by the chain rule),
    removes (i, j), and removes j entirely once its predecessor set empties.
    """
    i, j = arc
    if (i, j) not in g.arcs:
        raise NotEliminatable("arc not in dag", arc=arc)
    succ = g.successors(j)
    if not succ:
        raise NotEliminatable("target of arc has no successors", arc=arc)
    arcs = set(g.arcs)
    labels = dict(g.labels) if g.labels is not None else None
    d_ij = labels.pop((i, j)) if labels is not None else None
    arcs.remove((i, j))
    for k in succ:
        if labels is not None:
            _fuse(labels, (i, k), d_ij * labels[(j, k)])
        arcs.add((i, k))
    if not any(b == j for _, b in arcs):  # predecessor set emptied
        for k in succ:
            arcs.remove((j, k))
            if labels is not None:
                del labels[(j, k)]
    return _rebuild(g, arcs, labels), len(succ)


def back_eliminate(g: LinearizedDag, arc: tuple[int, int]) -> tuple[LinearizedDag, int]:
    """Pull arc (i, j) through i's predecessors; cost |pred(i)|.

    Mirror image of :func:`front_eliminate`: adds (k, j) for every
    predecessor k of i and removes i once its successor set empties.
    """
    i, j = arc
    if (i, j) not in g.arcs:
        raise NotEliminatable("arc not in dag", arc=arc)
    pred = g.predecessors(i)
    if not pred:
        raise NotEliminatable("origin of arc has no predecessors", arc=arc)
    arcs = set(g.arcs)
    labels = dict(g.labels) if g.labels is not None else None
    d_ij = labels.pop((i, j)) if labels is not None else None
    arcs.remove((i, j))
    for k in pred:
        if labels is not None:
            _fuse(labels, (k, j), labels[(k, i)] * d_ij)
        arcs.add((k, j))
    if not any(a == i for a, _ in arcs):  # successor set emptied
        for k in pred:
            arcs.remove((k, i))
            if labels is not None:
                del labels[(k, i)]
    return _rebuild(g, arcs, labels), len(pred)


def vertex_eliminate(g: LinearizedDag, j: int) -> tuple[LinearizedDag, int]:
    """Replace paths through j by direct arcs; cost |pred(j)| * |succ(j)|."""
    if not g.n <= j < g.n + g.p:
        raise NotEliminatable("only intermediate vertices can be eliminated", vertex=j)
    pred, succ = g.predecessors(j), g.successors(j)
    if not pred or not succ:
        raise NotEliminatable("vertex needs nonempty predecessor and successor sets",
                              vertex=j)
    arcs = set(g.arcs)
    labels = dict(g.labels) if g.labels is not None else None
    for a in pred:
        for b in succ:
            if labels is not None:
                _fuse(labels, (a, b), labels[(a, j)] * labels[(j, b)])
            arcs.add((a, b))
    for a in pred:
        arcs.remove((a, j))
        if labels is not None:
            del labels[(a, j)]
    for b in succ:
        arcs.remove((j, b))
        if labels is not None:
            del labels[(j, b)]
    return _rebuild(g, arcs, labels), len(pred) * len(succ)


def apply_step(g: LinearizedDag, step: EliminationStep) -> tuple[LinearizedDag, int]:
    if step.kind == "front":
        return front_eliminate(g, step.target)
    if step.kind == "back":
        return back_eliminate(g, step.target)
    return vertex_eliminate(g, step.target)


def run_sequence(
    g: LinearizedDag, steps: Sequence[EliminationStep]
) -> tuple[LinearizedDag, int, bool]:
    """Apply steps in order; returns (final dag, total cost, is_complete)."""
    total = 0
    for idx, step in enumerate(steps):
        try:
            g, cost = apply_step(g, step)
        except NotEliminatable as exc:
            raise IllegalStep(f"step {idx} illegal: {exc}", index=idx,
                              step=(step.kind, step.target)) from exc
        total += cost
    return g, total, g.is_bipartite


def greedy_vertex_sequence(g: LinearizedDag) -> tuple[list[EliminationStep], int]:
    """Lowest-Markowitz-degree vertex order, ties to the lowest index."""
    steps: list[EliminationStep] = []
    total = 0
    while True:
        zs = g.intermediates()
        if not zs:
            break
        j = min(zs, key=lambda z: (len(g.predecessors(z)) * len(g.successors(z)), z))
        g, cost = vertex_eliminate(g, j)
        steps.append(EliminationStep.vertex(j))
        total += cost
    return steps, total


def _markowitz_after(g: LinearizedDag, eliminated: frozenset[int], j: int) -> int:
    """|pred| * |succ| of j in the dag with ``eliminated`` already removed.

    Elimination is structurally confluent: the neighborhood of j after
    eliminating a set is given by original paths whose interior vertices
    all lie in that set, independent of order.
    """
    def reach(v: int, forward: bool) -> set[int]:
        out: set[int] = set()
        seen = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for a, b in g.arcs:
                w = b if forward else a
                if (a if forward else b) != u:
                    continue
                if w in eliminated:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
                else:
                    out.add(w)
        return out

    return len(reach(j, forward=False)) * len(reach(j, forward=True))


def optimal_sequence(
    g: LinearizedDag, mode: str = "vertex", cap_vertices: int = 10, cap_edges: int = 14
) -> tuple[list[EliminationStep], int]:
    """Exhaustive minimum-cost complete elimination sequence.

    Vertex mode runs a DP over subsets of intermediates (costs depend only
    on the eliminated set).  Edge mode memoizes on the arc set reached by
    front/back moves.  Desk-scale oracle, not a polynomial algorithm.
    """
    if mode == "vertex":
        zs = g.intermediates()
        if len(zs) > cap_vertices:
            raise InstanceTooLarge("too many intermediates for subset DP",
                                   p=len(zs), cap=cap_vertices)
        if not zs:
            return [], 0
        index = {z: b for b, z in enumerate(zs)}
        size = 1 << len(zs)
        best = [None] * size
        best[0] = (0, None, None)  # cost, previous mask, eliminated vertex
        order = sorted(range(size), key=lambda mask: bin(mask).count("1"))
        for mask in order:
            if best[mask] is None:
                continue
            done = frozenset(z for z in zs if mask >> index[z] & 1)
            for z in zs:
                if mask >> index[z] & 1:
                    continue
                cost = best[mask][0] + _markowitz_after(g, done, z)
                nxt = mask | 1 << index[z]
                if best[nxt] is None or cost < best[nxt][0]:
                    best[nxt] = (cost, mask, z)
        full = size - 1
        seq: list[EliminationStep] = []
        mask = full
        while mask:
            _, prev, z = best[mask]
            seq.append(EliminationStep.vertex(z))
            mask = prev
        seq.reverse()
        return seq, best[full][0]

    if mode == "edge":
        if len(g.arcs) > cap_edges or g.p > 8:
            raise InstanceTooLarge("too many arcs for edge-mode search",
                                   arcs=len(g.arcs), cap=cap_edges)
        bare = LinearizedDag(g.n, g.p, g.m, g.arcs)  # search is structural
        memo: dict[frozenset, tuple[int, EliminationStep | None]] = {}

        def legal_moves(h: LinearizedDag) -> list[EliminationStep]:
            zlow, zhigh = h.n, h.n + h.p
            moves = []
            for (a, b) in sorted(h.arcs):
                if zlow <= b < zhigh:
                    moves.append(EliminationStep.front(a, b))
                if zlow <= a < zhigh:
                    moves.append(EliminationStep.back(a, b))
            return moves

        def solve(h: LinearizedDag) -> int:
            key = h.arcs
            if key in memo:
                return memo[key][0]
            if h.is_bipartite:
                memo[key] = (0, None)
                return 0
            best_cost, best_move = None, None
            for move in legal_moves(h):
                h2, cost = apply_step(h, move)
                sub = cost + solve(h2)
                if best_cost is None or sub < best_cost:
                    best_cost, best_move = sub, move
            memo[key] = (best_cost, best_move)
            return best_cost

        total = solve(bare)
        seq = []
        h = bare
        while not h.is_bipartite:
            move = memo[h.arcs][1]
            seq.append(move)
            h, _ = apply_step(h, move)
        return seq, total

    raise ValidationError("mode must be 'vertex' or 'edge'", mode=mode)


def path_sum_jacobian(g: LinearizedDag) -> np.ndarray:
    """m x n matrix of path-products summed over all source-sink paths.

    Independent of any elimination order; entry (t, s) accumulates the
    product of arc labels along every path from source s to sink t.
    """
    labels = g.label_map()
    total = g.n + g.p + g.m
    out = np.zeros((g.m, g.n))
    for s in range(g.n):
        acc = np.zeros(total)
        acc[s] = 1.0
        for (i, j) in sorted(g.arcs, key=lambda a: (a[1], a[0])):
            acc[j] += labels[(i, j)] * acc[i]
        out[:, s] = acc[g.n + g.p:]
    return out


def bipartite_jacobian(g: LinearizedDag) -> np.ndarray:
    """Jacobian read directly off a fully eliminated (bipartite) dag."""
    if not g.is_bipartite:
        raise ValidationError("dag still has intermediate vertices")
    labels = g.label_map()
    out = np.zeros((g.m, g.n))
    for (i, j), v in labels.items():
        out[j - g.n - g.p, i] = v
    return out
