"""Data-flow reversal schedules under a persistent-memory budget.

The model: a program induces a DAG with sources 0..n-1 (inputs, always
persistent), intermediates, and sinks.  Reversing it means adjoining every
non-source vertex in strictly decreasing index order, where adjoining j
consumes the values of j's predecessors.  Values live in two places:

* a *frame* of working values produced by ``evaluate`` actions, wiped at
  every ``adjoin`` (working memory of the current forward run is not
  budgeted);
* a *store* of checkpointed values (``store``/``free``), which together
  with the n inputs must fit the persistent budget M.

The first evaluation of each vertex is the primal sweep and is free;
computational cost counts re-evaluations only.  ``restore`` marks a
checkpoint being loaded back into the frame (stored values are readable
either way; the verb keeps schedules self-documenting).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    IncompleteReversal,
    Infeasible,
    InstanceTooLarge,
    MemoryExceeded,
    ValidationError,
    ValueNotLive,
)
from .elimination import LinearizedDag

KINDS = ("evaluate", "store", "restore", "adjoin", "free")


@dataclass(frozen=True)
class Action:
    kind: str
    vertex: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError("unknown schedule action", kind=self.kind)


@dataclass(frozen=True)
class ReversalSchedule:
    actions: tuple[Action, ...]

    def to_json_list(self) -> list[list]:
        return [[a.kind, a.vertex] for a in self.actions]

    @staticmethod
    def from_json_list(data: Iterable[Sequence]) -> "ReversalSchedule":
        return ReversalSchedule(tuple(Action(str(k), int(v)) for k, v in data))


@dataclass(frozen=True)
class CostReport:
    peak_persistent_memory: int  # stored values at the worst moment, inputs included
    computational_cost: int  # evaluate actions beyond the initial primal sweep


def chain_dag(p: int, labeled: bool = False) -> LinearizedDag:
    """Single-source chain with p intermediates and one sink."""
    arcs = [(i, i + 1) for i in range(p + 1)]
    labels = tuple((a, 1.0) for a in arcs) if labeled else None
    return LinearizedDag(1, p, 1, frozenset(arcs), labels)


def simulate_reversal(g: LinearizedDag, schedule: ReversalSchedule, M: int) -> CostReport:
    """Replay a schedule, enforcing liveness, budget, and adjoint order.

    Raises :class:`ValueNotLive`/:class:`MemoryExceeded` at the offending
    step index and :class:`IncompleteReversal` if the schedule ends before
    every non-source vertex was evaluated once and adjoined exactly once in
    decreasing order.
    """
    n = g.n
    if M < n:
        raise Infeasible("budget below the always-persistent inputs", M=M, n=n)
    non_sources = set(range(n, n + g.p + g.m))
    preds = {j: g.predecessors(j) for j in non_sources}
    stored: set[int] = set()
    frame: set[int] = set()
    eval_count: dict[int, int] = {}
    adjoined: list[int] = []
    peak = n

    def available(v: int) -> bool:
        return v < n or v in stored or v in frame

    for step, act in enumerate(schedule.actions):
        v = act.vertex
        if act.kind == "evaluate":
            if v not in non_sources:
                raise ValueNotLive("only non-source vertices are evaluated",
                                   step=step, vertex=v)
            missing = [u for u in preds[v] if not available(u)]
            if missing:
                raise ValueNotLive("evaluate needs all predecessors live",
                                   step=step, vertex=v, missing=missing)
            frame.add(v)
            eval_count[v] = eval_count.get(v, 0) + 1
        elif act.kind == "store":
            if v not in frame:
                raise ValueNotLive("store needs the value in the frame",
                                   step=step, vertex=v)
            stored.add(v)
            peak = max(peak, n + len(stored))
            if n + len(stored) > M:
                raise MemoryExceeded("persistent budget exceeded",
                                     step=step, used=n + len(stored), budget=M)
        elif act.kind == "restore":
            if v not in stored:
                raise ValueNotLive("restore needs a stored value", step=step, vertex=v)
            frame.add(v)
        elif act.kind == "free":
            if v not in stored:
                raise ValueNotLive("free needs a stored value", step=step, vertex=v)
            stored.remove(v)
        elif act.kind == "adjoin":
            if v not in non_sources:
                raise ValidationError("only non-source vertices are adjoined",
                                      step=step, vertex=v)
            if adjoined and adjoined[-1] <= v:
                raise ValidationError("adjoins must have strictly decreasing index",
                                      step=step, vertex=v, previous=adjoined[-1])
            missing = [u for u in preds[v] if not available(u)]
            if missing:
                raise ValueNotLive("adjoin needs all predecessors live",
                                   step=step, vertex=v, missing=missing)
            adjoined.append(v)
            frame.clear()

    if set(adjoined) != non_sources:
        raise IncompleteReversal("not every vertex was adjoined",
                                 missing=sorted(non_sources - set(adjoined)))
    if set(eval_count) != non_sources:
        raise IncompleteReversal("primal sweep incomplete",
                                 missing=sorted(non_sources - set(eval_count)))
    cost = sum(c - 1 for c in eval_count.values())
    return CostReport(peak, cost)


def store_all_schedule(g: LinearizedDag) -> ReversalSchedule:
    """One primal sweep storing every intermediate; adjoint with no recompute.

    Peak memory n + p (sink values are consumed, never checkpointed),
    computational cost 0.
    """
    acts: list[Action] = []
    z_hi = g.n + g.p
    for v in range(g.n, z_hi + g.m):
        acts.append(Action("evaluate", v))
        if v < z_hi:
            acts.append(Action("store", v))
    for v in range(z_hi + g.m - 1, g.n - 1, -1):
        acts.append(Action("adjoin", v))
    return ReversalSchedule(tuple(acts))


def _ancestor_closure(g: LinearizedDag, targets: Iterable[int]) -> list[int]:
    """Non-source vertices whose values feed the targets, in evaluation order."""
    out: set[int] = set()
    stack = [v for v in targets if v >= g.n]
    while stack:
        v = stack.pop()
        if v in out:
            continue
        out.add(v)
        stack.extend(u for u in g.predecessors(v) if u >= g.n)
    return sorted(out)


def recompute_all_schedule(g: LinearizedDag) -> ReversalSchedule:
    """Only the inputs persist; everything is recomputed per adjoint step.

    Memory stays at n.  On a chain with p intermediates the cost is
    p(p-1)/2: the top adjoint rides the primal sweep's frame for free,
    lower ones pay for ever-shorter re-sweeps.
    """
    acts: list[Action] = []
    top = g.n + g.p + g.m - 1
    for v in range(g.n, top + 1):
        acts.append(Action("evaluate", v))
    acts.append(Action("adjoin", top))
    for v in range(top - 1, g.n - 1, -1):
        for u in _ancestor_closure(g, g.predecessors(v)):
            acts.append(Action("evaluate", u))
        acts.append(Action("adjoin", v))
    return ReversalSchedule(tuple(acts))


@lru_cache(maxsize=None)
def _segment_cost(length: int, checkpoints: int) -> int:
    """Re-evaluations to reverse a fresh chain segment of ``length`` vertices.

    The segment sits on a persistent base value; its sweep is free (the
    cost of reaching it is charged by the caller).  With no checkpoints the
    frame-per-adjoin discipline forces (L-1)(L-2)/2 re-evaluations; with c
    checkpoints the first is placed after j steps, splitting the segment
    into a far part reversed with c-1 slots and a near part re-swept later
    (j-1 paid steps) with all c slots back.
    """
    if length <= 1:
        return 0
    if checkpoints == 0:
        return (length - 1) * (length - 2) // 2
    return min(
        (j - 1) + _segment_cost(j, checkpoints) + _segment_cost(length - j, checkpoints - 1)
        for j in range(1, length)
    )


def _segment_argmin(length: int, checkpoints: int) -> int:
    best_j, best = None, None
    for j in range(1, length):
        val = (j - 1) + _segment_cost(j, checkpoints) + _segment_cost(length - j, checkpoints - 1)
        if best is None or val < best:
            best, best_j = val, j
    return best_j


def chain_revolve_cost(p: int, c: int) -> int:
    """DP-optimal re-evaluation count for a chain of p intermediates, c slots."""
    if p < 0 or c < 0:
        raise ValidationError("p and c must be nonnegative", p=p, c=c)
    return _segment_cost(p + 1, c)


def chain_revolve(p: int, c: int) -> ReversalSchedule:
    """Checkpointed reversal of the p-intermediate chain with c slots.

    Emits a schedule whose simulated peak memory is at most n + c and whose
    re-evaluation count equals :func:`chain_revolve_cost`.
    """
    if p < 1 or c < 1:
        raise ValidationError("need p >= 1 and c >= 1", p=p, c=c)
    acts: list[Action] = []

    def emit(base: int, length: int, checkpoints: int, first_sweep: bool) -> None:
        # vertices base+1 .. base+length; the topmost is adjoined first
        if length == 0:
            return
        if length == 1:
            if first_sweep:
                acts.append(Action("evaluate", base + 1))
            acts.append(Action("adjoin", base + 1))
            return
        if checkpoints == 0:
            top = base + length
            if first_sweep:
                for v in range(base + 1, top + 1):
                    acts.append(Action("evaluate", v))
                acts.append(Action("adjoin", top))
            else:
                if base > 0:
                    acts.append(Action("restore", base))
                for v in range(base + 1, top):
                    acts.append(Action("evaluate", v))
                acts.append(Action("adjoin", top))
            for v in range(top - 1, base, -1):
                if base > 0:
                    acts.append(Action("restore", base))
                for u in range(base + 1, v):
                    acts.append(Action("evaluate", u))
                acts.append(Action("adjoin", v))
            return
        j = _segment_argmin(length, checkpoints)
        mark = base + j
        if not first_sweep and base > 0:
            acts.append(Action("restore", base))
        for v in range(base + 1, mark + 1):
            acts.append(Action("evaluate", v))
        acts.append(Action("store", mark))
        emit(mark, length - j, checkpoints - 1, first_sweep)
        acts.append(Action("free", mark))
        emit(base, j, checkpoints, False)

    emit(0, p + 1, c, True)
    return ReversalSchedule(tuple(acts))


def optimal_reversal_bruteforce(
    g: LinearizedDag, M: int, cap: int = 8
) -> tuple[ReversalSchedule, int]:
    """Minimum-cost feasible schedule by memoized search (p <= cap).

    The search space is schedules that begin with the program's single
    primal sweep (all non-sources evaluated once, in order, with optional
    checkpoint stores) followed by the adjoint phases.  For single-sink
    DAGs that loses no generality: every vertex feeds the sink, so the
    whole cone must be materialized before the first adjoin anyway.
    States between adjoins are explored by a Dijkstra over (stored, frame)
    pairs with evaluate = 1, store/free = 0.
    """
    if g.p > cap:
        raise InstanceTooLarge("too many intermediates for schedule search",
                               p=g.p, cap=cap)
    n = g.n
    if M < n:
        raise Infeasible("budget below the always-persistent inputs", M=M, n=n)
    slots = M - n
    non_sources = sorted(range(n, n + g.p + g.m))
    targets = list(reversed(non_sources))
    bit = {v: 1 << i for i, v in enumerate(non_sources)}
    pred_mask = {
        v: sum(bit[u] for u in g.predecessors(v) if u >= n) for v in non_sources
    }

    def members(mask: int) -> list[int]:
        return [v for v in non_sources if mask & bit[v]]

    # ancestor closure of everything still consumed at or after phase i
    useful_from: list[int] = [0] * (len(targets) + 1)
    for i in range(len(targets) - 1, -1, -1):
        mask = useful_from[i + 1] | pred_mask[targets[i]]
        grow = mask
        while grow:
            nxt = 0
            for v in members(grow):
                nxt |= pred_mask[v]
            grow = nxt & ~mask
            mask |= nxt
        useful_from[i] = mask

    sinks_lo = n + g.p

    @lru_cache(maxsize=None)
    def phase(idx: int, stored_mask: int) -> tuple[int, tuple]:
        """(cost, actions) to finish adjoints idx.. starting with empty frame."""
        if idx == len(targets):
            return 0, tuple(Action("free", v) for v in members(stored_mask))
        tgt = targets[idx]
        need = pred_mask[tgt]
        useful = useful_from[idx]
        # values no longer useful are freed up front (zero cost, frees budget)
        drop = tuple(Action("free", v) for v in members(stored_mask & ~useful))
        start = (stored_mask & useful, 0)
        dist = {start: 0}
        parent: dict[tuple, tuple] = {}
        heap = [(0, start)]
        best: tuple[int, tuple] | None = None
        while heap:
            d, state = heapq.heappop(heap)
            if dist.get(state) != d:
                continue
            st, fr = state
            avail = st | fr
            if need & ~avail == 0:
                tail_cost, tail_plan = phase(idx + 1, st)
                total = d + tail_cost
                if best is None or total < best[0]:
                    prefix: list[Action] = []
                    cur = state
                    while cur in parent:
                        cur, act = parent[cur]
                        prefix.append(act)
                    prefix.reverse()
                    best = (total,
                            tuple(prefix) + (Action("adjoin", tgt),) + tail_plan)
            for v in members(useful):
                b = bit[v]
                if not fr & b and pred_mask[v] & ~avail == 0:
                    nstate = (st, fr | b)
                    nd = d + 1
                    if nd < dist.get(nstate, nd + 1):
                        dist[nstate] = nd
                        parent[nstate] = (state, Action("evaluate", v))
                        heapq.heappush(heap, (nd, nstate))
                if fr & b and not st & b and bin(st).count("1") < slots:
                    nstate = (st | b, fr)
                    if d < dist.get(nstate, d + 1):
                        dist[nstate] = d
                        parent[nstate] = (state, Action("store", v))
                        heapq.heappush(heap, (d, nstate))
                if st & b:
                    nstate = (st & ~b, fr)
                    if d < dist.get(nstate, d + 1):
                        dist[nstate] = d
                        parent[nstate] = (state, Action("free", v))
                        heapq.heappush(heap, (d, nstate))
        assert best is not None  # recomputing from the inputs always succeeds
        return best[0], drop + best[1]

    # Primal sweep: all values pass through the frame, so any subset of
    # useful values (within budget) may be checkpointed for free before the
    # first adjoin consumes the frame.
    tgt0 = targets[0]
    candidates = [
        v for v in non_sources if v < sinks_lo and bit[v] & useful_from[1]
    ]
    best: tuple[int, tuple[int, ...]] | None = None
    for r in range(min(slots, len(candidates)) + 1):
        for chosen in combinations(candidates, r):
            st = sum(bit[v] for v in chosen)
            tail_cost, _ = phase(1, st)
            if best is None or tail_cost < best[0]:
                best = (tail_cost, chosen)
    assert best is not None
    cost, chosen = best
    store_set = set(chosen)
    acts: list[Action] = []
    for v in non_sources:
        acts.append(Action("evaluate", v))
        if v in store_set:
            acts.append(Action("store", v))
    acts.append(Action("adjoin", tgt0))
    acts.extend(phase(1, sum(bit[v] for v in chosen))[1])
    return ReversalSchedule(tuple(acts)), cost
