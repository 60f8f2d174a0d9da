"""Dinic max-flow over exact capacities.

Capacities may be ints or :class:`fractions.Fraction`; the algorithm only
adds, subtracts, and compares them, so rational inputs give exact min-cut
values.
"""

from __future__ import annotations

from collections import deque


class FlowNetwork:
    def __init__(self, node_count: int):
        self.n = node_count
        self.head: list[list[int]] = [[] for _ in range(node_count)]
        self.to: list[int] = []
        self.cap: list = []

    def add_node(self) -> int:
        self.head.append([])
        self.n += 1
        return self.n - 1

    def add_arc(self, u: int, v: int, capacity) -> None:
        if capacity < 0:
            raise ValueError("capacity must be nonnegative")
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(capacity)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(capacity * 0)  # zero of the same numeric type

    def max_flow(self, s: int, t: int):
        total = 0
        while True:
            level = self._bfs(s, t)
            if level is None:
                return total
            it = [0] * self.n
            while True:
                pushed = self._dfs(s, t, None, level, it)
                if pushed is None:
                    break
                total = total + pushed

    def _bfs(self, s: int, t: int):
        level = [-1] * self.n
        level[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for eid in self.head[u]:
                v = self.to[eid]
                if self.cap[eid] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    q.append(v)
        return level if level[t] >= 0 else None

    def _dfs(self, u: int, t: int, limit, level, it):
        if u == t:
            return limit
        while it[u] < len(self.head[u]):
            eid = self.head[u][it[u]]
            v = self.to[eid]
            if self.cap[eid] > 0 and level[v] == level[u] + 1:
                cap_here = self.cap[eid] if limit is None else min(limit, self.cap[eid])
                pushed = self._dfs(v, t, cap_here, level, it)
                if pushed is not None and pushed > 0:
                    self.cap[eid] -= pushed
                    self.cap[eid ^ 1] += pushed
                    return pushed
            it[u] += 1
        return None

    def residual_reachable(self, s: int) -> set[int]:
        """Source side of the min cut after :meth:`max_flow` has run."""
        seen = {s}
        q = deque([s])
        while q:
            u = q.popleft()
            for eid in self.head[u]:
                v = self.to[eid]
                if self.cap[eid] > 0 and v not in seen:
                    seen.add(v)
                    q.append(v)
        return seen
