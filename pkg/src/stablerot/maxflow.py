"""Dinic's blocking-flow max-flow on exact (int or Fraction) capacities."""

from __future__ import annotations

from collections import deque
from typing import Hashable, List


class FlowNetwork:
    def __init__(self):
        self._id = {}
        self.nodes: List[Hashable] = []
        self.head: List[List[int]] = []
        # arc k and its reverse k ^ 1 live side by side
        self.to: List[int] = []
        self.cap: list = []
        self.original: list = []

    def node(self, v) -> int:
        if v not in self._id:
            self._id[v] = len(self.nodes)
            self.nodes.append(v)
            self.head.append([])
        return self._id[v]

    def add_arc(self, u, v, cap) -> int:
        a, b = self.node(u), self.node(v)
        k = len(self.to)
        self.to += [b, a]
        self.cap += [cap, 0]
        self.original += [cap, 0]
        self.head[a].append(k)
        self.head[b].append(k + 1)
        return k

    def arcs(self):
        """``(u, v, capacity)`` for every forward arc."""
        for k in range(0, len(self.to), 2):
            yield self.nodes[self.to[k + 1]], self.nodes[self.to[k]], self.original[k]

    def _levels(self, s, t):
        level = [-1] * len(self.nodes)
        level[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for k in self.head[u]:
                if self.cap[k] > 0 and level[self.to[k]] < 0:
                    level[self.to[k]] = level[u] + 1
                    q.append(self.to[k])
        return level if level[t] >= 0 else None

    def _push(self, u, t, limit, level, it):
        if u == t:
            return limit
        while it[u] < len(self.head[u]):
            k = self.head[u][it[u]]
            v = self.to[k]
            if self.cap[k] > 0 and level[v] == level[u] + 1:
                got = self._push(v, t, min(limit, self.cap[k]), level, it)
                if got > 0:
                    self.cap[k] -= got
                    self.cap[k ^ 1] += got
                    return got
            it[u] += 1
        return 0

    def max_flow(self, source, sink):
        s, t = self.node(source), self.node(sink)
        total = 0
        while True:
            level = self._levels(s, t)
            if level is None:
                return total
            it = [0] * len(self.nodes)
            bound = sum(self.cap[k] for k in self.head[s])
            while True:
                f = self._push(s, t, bound, level, it)
                if f <= 0:
                    break
                total += f

    def reaches(self, target) -> set:
        """Nodes with a residual path to ``target``."""
        t = self.node(target)
        seen = {t}
        q = deque([t])
        while q:
            v = q.popleft()
            for k in self.head[v]:
                # k ^ 1 is an arc u -> v; it is usable when it has residual capacity
                u = self.to[k]
                if u not in seen and self.cap[k ^ 1] > 0:
                    seen.add(u)
                    q.append(u)
        return {self.nodes[i] for i in seen}

    def reachable_from(self, source) -> set:
        s = self.node(source)
        seen = {s}
        q = deque([s])
        while q:
            u = q.popleft()
            for k in self.head[u]:
                v = self.to[k]
                if v not in seen and self.cap[k] > 0:
                    seen.add(v)
                    q.append(v)
        return {self.nodes[i] for i in seen}
