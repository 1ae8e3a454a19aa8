"""Exact max-flow / min-cut on small networks with rational capacities.

Capacities are scaled to integers by the lcm of their denominators, so the
Dinic search below never sees a fraction and never rounds.
"""
from __future__ import annotations

from collections import deque
from fractions import Fraction
from math import lcm

INF = None  # marker for an uncapacitated arc


class FlowNetwork:
    def __init__(self, n: int):
        self.n = n
        self.arcs = []  # (tail, head, capacity or INF)

    def add_arc(self, a: int, b: int, cap) -> None:
        if cap is INF or cap > 0:
            self.arcs.append((a, b, cap))

    def add_edge(self, a: int, b: int, cap) -> None:
        """Undirected edge: the same capacity in both directions."""
        self.add_arc(a, b, cap)
        self.add_arc(b, a, cap)

    def min_cut(self, s: int, t: int) -> tuple:
        """Return ``(value, source_side)`` of a minimum s-t cut.

        ``source_side`` is the set of nodes reachable from ``s`` in the final
        residual network, i.e. the inclusion-minimal minimum cut.
        """
        finite = [Fraction(c) for _, _, c in self.arcs if c is not INF]
        scale = lcm(*(c.denominator for c in finite)) if finite else 1
        big = sum(int(c * scale) for c in finite) + 1
        n = self.n
        head, cap, adj = [], [], [[] for _ in range(n)]
        for a, b, c in self.arcs:
            ic = big if c is INF else int(Fraction(c) * scale)
            adj[a].append(len(head)); head.append(b); cap.append(ic)
            adj[b].append(len(head)); head.append(a); cap.append(0)
        flow = 0
        while True:
            level = [-1] * n
            level[s] = 0
            q = deque([s])
            while q:
                a = q.popleft()
                for k in adj[a]:
                    if cap[k] > 0 and level[head[k]] < 0:
                        level[head[k]] = level[a] + 1
                        q.append(head[k])
            if level[t] < 0:
                break
            it = [0] * n

            def push(a, limit):
                if a == t:
                    return limit
                while it[a] < len(adj[a]):
                    k = adj[a][it[a]]
                    b = head[k]
                    if cap[k] > 0 and level[b] == level[a] + 1:
                        got = push(b, min(limit, cap[k]))
                        if got:
                            cap[k] -= got
                            cap[k ^ 1] += got
                            return got
                    it[a] += 1
                return 0

            while True:
                f = push(s, big)
                if not f:
                    break
                flow += f
        if flow >= big:
            raise ValueError("minimum cut uses an uncapacitated arc")
        side = {s}
        q = deque([s])
        while q:
            a = q.popleft()
            for k in adj[a]:
                if cap[k] > 0 and head[k] not in side:
                    side.add(head[k])
                    q.append(head[k])
        return Fraction(flow, scale), side


def min_edge_cut(g, weights=None) -> tuple:
    """Global minimum cut of a connected multigraph: ``(value, S)``.

    Unit weights by default. Uses ``n - 1`` s-t cuts from vertex 0.
    """
    if g.n < 2:
        raise ValueError("global cut needs at least two vertices")
    best = None
    for t in range(1, g.n):
        net = FlowNetwork(g.n)
        for e in g.edges:
            net.add_edge(e.u, e.v, 1 if weights is None else weights[e.id])
        val, side = net.min_cut(0, t)
        if best is None or val < best[0]:
            best = (val, frozenset(side))
    return best
