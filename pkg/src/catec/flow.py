"""Exact maximum-flow / minimum s-t cut on directed capacitated networks.

Capacities are converted to exact rationals (every finite float is one), put
over a common denominator, and the flow is computed with unbounded Python
integers, so results are exact for any rational input.  The algorithm is
Dinic's: BFS level graphs plus blocking flows, deterministic in the arc
insertion order.  The reported source side is the set of nodes reachable from
the source in the final residual graph, which is the unique minimal minimum
cut and therefore independent of capacity rescaling.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Iterable

from .errors import InvalidNetwork

Capacity = int | float | Fraction


@dataclass
class FlowNetwork:
    """Directed network; parallel arcs are allowed and act additively."""

    node_count: int
    arcs: list[tuple[int, int, Capacity]] = field(default_factory=list)
    source: int = 0
    sink: int = 1

    def add_arc(self, tail: int, head: int, capacity: Capacity) -> None:
        self.arcs.append((tail, head, capacity))

    def add_undirected(self, a: int, b: int, capacity: Capacity) -> None:
        """Model an undirected edge as a pair of opposite arcs."""
        self.arcs.append((a, b, capacity))
        self.arcs.append((b, a, capacity))


@dataclass(frozen=True)
class MinCutResult:
    """Cut value, canonical minimal source side, and the certifying flow
    (one value per input arc, in arc order)."""

    value: Fraction
    source_side: frozenset[int]
    flow: tuple[Fraction, ...]


def _check(net: FlowNetwork) -> None:
    n = net.node_count
    if not (0 <= net.source < n and 0 <= net.sink < n):
        raise InvalidNetwork("source/sink out of range")
    if net.source == net.sink:
        raise InvalidNetwork("source equals sink")
    for tail, head, cap in net.arcs:
        if not (0 <= tail < n and 0 <= head < n):
            raise InvalidNetwork(f"arc ({tail},{head}) out of range")
        if isinstance(cap, float) and not math.isfinite(cap):
            raise InvalidNetwork("capacity not finite")
        if cap < 0:
            raise InvalidNetwork("negative capacity")


def _scaled_capacities(arcs) -> tuple[list[int], int]:
    """Exact common-denominator integer capacities and the scale factor."""
    fracs = [Fraction(cap) for _, _, cap in arcs]
    scale = 1
    for f in fracs:
        scale = scale * f.denominator // math.gcd(scale, f.denominator)
    return [int(f * scale) for f in fracs], scale


class _Dinic:
    def __init__(self, n: int):
        self.n = n
        self.to: list[int] = []
        self.cap: list[int] = []
        self.adj: list[list[int]] = [[] for _ in range(n)]

    def add(self, u: int, v: int, c: int) -> None:
        self.adj[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(c)
        self.adj[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)

    def _levels(self, s: int, t: int) -> list[int] | None:
        level = [-1] * self.n
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for a in self.adj[u]:
                v = self.to[a]
                if self.cap[a] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level if level[t] >= 0 else None

    def _blocking_flow(self, s: int, t: int, level: list[int]) -> int:
        # Iterative DFS with per-node arc pointers; pushed holds path flow.
        ptr = [0] * self.n
        total = 0
        while True:
            path: list[int] = []  # arc ids along current path
            u = s
            while u != t:
                advanced = False
                while ptr[u] < len(self.adj[u]):
                    a = self.adj[u][ptr[u]]
                    v = self.to[a]
                    if self.cap[a] > 0 and level[v] == level[u] + 1:
                        path.append(a)
                        u = v
                        advanced = True
                        break
                    ptr[u] += 1
                if not advanced:
                    if u == s:
                        return total
                    # dead end: retreat and exhaust the arc that led here
                    a = path.pop()
                    u = self.to[a ^ 1]
                    ptr[u] += 1
            bottleneck = min(self.cap[a] for a in path)
            for a in path:
                self.cap[a] -= bottleneck
                self.cap[a ^ 1] += bottleneck
            total += bottleneck
            # loop restarts from the source; pointers keep skipping
            # arcs that were exhausted along the way

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        while True:
            level = self._levels(s, t)
            if level is None:
                return flow
            flow += self._blocking_flow(s, t, level)

    def residual_reachable(self, s: int) -> frozenset[int]:
        seen = [False] * self.n
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for a in self.adj[u]:
                v = self.to[a]
                if self.cap[a] > 0 and not seen[v]:
                    seen[v] = True
                    queue.append(v)
        return frozenset(i for i, x in enumerate(seen) if x)


def min_cut(net: FlowNetwork) -> MinCutResult:
    """Exact min s-t cut value and the canonical minimal source side."""
    _check(net)
    caps, scale = _scaled_capacities(net.arcs)
    solver = _Dinic(net.node_count)
    for (tail, head, _), c in zip(net.arcs, caps):
        solver.add(tail, head, c)
    flow = solver.max_flow(net.source, net.sink)
    side = solver.residual_reachable(net.source)
    per_arc = tuple(
        Fraction(cap - solver.cap[2 * i], scale) for i, cap in enumerate(caps)
    )
    return MinCutResult(Fraction(flow, scale), side, per_arc)


def cut_value(net: FlowNetwork, source_side: Iterable[int]) -> Fraction:
    """Total capacity of arcs leaving ``source_side`` (exact)."""
    inside = set(source_side)
    total = Fraction(0)
    for tail, head, cap in net.arcs:
        if tail in inside and head not in inside:
            total += Fraction(cap)
    return total


def write_dimacs(net: FlowNetwork, fh: IO[str]) -> None:
    """Emit DIMACS max-flow text for cross-checking with external solvers.

    Capacities are written as the exact scaled integers; the scale factor is
    recorded in a comment so values can be mapped back.
    """
    caps, scale = _scaled_capacities(net.arcs)
    fh.write(f"c capacities scaled by {scale}\n")
    fh.write(f"p max {net.node_count} {len(net.arcs)}\n")
    fh.write(f"n {net.source + 1} s\n")
    fh.write(f"n {net.sink + 1} t\n")
    for (tail, head, _), c in zip(net.arcs, caps):
        fh.write(f"a {tail + 1} {head + 1} {c}\n")
