"""Problem instances, the mistake objective, and the brute-force oracle.

An instance is an edge-labeled (hyper)graph: ``n`` nodes, ``k`` categories
(1-based ids), and weighted hyperedges that each carry one category label or
the wildcard label 0.  A clustering assigns every node one category.  The
objective charges an edge its full weight as soon as any of its nodes sits
outside the cluster of the edge's label; a wildcard edge is charged unless it
is monochromatic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import InstanceTooLarge

#: Number of candidate clusterings the exhaustive optimizer will enumerate.
BRUTE_FORCE_GUARD = 10**7

WILDCARD = 0


@dataclass(frozen=True)
class HyperEdge:
    """One hyperedge: sorted distinct node indices, a label, a positive weight.

    ``label`` is a category id in [1, k], or 0 for a wildcard edge that only
    asks its nodes to end up together.
    """

    nodes: tuple[int, ...]
    label: int
    weight: float = 1.0

    @property
    def size(self) -> int:
        return len(self.nodes)


def edge(nodes: Iterable[int], label: int, weight: float = 1.0) -> HyperEdge:
    """Build a HyperEdge with nodes sorted; the preferred constructor."""
    return HyperEdge(tuple(sorted(nodes)), label, weight)


@dataclass(frozen=True)
class LabeledHypergraph:
    """Immutable problem instance.

    ``node_names`` is an optional bijection index -> external string id kept
    for instances parsed from files; algorithms only see dense indices.
    """

    node_count: int
    category_count: int
    edges: tuple[HyperEdge, ...]
    node_names: tuple[str, ...] | None = None
    max_edge_size: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        r = max((e.size for e in self.edges), default=2)
        object.__setattr__(self, "max_edge_size", max(r, 2))

    @property
    def n(self) -> int:
        return self.node_count

    @property
    def k(self) -> int:
        return self.category_count

    @property
    def r(self) -> int:
        return self.max_edge_size

    def total_weight(self) -> float:
        return float(sum(e.weight for e in self.edges))

    def has_wildcards(self) -> bool:
        return any(e.label == WILDCARD for e in self.edges)

    def name_of(self, v: int) -> str:
        return self.node_names[v] if self.node_names is not None else str(v)


@dataclass(frozen=True)
class Clustering:
    """Assignment of every node to one category id in [1, k]."""

    labels: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.labels)

    def __getitem__(self, v: int) -> int:
        return self.labels[v]


def clustering(labels: Iterable[int]) -> Clustering:
    return Clustering(tuple(int(x) for x in labels))


def as_labels(y: Clustering | Sequence[int]) -> Sequence[int]:
    return y.labels if isinstance(y, Clustering) else y


def validate(h: LabeledHypergraph) -> list[str]:
    """Report all invariant violations of an instance; empty list iff valid."""
    issues: list[str] = []
    if h.node_count < 1:
        issues.append("node count must be positive")
    if h.category_count < 1:
        issues.append("category count must be positive")
    for idx, e in enumerate(h.edges):
        where = f"edge {idx}"
        if len(e.nodes) < 2:
            issues.append(f"{where}: fewer than 2 nodes")
        if list(e.nodes) != sorted(set(e.nodes)):
            issues.append(f"{where}: nodes not sorted-distinct")
        if any(v < 0 or v >= h.node_count for v in e.nodes):
            issues.append(f"{where}: node out of range")
        if not (e.label == WILDCARD or 1 <= e.label <= h.category_count):
            issues.append(f"{where}: label out of range")
        if not (math.isfinite(e.weight) and e.weight > 0):
            issues.append(f"{where}: weight not finite-positive")
    if h.node_names is not None:
        if len(h.node_names) != h.node_count:
            issues.append("node_names length differs from node count")
        elif len(set(h.node_names)) != h.node_count:
            issues.append("node_names not a bijection")
    return issues


def mistake(e: HyperEdge, y: Clustering | Sequence[int]) -> float:
    """Weight charged to edge ``e`` under clustering ``y`` (0 or ``e.weight``).

    A labeled edge is charged unless every node carries the edge's label; a
    wildcard edge is charged unless its nodes are monochromatic.
    """
    labels = as_labels(y)
    if e.label == WILDCARD:
        first = labels[e.nodes[0]]
        ok = all(labels[v] == first for v in e.nodes[1:])
    else:
        ok = all(labels[v] == e.label for v in e.nodes)
    return 0.0 if ok else e.weight


def objective(h: LabeledHypergraph, y: Clustering | Sequence[int]) -> float:
    """Total weight of mistaken edges."""
    labels = as_labels(y)
    return float(sum(mistake(e, labels) for e in h.edges))


def linear_objective(h: LabeledHypergraph, y: Clustering | Sequence[int]) -> float:
    """Per-node mistake total: each edge pays weight times its stray nodes.

    Wildcard edges carry no category and are skipped.
    """
    labels = as_labels(y)
    total = 0.0
    for e in h.edges:
        if e.label == WILDCARD:
            continue
        strays = sum(1 for v in e.nodes if labels[v] != e.label)
        total += e.weight * strays
    return float(total)


def _assignment_chunk(n: int, k: int, start: int, stop: int) -> np.ndarray:
    """Rows ``start..stop`` of the lexicographic enumeration of [1,k]^n.

    Node 0 is the most significant digit, so row order is the lexicographic
    order on label tuples.
    """
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((stop - start, n), dtype=np.int16)
    for j in range(n - 1, -1, -1):
        out[:, j] = idx % k + 1
        idx //= k
    return out


def _chunk_costs(h: LabeledHypergraph, chunk: np.ndarray, linear: bool) -> np.ndarray:
    costs = np.zeros(chunk.shape[0])
    for e in h.edges:
        cols = chunk[:, list(e.nodes)]
        if e.label == WILDCARD:
            if linear:
                continue
            bad = (cols != cols[:, :1]).any(axis=1)
            costs += e.weight * bad
        elif linear:
            costs += e.weight * (cols != e.label).sum(axis=1)
        else:
            costs += e.weight * (cols != e.label).any(axis=1)
    return costs


def brute_force_optimum(
    h: LabeledHypergraph, kind: str = "edge"
) -> tuple[Clustering, float]:
    """Exhaustively minimize the objective; ``kind`` is "edge" or "linear".

    Enumerates all k^n clusterings (guarded at 10^7) and returns the
    lexicographically smallest minimizer together with its value.
    """
    if kind not in ("edge", "linear"):
        raise ValueError(f"unknown objective kind {kind!r}")
    n, k = h.node_count, h.category_count
    total = k**n
    if total > BRUTE_FORCE_GUARD:
        raise InstanceTooLarge(f"{k}^{n} = {total} exceeds {BRUTE_FORCE_GUARD}")
    best_val = math.inf
    best_row: np.ndarray | None = None
    chunk_size = 1 << 17
    for start in range(0, total, chunk_size):
        stop = min(start + chunk_size, total)
        chunk = _assignment_chunk(n, k, start, stop)
        costs = _chunk_costs(h, chunk, linear=(kind == "linear"))
        pos = int(np.argmin(costs))
        if costs[pos] < best_val:
            best_val = float(costs[pos])
            best_row = chunk[pos].copy()
    assert best_row is not None
    return clustering(best_row), best_val


def reduce_to_labeled_graph(h: LabeledHypergraph) -> LabeledHypergraph:
    """Collapse a hypergraph to a labeled graph by pairwise majority.

    Each co-occurring node pair gets an edge labeled with the strict-majority
    category of their shared hyperedges (by weight; equal to counts at unit
    weight); ties drop the pair.  Inputs that are already graphs are returned
    unchanged.  Wildcard hyperedges cast no category vote.
    """
    if all(e.size == 2 for e in h.edges):
        return h
    votes: dict[tuple[int, int], dict[int, float]] = {}
    for e in h.edges:
        if e.label == WILDCARD:
            continue
        for a in range(len(e.nodes)):
            for b in range(a + 1, len(e.nodes)):
                pair = (e.nodes[a], e.nodes[b])
                votes.setdefault(pair, {}).setdefault(e.label, 0.0)
                votes[pair][e.label] += e.weight
    out = []
    for pair in sorted(votes):
        tally = votes[pair]
        top = max(tally.values())
        winners = [c for c, v in tally.items() if v == top]
        if len(winners) == 1:
            out.append(HyperEdge(pair, winners[0], 1.0))
    return LabeledHypergraph(h.node_count, h.category_count, tuple(out), h.node_names)
