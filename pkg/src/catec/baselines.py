"""Majority vote and the chromatic ball-growing baselines.

Majority vote gives every node the category carrying the most incident edge
weight; it exactly minimizes the per-node (linear) mistake objective and is
an r-approximation for the edge objective.  The ball-growing baselines come
from chromatic correlation clustering: they grow monochromatic clusters
around random pivot edges and may split one category across many clusters,
so results are merged per category before comparison.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import WrongArity
from .hypergraph import (
    WILDCARD,
    Clustering,
    LabeledHypergraph,
    as_labels,
    clustering,
    mistake,
)


def majority_labels(h: LabeledHypergraph) -> np.ndarray:
    """Per-node majority category (1-based array).

    Ties break toward the smallest category id; nodes with no labeled edge
    get category 1.  Wildcard edges cast no vote.
    """
    votes = np.zeros((h.node_count, h.category_count))
    for e in h.edges:
        if e.label == WILDCARD:
            continue
        for v in e.nodes:
            votes[v, e.label - 1] += e.weight
    return np.argmax(votes, axis=1) + 1


def majority_vote(h: LabeledHypergraph) -> Clustering:
    return clustering(majority_labels(h))


@dataclass(frozen=True)
class ClusterFamily:
    """Disjoint monochromatic clusters; categories may repeat across clusters."""

    node_count: int
    clusters: tuple[tuple[frozenset[int], int], ...]

    def covers_all(self) -> bool:
        seen: set[int] = set()
        for nodes, _ in self.clusters:
            seen |= nodes
        return len(seen) == self.node_count


def merge_same_color(cf: ClusterFamily) -> Clustering:
    """Merge all clusters of one category into that category's cluster."""
    labels = np.zeros(cf.node_count, dtype=np.int64)
    for nodes, cat in cf.clusters:
        for v in nodes:
            labels[v] = cat
    if (labels == 0).any():
        raise ValueError("cluster family does not cover every node")
    return clustering(labels)


def family_objective(h: LabeledHypergraph, cf: ClusterFamily) -> float:
    """Mistake weight when clusters are kept separate: an edge is satisfied
    only if one cluster of the edge's category contains it entirely."""
    owner = np.full(h.node_count, -1)
    cat = np.zeros(h.node_count, dtype=np.int64)
    for i, (nodes, c) in enumerate(cf.clusters):
        for v in nodes:
            owner[v] = i
            cat[v] = c
    total = 0.0
    for e in h.edges:
        first = owner[e.nodes[0]]
        together = first >= 0 and all(owner[v] == first for v in e.nodes)
        if e.label == WILDCARD:
            ok = together
        else:
            ok = together and cat[e.nodes[0]] == e.label
        if not ok:
            total += e.weight
    return total


def _pair_adjacency(h: LabeledHypergraph):
    if any(e.size != 2 for e in h.edges):
        raise WrongArity("ball growing needs size-2 edges; reduce hypergraphs first")
    adj: dict[int, dict[int, set[int]]] = {v: {} for v in range(h.node_count)}
    for e in h.edges:
        if e.label == WILDCARD:
            continue
        i, j = e.nodes
        adj[i].setdefault(j, set()).add(e.label)
        adj[j].setdefault(i, set()).add(e.label)
    return adj


def _pivot_edges(h: LabeledHypergraph):
    return [e for e in h.edges if e.label != WILDCARD]


def _fill_singletons(h, clusters, clustered) -> ClusterFamily:
    fallback = majority_labels(h)
    for v in range(h.node_count):
        if not clustered[v]:
            clusters.append((frozenset([v]), int(fallback[v])))
    return ClusterFamily(h.node_count, tuple(clusters))


def chromatic_balls(h: LabeledHypergraph, rng: np.random.Generator) -> ClusterFamily:
    """Grow clusters around random pivot edges.

    A pivot edge (u, v) of category c seeds the cluster {u, v} plus every
    unclustered w adjacent to both u and v through edges of category c.
    Leftover nodes become singletons with their majority-vote label.
    """
    adj = _pair_adjacency(h)
    edges = _pivot_edges(h)
    clustered = np.zeros(h.node_count, dtype=bool)
    clusters: list[tuple[frozenset[int], int]] = []
    while True:
        open_edges = [
            e for e in edges if not clustered[e.nodes[0]] and not clustered[e.nodes[1]]
        ]
        if not open_edges:
            break
        pivot = open_edges[rng.integers(len(open_edges))]
        u, v = pivot.nodes
        c = pivot.label
        ball = {u, v}
        for w, labels in adj[u].items():
            if clustered[w] or w in ball or c not in labels:
                continue
            if c in adj[v].get(w, ()):
                ball.add(w)
        for w in ball:
            clustered[w] = True
        clusters.append((frozenset(ball), c))
    return _fill_singletons(h, clusters, clustered)


def lazy_chromatic_balls(
    h: LabeledHypergraph, rng: np.random.Generator
) -> ClusterFamily:
    """Ball growing with single-anchor admission, iterated to closure.

    After seeding with a pivot edge of category c, any unclustered node with
    a category-c edge to some current member joins, and newly added members
    keep recruiting until nothing changes.
    """
    adj = _pair_adjacency(h)
    edges = _pivot_edges(h)
    clustered = np.zeros(h.node_count, dtype=bool)
    clusters: list[tuple[frozenset[int], int]] = []
    while True:
        open_edges = [
            e for e in edges if not clustered[e.nodes[0]] and not clustered[e.nodes[1]]
        ]
        if not open_edges:
            break
        pivot = open_edges[rng.integers(len(open_edges))]
        c = pivot.label
        ball = set(pivot.nodes)
        frontier = list(pivot.nodes)
        while frontier:
            x = frontier.pop()
            for w, labels in adj[x].items():
                if clustered[w] or w in ball or c not in labels:
                    continue
                ball.add(w)
                frontier.append(w)
        for w in ball:
            clustered[w] = True
        clusters.append((frozenset(ball), c))
    return _fill_singletons(h, clusters, clustered)
