"""Evaluation quantities: satisfaction, label recovery scores, cut quality,
temporal dispersion, and the high-degree node filter."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import EmptyEdgeSet, LengthMismatch, NoInteriorEdges, WrongArity
from .hypergraph import (
    WILDCARD,
    Clustering,
    HyperEdge,
    LabeledHypergraph,
    as_labels,
    mistake,
    objective,
)


@dataclass
class EvalReport:
    """Bundle of whatever metrics a run produced; absent ones stay None."""

    objective: float
    edge_satisfaction: float
    lower_bound: float | None = None
    approx_ratio: float | None = None
    node_accuracy: float | None = None
    ari: float | None = None
    f_score: float | None = None
    ncut: float | None = None
    avg_time_diff: float | None = None

    def to_dict(self) -> dict:
        return {key: val for key, val in asdict(self).items() if val is not None}


def edge_satisfaction(h: LabeledHypergraph, y: Clustering | Sequence[int]) -> float:
    """Fraction of edge weight that is not mistaken, in [0, 1]."""
    total = h.total_weight()
    if total <= 0:
        raise EmptyEdgeSet("satisfaction undefined without edges")
    return (total - objective(h, y)) / total


def node_accuracy(y: Clustering | Sequence[int], truth: Clustering | Sequence[int]) -> float:
    a, b = as_labels(y), as_labels(truth)
    if len(a) != len(b):
        raise LengthMismatch(f"{len(a)} vs {len(b)} labels")
    return float(np.mean(np.asarray(a) == np.asarray(b)))


def _contingency(y, truth) -> tuple[np.ndarray, int]:
    a, b = np.asarray(as_labels(y)), np.asarray(as_labels(truth))
    if a.shape != b.shape:
        raise LengthMismatch(f"{a.shape} vs {b.shape}")
    _, ai = np.unique(a, return_inverse=True)
    _, bi = np.unique(b, return_inverse=True)
    table = np.zeros((ai.max() + 1, bi.max() + 1), dtype=np.int64)
    np.add.at(table, (ai, bi), 1)
    return table, a.size


def _comb2(x) -> int:
    return int(np.sum(x * (x - 1) // 2))


def ari(y: Clustering | Sequence[int], truth: Clustering | Sequence[int]) -> float:
    """Adjusted Rand index from the pair-counting contingency table.

    Exact rational arithmetic; degenerate identical partitions score 1.
    """
    table, n = _contingency(y, truth)
    index = _comb2(table)
    rows = _comb2(table.sum(axis=1))
    cols = _comb2(table.sum(axis=0))
    total = n * (n - 1) // 2
    if total == 0:
        return 1.0
    expected = Fraction(rows * cols, total)
    max_index = Fraction(rows + cols, 2)
    if max_index == expected:
        return 1.0
    return float((index - expected) / (max_index - expected))


def pairwise_f_score(
    y: Clustering | Sequence[int], truth: Clustering | Sequence[int]
) -> float:
    """Harmonic mean of precision/recall over same-cluster node pairs."""
    table, _ = _contingency(y, truth)
    tp = _comb2(table)
    pred_pairs = _comb2(table.sum(axis=1))
    true_pairs = _comb2(table.sum(axis=0))
    if pred_pairs == 0 and true_pairs == 0:
        return 1.0
    if tp == 0:
        return 0.0
    precision = tp / pred_pairs
    recall = tp / true_pairs
    return 2 * precision * recall / (precision + recall)


def normalized_cut(h: LabeledHypergraph, y: Clustering | Sequence[int]) -> float:
    """Sum over clusters of cut weight divided by endpoint volume.

    Topology-only: edge labels are ignored.  Weighted edges generalize the
    unit-weight edge/endpoint counts.
    """
    if any(e.size != 2 for e in h.edges):
        raise WrongArity("normalized cut is defined on size-2 edges")
    labels = as_labels(y)
    cut: dict[int, float] = {}
    vol: dict[int, float] = {}
    for e in h.edges:
        i, j = e.nodes
        vol[labels[i]] = vol.get(labels[i], 0.0) + e.weight
        vol[labels[j]] = vol.get(labels[j], 0.0) + e.weight
        if labels[i] != labels[j]:
            cut[labels[i]] = cut.get(labels[i], 0.0) + e.weight
            cut[labels[j]] = cut.get(labels[j], 0.0) + e.weight
    return float(sum(cut.get(c, 0.0) / v for c, v in vol.items() if v > 0))


def avg_time_diff(temporal_edges, y: Clustering | Sequence[int]) -> float:
    """Mean absolute deviation of interior-edge timestamps from their
    cluster's mean timestamp; interior means all endpoints share a cluster."""
    labels = as_labels(y)
    per_cluster: dict[int, list[float]] = {}
    for te in temporal_edges:
        first = labels[te.nodes[0]]
        if all(labels[v] == first for v in te.nodes[1:]):
            per_cluster.setdefault(first, []).append(te.timestamp)
    count = sum(len(ts) for ts in per_cluster.values())
    if count == 0:
        raise NoInteriorEdges("no edge lies inside a single cluster")
    dev = 0.0
    for ts in per_cluster.values():
        mu = sum(ts) / len(ts)
        dev += sum(abs(t - mu) for t in ts)
    return dev / count


def mistake_floor(h: LabeledHypergraph) -> np.ndarray:
    """Per-node guaranteed mistake weight: total incident labeled weight
    minus the best single category's share."""
    d = np.zeros((h.node_count, h.category_count))
    for e in h.edges:
        if e.label == WILDCARD:
            continue
        for v in e.nodes:
            d[v, e.label - 1] += e.weight
    return d.sum(axis=1) - d.max(axis=1)


def degree_filter(
    h: LabeledHypergraph, beta: float
) -> tuple[LabeledHypergraph, frozenset[int]]:
    """Drop nodes whose guaranteed mistake weight exceeds ``beta`` along with
    every incident hyperedge; survivors are re-indexed densely."""
    if beta < 0:
        raise ValueError("beta must be nonnegative")
    floor = mistake_floor(h)
    removed = frozenset(int(v) for v in np.flatnonzero(floor > beta))
    if not removed:
        return h, removed
    kept = [v for v in range(h.node_count) if v not in removed]
    remap = {old: new for new, old in enumerate(kept)}
    edges = []
    for e in h.edges:
        if all(v in remap for v in e.nodes):
            edges.append(HyperEdge(tuple(remap[v] for v in e.nodes), e.label, e.weight))
    names = (
        tuple(h.node_names[v] for v in kept) if h.node_names is not None else None
    )
    return (
        LabeledHypergraph(len(kept), h.category_count, tuple(edges), names),
        removed,
    )


def unused_nodes(h: LabeledHypergraph, y: Clustering | Sequence[int]) -> int:
    """Nodes contained in no satisfied edge (isolated nodes count)."""
    labels = as_labels(y)
    used = np.zeros(h.node_count, dtype=bool)
    for e in h.edges:
        if mistake(e, labels) == 0:
            for v in e.nodes:
                used[v] = True
    return int(h.node_count - used.sum())
