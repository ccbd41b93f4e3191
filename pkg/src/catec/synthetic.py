"""Synthetic chromatic graph/hypergraph models and timestamp binning.

The planted model assigns nodes to clusters uniformly at random and clusters
to colors uniformly at random; within-cluster node tuples become edges with
probability p (true color with probability 1-w, else uniform), tuples across
clusters with probability q (uniform color).  Uniform redraws include the
true color, so the effective miscolor rate of an intra-cluster edge is
w * (1 - 1/L).  The r-uniform variant assigns each cluster a unique color and
requires K = L.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import FewerEdgesThanBins, TooManyTuples
from .hypergraph import HyperEdge, LabeledHypergraph

#: Candidate-tuple count beyond which hypergraph generation samples edges
#: instead of enumerating tuples (distributionally identical).
TUPLE_BUDGET = 10**8
#: Enumeration is also skipped above this count to keep Python loops sane.
_ENUM_CAP = 2_000_000
#: Hard cap on edges a single generation call may materialize.
_EDGE_CAP = 5_000_000


@dataclass(frozen=True)
class ChromaticModelParams:
    """n nodes, at most L colors and K clusters, edge probabilities p (intra)
    and q (inter), label-noise probability w, uniform edge size r."""

    n: int
    L: int
    K: int
    p: float
    q: float
    w: float
    r: int = 2

    def __post_init__(self):
        if not (1 <= self.K and 1 <= self.L):
            raise ValueError("L and K must be at least 1")
        for name in ("p", "q", "w"):
            val = getattr(self, name)
            if not 0.0 <= val <= 1.0:
                raise ValueError(f"{name} must be a probability")
        if self.r < 2:
            raise ValueError("edge size must be at least 2")


@dataclass(frozen=True)
class GroundTruth:
    """Planted structure: raw cluster per node, dense color per cluster
    (0 marks clusters that drew no node), and the raw-to-dense color map."""

    node_clusters: tuple[int, ...]
    cluster_colors: tuple[int, ...]
    color_map: dict[int, int]

    def node_colors(self) -> tuple[int, ...]:
        return tuple(self.cluster_colors[c] for c in self.node_clusters)


class TemporalEdge(NamedTuple):
    timestamp: float
    nodes: tuple[int, ...]


def _densify(
    raw_edges: list[tuple[tuple[int, ...], int]],
    clusters: np.ndarray,
    raw_cluster_colors: np.ndarray,
    n: int,
    names=None,
) -> tuple[LabeledHypergraph, GroundTruth]:
    """Re-index colors densely over everything present (edge labels plus the
    colors of nonempty clusters) so truth labels live in the instance's
    category space."""
    nonempty = np.unique(clusters)
    used = sorted(
        {label for _, label in raw_edges}
        | {int(raw_cluster_colors[c]) for c in nonempty}
    )
    color_map = {raw: dense for dense, raw in enumerate(used, start=1)}
    edges = tuple(
        HyperEdge(nodes, color_map[label], 1.0) for nodes, label in raw_edges
    )
    h = LabeledHypergraph(n, len(used), edges, names)
    cluster_colors = tuple(
        color_map[int(raw_cluster_colors[c])] if c in set(nonempty.tolist()) else 0
        for c in range(len(raw_cluster_colors))
    )
    truth = GroundTruth(tuple(int(c) for c in clusters), cluster_colors, color_map)
    return h, truth


def gen_chromatic_graph(
    params: ChromaticModelParams, rng: np.random.Generator
) -> tuple[LabeledHypergraph, GroundTruth]:
    """Planted chromatic graph; clusters may share colors."""
    if params.r != 2:
        raise ValueError("graph model needs r = 2; use gen_chromatic_hypergraph")
    n, big_l, big_k = params.n, params.L, params.K
    clusters = rng.integers(0, big_k, n)
    raw_colors = rng.integers(1, big_l + 1, big_k)
    iu, ju = np.triu_indices(n, 1)
    same = clusters[iu] == clusters[ju]
    present = rng.random(iu.size) < np.where(same, params.p, params.q)
    noisy = rng.random(iu.size) < params.w
    uniform = rng.integers(1, big_l + 1, iu.size)
    labels = np.where(same & ~noisy, raw_colors[clusters[iu]], uniform)
    raw_edges = [
        ((int(iu[t]), int(ju[t])), int(labels[t]))
        for t in np.flatnonzero(present)
    ]
    return _densify(raw_edges, clusters, raw_colors, n)


def _sample_distinct_tuples(
    rng: np.random.Generator,
    pool: np.ndarray,
    r: int,
    count: int,
    reject,
) -> list[tuple[int, ...]]:
    picked: set[tuple[int, ...]] = set()
    attempts = 0
    limit = 100 * count + 1000
    while len(picked) < count:
        attempts += 1
        if attempts > limit:
            raise RuntimeError("tuple rejection sampling stalled")
        tup = tuple(sorted(int(x) for x in rng.choice(pool, size=r, replace=False)))
        if tup in picked or reject(tup):
            continue
        picked.add(tup)
    return sorted(picked)


def gen_chromatic_hypergraph(
    params: ChromaticModelParams, rng: np.random.Generator
) -> tuple[LabeledHypergraph, GroundTruth]:
    """r-uniform planted model with one unique color per cluster (K = L).

    Small tuple spaces are enumerated with per-tuple coin flips; large ones
    draw a binomial edge count and sample distinct tuples uniformly, which is
    the same distribution.
    """
    if params.K != params.L:
        raise ValueError("hypergraph model assigns unique colors: needs K = L")
    n, r, big_k = params.n, params.r, params.K
    clusters = rng.integers(0, big_k, n)
    raw_colors = rng.permutation(big_k) + 1
    members = [np.flatnonzero(clusters == c) for c in range(big_k)]

    raw_edges: list[tuple[tuple[int, ...], int]] = []

    def label_for(cluster: int, noisy: bool, uniform_color: int) -> int:
        return uniform_color if noisy else int(raw_colors[cluster])

    # within-cluster tuples
    for c in range(big_k):
        mem = members[c]
        space = math.comb(len(mem), r)
        if space == 0:
            continue
        if space <= min(TUPLE_BUDGET, _ENUM_CAP):
            combos = itertools.combinations(mem.tolist(), r)
            keep = rng.random(space) < params.p
            noisy = rng.random(space) < params.w
            uniform = rng.integers(1, big_k + 1, space)
            for t, tup in enumerate(combos):
                if keep[t]:
                    raw_edges.append(
                        (tuple(tup), label_for(c, bool(noisy[t]), int(uniform[t])))
                    )
        else:
            count = int(rng.binomial(space, params.p))
            if count > _EDGE_CAP:
                raise TooManyTuples(f"{count} intra-cluster edges requested")
            tuples = _sample_distinct_tuples(rng, mem, r, count, lambda tup: False)
            noisy = rng.random(count) < params.w
            uniform = rng.integers(1, big_k + 1, count)
            for t, tup in enumerate(tuples):
                raw_edges.append(
                    (tup, label_for(c, bool(noisy[t]), int(uniform[t])))
                )

    # tuples spanning at least two clusters
    total_space = math.comb(n, r)
    intra_space = sum(math.comb(len(mem), r) for mem in members)
    span_space = total_space - intra_space
    if span_space > 0:
        if total_space <= min(TUPLE_BUDGET, _ENUM_CAP):
            combos = itertools.combinations(range(n), r)
            keep = rng.random(total_space) < params.q
            uniform = rng.integers(1, big_k + 1, total_space)
            for t, tup in enumerate(combos):
                if keep[t] and len({clusters[v] for v in tup}) > 1:
                    raw_edges.append((tuple(tup), int(uniform[t])))
        else:
            count = int(rng.binomial(span_space, params.q))
            if count > _EDGE_CAP:
                raise TooManyTuples(f"{count} spanning edges requested")
            pool = np.arange(n)
            tuples = _sample_distinct_tuples(
                rng,
                pool,
                r,
                count,
                lambda tup: len({int(clusters[v]) for v in tup}) <= 1,
            )
            uniform = rng.integers(1, big_k + 1, count)
            for t, tup in enumerate(tuples):
                raw_edges.append((tup, int(uniform[t])))

    return _densify(raw_edges, clusters, raw_colors, n)


def inject_label_noise(
    g: LabeledHypergraph,
    truth_labels: Sequence[int],
    w: float,
    rng: np.random.Generator,
) -> LabeledHypergraph:
    """Relabel an existing structure from planted node labels.

    Edges whose nodes share one truth label keep it with probability 1-w and
    are redrawn uniformly otherwise; edges spanning labels draw uniformly.
    The category space becomes 1..max(truth).
    """
    truth = np.asarray(truth_labels, dtype=np.int64)
    if truth.min() < 1:
        raise ValueError("truth labels must be positive category ids")
    k = int(truth.max())
    m = len(g.edges)
    coins = rng.random(m)
    uniform = rng.integers(1, k + 1, m)
    edges = []
    for t, e in enumerate(g.edges):
        cats = {int(truth[v]) for v in e.nodes}
        if len(cats) == 1 and coins[t] >= w:
            label = next(iter(cats))
        else:
            label = int(uniform[t])
        edges.append(HyperEdge(e.nodes, label, e.weight))
    return LabeledHypergraph(g.node_count, k, tuple(edges), g.node_names)


def bin_timestamps(
    temporal_edges: Sequence[TemporalEdge], k: int, node_count: int | None = None
) -> LabeledHypergraph:
    """Label edges by time window: k contiguous bins of near-equal size.

    Edges are ordered by timestamp (ties keep input order); the first
    ``m mod k`` bins take one extra edge.  Bin index is the category.
    """
    if k < 2:
        raise ValueError("binning needs at least 2 bins to cluster on")
    m = len(temporal_edges)
    if m < k:
        raise FewerEdgesThanBins(f"{m} edges cannot fill {k} bins")
    order = sorted(range(m), key=lambda t: temporal_edges[t].timestamp)
    base, rem = divmod(m, k)
    edges = []
    pos = 0
    for b in range(1, k + 1):
        size = base + (1 if b <= rem else 0)
        for t in order[pos : pos + size]:
            edges.append(HyperEdge(tuple(sorted(temporal_edges[t].nodes)), b, 1.0))
        pos += size
    if node_count is None:
        node_count = 1 + max(max(te.nodes) for te in temporal_edges)
    return LabeledHypergraph(node_count, k, tuple(edges))
