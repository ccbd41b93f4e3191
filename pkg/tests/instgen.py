"""Random instance/network generators shared across test modules."""

from __future__ import annotations

import itertools

import numpy as np

from catec.flow import FlowNetwork, cut_value
from catec.hypergraph import HyperEdge, LabeledHypergraph


def random_instance(
    rng: np.random.Generator,
    *,
    n_range=(4, 10),
    k=2,
    r_max=4,
    m_range=(3, 12),
    weights=(1, 2, 3),
    wildcard_prob=0.0,
) -> LabeledHypergraph:
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    m = int(rng.integers(m_range[0], m_range[1] + 1))
    edges = []
    for _ in range(m):
        size = int(rng.integers(2, min(r_max, n) + 1))
        nodes = tuple(sorted(rng.choice(n, size=size, replace=False).tolist()))
        if wildcard_prob > 0 and rng.random() < wildcard_prob:
            label = 0
        else:
            label = int(rng.integers(1, k + 1))
        w = float(rng.choice(weights))
        edges.append(HyperEdge(nodes, label, w))
    return LabeledHypergraph(n, k, tuple(edges))


def random_clustering(rng: np.random.Generator, h: LabeledHypergraph) -> list[int]:
    return [int(c) for c in rng.integers(1, h.category_count + 1, h.node_count)]


def random_network(
    rng: np.random.Generator, *, n_range=(3, 8), m_range=(2, 14), integer=True
) -> FlowNetwork:
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    m = int(rng.integers(m_range[0], m_range[1] + 1))
    net = FlowNetwork(n, source=0, sink=n - 1)
    for _ in range(m):
        tail = int(rng.integers(0, n))
        head = int(rng.integers(0, n))
        if tail == head:
            continue
        cap = int(rng.integers(0, 9)) if integer else float(rng.random() * 5)
        net.add_arc(tail, head, cap)
    return net


def brute_force_min_cut(net: FlowNetwork):
    """Enumerate all source sides containing s and not t (n <= 20ish)."""
    others = [v for v in range(net.node_count) if v not in (net.source, net.sink)]
    best_value = None
    best_side = None
    for bits in itertools.product((0, 1), repeat=len(others)):
        side = {net.source} | {v for v, b in zip(others, bits) if b}
        val = cut_value(net, side)
        if best_value is None or val < best_value:
            best_value = val
            best_side = side
    return best_value, best_side
