"""Multiway-cut reductions and the isolating-cuts solver.

Each hyperedge becomes a clique over its nodes plus the terminal of its
category, every clique edge weighted by the edge weight over the edge size;
overlapping cliques add up.  For any clustering the resulting multiway cut
value sandwiches the clustering objective within a factor (r+1)/2.  The
isolating-cuts heuristic solves one min cut per terminal (terminal against
all others merged), keeps the k-1 cheapest cuts, assigns nodes through the
retained minimal source sides with leftovers joining the discarded terminal,
and the full solver fills nodes unattached from every terminal with their
majority-vote label.

A node-weighted variant is also built (auxiliary node per hyperedge whose
deletion models mistaking that edge); only the construction and its
structural check ship, since practical solving goes through the edge-weighted
route.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

from .baselines import majority_labels
from .errors import WildcardUnsupported
from .flow import FlowNetwork, min_cut
from .hypergraph import (
    WILDCARD,
    Clustering,
    LabeledHypergraph,
    as_labels,
    clustering,
    objective,
)
from .metrics import edge_satisfaction
from .reports import SolveReport

UNASSIGNED = 0


@dataclass(frozen=True)
class TerminalGraph:
    """Undirected weighted graph over original nodes plus one terminal per
    category; terminal of category c is node ``original_count + c - 1``."""

    original_count: int
    category_count: int
    edge_weights: dict[tuple[int, int], float]

    @property
    def node_count(self) -> int:
        return self.original_count + self.category_count

    def terminal(self, c: int) -> int:
        return self.original_count + c - 1


def build_multiway_graph(h: LabeledHypergraph) -> TerminalGraph:
    """Clique expansion with per-edge weight ``weight / size``."""
    weights: dict[tuple[int, int], float] = {}
    for e in h.edges:
        if e.label == WILDCARD:
            raise WildcardUnsupported("multiway reduction needs labeled edges")
        members = list(e.nodes) + [h.node_count + e.label - 1]
        share = e.weight / e.size
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                key = (min(members[a], members[b]), max(members[a], members[b]))
                weights[key] = weights.get(key, 0.0) + share
    return TerminalGraph(h.node_count, h.category_count, weights)


def multiway_cut_value(tg: TerminalGraph, y: Clustering | "list[int]") -> float:
    """Weight of edges whose endpoints land in different category classes;
    terminals implicitly belong to their own category."""
    labels = as_labels(y)

    def side(v: int) -> int:
        if v >= tg.original_count:
            return v - tg.original_count + 1
        return labels[v]

    return float(
        sum(w for (a, b), w in tg.edge_weights.items() if side(a) != side(b))
    )


@dataclass(frozen=True)
class IsolatingCutsResult:
    """Per-terminal cut values and the partial node assignment (0 = none)."""

    assignment: tuple[int, ...]
    cut_values: tuple[Fraction, ...]
    discarded: int

    @property
    def retained_value(self) -> Fraction:
        return sum(
            (v for c, v in enumerate(self.cut_values, start=1) if c != self.discarded),
            Fraction(0),
        )


def isolating_cuts(tg: TerminalGraph) -> IsolatingCutsResult:
    """One min cut per terminal against the rest merged into a super-sink.

    The most expensive cut (ties: highest category) is discarded.  Nodes in a
    retained cut's minimal source side take that terminal's category (the
    sides are pairwise disjoint); every other node with at least one incident
    edge falls to the discarded terminal's cluster, which for two terminals
    reproduces the exact min s-t cut partition.  Nodes touching no edge stay
    unassigned.
    """
    k = tg.category_count
    n = tg.original_count
    sides: list[frozenset[int]] = []
    values: list[Fraction] = []
    for cat in range(1, k + 1):
        source = tg.terminal(cat)
        # other terminals collapse onto one sink id
        sink = tg.node_count
        mapped = list(range(tg.node_count)) + [sink]
        for other in range(1, k + 1):
            if other != cat:
                mapped[tg.terminal(other)] = sink
        net = FlowNetwork(tg.node_count + 1, source=source, sink=sink)
        for (a, b), w in sorted(tg.edge_weights.items()):
            ma, mb = mapped[a], mapped[b]
            if ma != mb:
                net.add_undirected(ma, mb, w)
        result = min_cut(net)
        values.append(result.value)
        sides.append(result.source_side)
    worst = max(values)
    discarded = max(c for c, v in enumerate(values, start=1) if v == worst)
    touched = set()
    for a, b in tg.edge_weights:
        touched.add(a)
        touched.add(b)
    assignment = [UNASSIGNED] * n
    for cat in range(1, k + 1):
        if cat == discarded:
            continue
        for v in sides[cat - 1]:
            if v < n and assignment[v] == UNASSIGNED:
                assignment[v] = cat
    for v in range(n):
        if assignment[v] == UNASSIGNED and v in touched:
            assignment[v] = discarded
    return IsolatingCutsResult(tuple(assignment), tuple(values), discarded)


def cat_isocut(h: LabeledHypergraph, seed: int | None = None) -> tuple[Clustering, SolveReport]:
    """Full isolating-cuts solver; nodes unattached from every terminal
    (those in no hyperedge) get their majority-vote label."""
    start = time.perf_counter()
    tg = build_multiway_graph(h)
    iso = isolating_cuts(tg)
    fallback = majority_labels(h)
    labels = [
        a if a != UNASSIGNED else int(fallback[v])
        for v, a in enumerate(iso.assignment)
    ]
    y = clustering(labels)
    obj = objective(h, y)
    report = SolveReport(
        algorithm="isocut",
        objective=obj,
        edge_satisfaction=edge_satisfaction(h, y) if h.edges else None,
        wall_time_sec=time.perf_counter() - start,
        seed=seed,
    )
    return y, report


@dataclass(frozen=True)
class NodeWeightedTerminalGraph:
    """Node-weighted variant: deleting the auxiliary node of an edge models
    mistaking that edge.  Originals and terminals are undeletable (infinite
    weight); auxiliary node ids start at ``original_count + category_count``."""

    original_count: int
    category_count: int
    node_weights: tuple[float, ...]
    adjacency: tuple[tuple[int, ...], ...]
    aux_nodes: tuple[int, ...]

    def terminal(self, c: int) -> int:
        return self.original_count + c - 1


def build_nwmc_graph(h: LabeledHypergraph) -> NodeWeightedTerminalGraph:
    """Star per hyperedge: its auxiliary node joins the edge's nodes and the
    label's terminal (wildcard edges get no terminal link)."""
    n, k = h.node_count, h.category_count
    weights = [math.inf] * (n + k)
    adjacency: list[list[int]] = [[] for _ in range(n + k)]
    aux_nodes = []
    for e in h.edges:
        aux = len(weights)
        aux_nodes.append(aux)
        weights.append(e.weight)
        adjacency.append([])
        for v in e.nodes:
            adjacency[aux].append(v)
            adjacency[v].append(aux)
        if e.label != WILDCARD:
            t = n + e.label - 1
            adjacency[aux].append(t)
            adjacency[t].append(aux)
    return NodeWeightedTerminalGraph(
        n,
        k,
        tuple(weights),
        tuple(tuple(a) for a in adjacency),
        tuple(aux_nodes),
    )


def nwmc_mistaken_edges(
    g: NodeWeightedTerminalGraph, y: Clustering | "list[int]"
) -> list[int]:
    """Edges whose auxiliary node must be deleted under ``y``: those whose
    neighborhood (nodes plus terminal) spans two or more categories."""
    labels = as_labels(y)
    out = []
    for idx, aux in enumerate(g.aux_nodes):
        cats = set()
        for v in g.adjacency[aux]:
            if v < g.original_count:
                cats.add(labels[v])
            else:
                cats.add(v - g.original_count + 1)
        if len(cats) >= 2:
            out.append(idx)
    return out
