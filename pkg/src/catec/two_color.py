"""Exact two-category clustering via minimum s-t cut reductions.

With two categories the objective is solvable in polynomial time.  Graphs use
a half-weight gadget: each labeled edge (i, j) contributes undirected edges
(i, j), (v_c, i), (v_c, j) at half its weight, with one terminal per category.
General hypergraphs use one auxiliary node per edge with directed arcs at
full edge weight.  Wildcard edges are attached to both terminals; each such
edge adds a constant ``weight`` to every cut, so the optimal partition is
unchanged and the offset is subtracted when reporting values.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import WrongArity, WrongCategoryCount
from .flow import FlowNetwork, min_cut
from .hypergraph import WILDCARD, Clustering, LabeledHypergraph, clustering, objective


def _require_two_categories(h: LabeledHypergraph) -> None:
    if h.category_count != 2:
        raise WrongCategoryCount(f"needs exactly 2 categories, got {h.category_count}")


def wildcard_offset(h: LabeledHypergraph) -> Fraction:
    """Constant added to every cut by the both-terminal wildcard gadgets."""
    return sum((Fraction(e.weight) for e in h.edges if e.label == WILDCARD), Fraction(0))


def build_graph_reduction(h: LabeledHypergraph) -> FlowNetwork:
    """Half-weight cut network for a size-2, two-category instance.

    Nodes 0..n-1 are the original nodes; node n is the terminal of category 1
    (source) and node n+1 the terminal of category 2 (sink).
    """
    _require_two_categories(h)
    if any(e.size != 2 for e in h.edges):
        raise WrongArity("graph reduction needs all edges of size 2")
    n = h.node_count
    net = FlowNetwork(n + 2, source=n, sink=n + 1)
    for e in h.edges:
        i, j = e.nodes
        half = Fraction(e.weight) / 2
        net.add_undirected(i, j, half)
        if e.label == WILDCARD:
            # both labels at once: one half-weight star per terminal plus a
            # second copy of (i, j); cut cost is weight + weight*[i,j split]
            net.add_undirected(i, j, half)
            for t in (n, n + 1):
                net.add_undirected(t, i, half)
                net.add_undirected(t, j, half)
        else:
            t = n if e.label == 1 else n + 1
            net.add_undirected(t, i, half)
            net.add_undirected(t, j, half)
    return net


def build_hypergraph_reduction(h: LabeledHypergraph) -> FlowNetwork:
    """Auxiliary-node cut network for a two-category hypergraph.

    Nodes 0..n-1 are original; n is the source terminal (category 1), n+1 the
    sink terminal (category 2); auxiliary nodes follow, one per labeled edge
    and two per wildcard edge (one gadget per direction).
    """
    _require_two_categories(h)
    n = h.node_count
    arcs: list[tuple[int, int, Fraction]] = []
    next_aux = n + 2
    for e in h.edges:
        w = Fraction(e.weight)
        if e.label in (1, WILDCARD):
            u = next_aux
            next_aux += 1
            arcs.append((n, u, w))
            arcs.extend((u, v, w) for v in e.nodes)
        if e.label in (2, WILDCARD):
            u = next_aux
            next_aux += 1
            arcs.append((u, n + 1, w))
            arcs.extend((v, u, w) for v in e.nodes)
    net = FlowNetwork(next_aux, source=n, sink=n + 1)
    for tail, head, cap in arcs:
        net.add_arc(tail, head, cap)
    return net


def solve_two_color(h: LabeledHypergraph) -> tuple[Clustering, float]:
    """Optimal clustering and objective value for a two-category instance.

    The lighter graph reduction is used whenever all edges have size 2.
    """
    _require_two_categories(h)
    if h.max_edge_size == 2 and all(e.size == 2 for e in h.edges):
        net = build_graph_reduction(h)
    else:
        net = build_hypergraph_reduction(h)
    result = min_cut(net)
    labels = [1 if v in result.source_side else 2 for v in range(h.node_count)]
    y = clustering(labels)
    return y, objective(h, y)
