import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catec.errors import InstanceTooLarge
from catec.hypergraph import (
    HyperEdge,
    LabeledHypergraph,
    brute_force_optimum,
    clustering,
    edge,
    linear_objective,
    mistake,
    objective,
    reduce_to_labeled_graph,
    validate,
)
from instgen import random_clustering, random_instance


def triangle():
    return LabeledHypergraph(
        3, 2, (edge([0, 1], 1), edge([1, 2], 2), edge([0, 2], 1))
    )


class TestValidate:
    def test_well_formed(self):
        h = LabeledHypergraph(3, 2, (edge([0, 1], 1), edge([1, 2], 2)))
        assert validate(h) == []

    def test_node_out_of_range(self):
        h = LabeledHypergraph(3, 2, (edge([0, 3], 1),))
        assert any("node out of range" in msg for msg in validate(h))

    def test_label_out_of_range(self):
        h = LabeledHypergraph(3, 2, (edge([0, 1], 3),))
        assert any("label out of range" in msg for msg in validate(h))

    def test_bad_weight_and_unsorted(self):
        h = LabeledHypergraph(3, 2, (HyperEdge((1, 0), 1, -2.0),))
        msgs = "\n".join(validate(h))
        assert "sorted" in msgs and "weight" in msgs


class TestMistake:
    def test_all_match(self):
        assert mistake(edge([0, 1], 1), [1, 1]) == 0

    def test_one_stray(self):
        assert mistake(edge([0, 1, 2], 2), [2, 2, 1]) == 1

    def test_wildcard_split_pays_weight(self):
        e = edge([0, 1], 0, 3.0)
        assert mistake(e, [1, 2]) == 3.0
        assert mistake(e, [2, 2]) == 0.0
        assert mistake(e, [1, 1]) == 0.0


class TestObjective:
    def test_monochromatic(self):
        h = LabeledHypergraph(3, 2, (edge([0, 1], 1), edge([1, 2], 1)))
        assert objective(h, [1, 1, 1]) == 0

    def test_triangle(self):
        assert objective(triangle(), [1, 1, 1]) == 1

    def test_equals_per_edge_tally(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            h = random_instance(rng, k=3, wildcard_prob=0.2)
            y = random_clustering(rng, h)
            expected = sum(mistake(e, y) for e in h.edges)
            assert objective(h, y) == pytest.approx(expected)


class TestLinearObjective:
    def test_monochromatic(self):
        h = LabeledHypergraph(3, 2, (edge([0, 1], 1),))
        assert linear_objective(h, [1, 1, 1]) == 0

    def test_two_strays(self):
        h = LabeledHypergraph(3, 2, (edge([0, 1, 2], 1),))
        assert linear_objective(h, [1, 2, 2]) == 2

    def test_equals_per_node_tally(self):
        rng = np.random.default_rng(8)
        for _ in range(25):
            h = random_instance(rng, n_range=(4, 8), k=3)
            y = random_clustering(rng, h)
            tally = 0.0
            for e in h.edges:
                for v in e.nodes:
                    if y[v] != e.label:
                        tally += e.weight
            assert linear_objective(h, y) == pytest.approx(tally)

    def test_sandwiched_by_edge_objective(self):
        rng = np.random.default_rng(9)
        for _ in range(40):
            h = random_instance(rng, k=3, weights=(1,))
            y = random_clustering(rng, h)
            lo = objective(h, y)
            hi = linear_objective(h, y)
            assert lo <= hi + 1e-12
            assert hi <= h.max_edge_size * lo + 1e-12


class TestBruteForce:
    def test_single_edge(self):
        h = LabeledHypergraph(2, 2, (edge([0, 1], 1),))
        y, val = brute_force_optimum(h)
        assert val == 0
        assert y.labels == (1, 1)

    def test_triangle(self):
        _, val = brute_force_optimum(triangle())
        assert val == 1

    def test_three_color_star(self):
        h = LabeledHypergraph(
            4, 3, (edge([0, 1], 1), edge([0, 2], 2), edge([0, 3], 3))
        )
        _, val = brute_force_optimum(h)
        assert val == 2

    def test_lexicographic_tiebreak(self):
        # no edges: everything ties at 0, so the all-ones labeling wins
        h = LabeledHypergraph(3, 3, ())
        y, val = brute_force_optimum(h)
        assert val == 0
        assert y.labels == (1, 1, 1)

    def test_guard(self):
        h = LabeledHypergraph(13, 4, (edge([0, 1], 1),))
        with pytest.raises(InstanceTooLarge):
            brute_force_optimum(h)

    def test_value_invariant_under_relabelings(self):
        rng = np.random.default_rng(10)
        for _ in range(10):
            h = random_instance(rng, n_range=(4, 7), k=3, m_range=(3, 8))
            _, base = brute_force_optimum(h)
            node_perm = rng.permutation(h.node_count)
            cat_perm = rng.permutation(h.category_count) + 1
            edges = tuple(
                HyperEdge(
                    tuple(sorted(int(node_perm[v]) for v in e.nodes)),
                    int(cat_perm[e.label - 1]),
                    e.weight,
                )
                for e in h.edges
            )
            h2 = LabeledHypergraph(h.node_count, h.category_count, edges)
            _, permuted = brute_force_optimum(h2)
            assert permuted == pytest.approx(base)

    def test_linear_kind_matches_direct_minimum(self):
        import itertools

        rng = np.random.default_rng(11)
        for _ in range(5):
            h = random_instance(rng, n_range=(4, 6), k=2, m_range=(3, 6))
            _, val = brute_force_optimum(h, kind="linear")
            best = min(
                linear_objective(h, y)
                for y in itertools.product((1, 2), repeat=h.node_count)
            )
            assert val == pytest.approx(best)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_objective_bounded_by_total_weight(seed):
    rng = np.random.default_rng(seed)
    h = random_instance(rng, k=3, wildcard_prob=0.15)
    y = random_clustering(rng, h)
    val = objective(h, y)
    assert 0 <= val <= h.total_weight() + 1e-12


class TestReduceToLabeledGraph:
    def test_identity_on_graphs(self):
        h = triangle()
        assert reduce_to_labeled_graph(h) is h

    def test_majority_label(self):
        h = LabeledHypergraph(
            4,
            2,
            (edge([0, 1, 2], 1), edge([0, 1, 3], 1), edge([0, 1, 2], 2)),
        )
        g = reduce_to_labeled_graph(h)
        pairs = {e.nodes: e.label for e in g.edges}
        assert pairs[(0, 1)] == 1  # two votes for 1, one for 2

    def test_tie_drops_pair(self):
        h = LabeledHypergraph(3, 2, (edge([0, 1, 2], 1), edge([0, 1, 2], 2)))
        g = reduce_to_labeled_graph(h)
        assert all(e.nodes != (0, 1) for e in g.edges)
        assert g.edges == ()  # every pair ties here

    def test_all_outputs_are_pairs(self):
        rng = np.random.default_rng(12)
        for _ in range(10):
            h = random_instance(rng, k=3, r_max=4)
            g = reduce_to_labeled_graph(h)
            assert all(e.size == 2 for e in g.edges)
            assert validate(g) == []
