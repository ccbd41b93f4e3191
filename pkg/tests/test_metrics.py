import math

import numpy as np
import pytest

from catec.errors import (
    EmptyEdgeSet,
    LengthMismatch,
    NoInteriorEdges,
    WrongArity,
)
from catec.hypergraph import LabeledHypergraph, edge, mistake, objective
from catec.metrics import (
    ari,
    avg_time_diff,
    degree_filter,
    edge_satisfaction,
    mistake_floor,
    node_accuracy,
    normalized_cut,
    pairwise_f_score,
    unused_nodes,
)
from catec.synthetic import TemporalEdge
from instgen import random_clustering, random_instance


class TestEdgeSatisfaction:
    def test_extremes(self):
        h = LabeledHypergraph(2, 2, (edge([0, 1], 1),))
        assert edge_satisfaction(h, [1, 1]) == 1.0
        assert edge_satisfaction(h, [2, 2]) == 0.0

    def test_identity_with_objective(self):
        rng = np.random.default_rng(71)
        for _ in range(20):
            h = random_instance(rng, k=3, wildcard_prob=0.1)
            y = random_clustering(rng, h)
            sat = edge_satisfaction(h, y)
            assert sat + objective(h, y) / h.total_weight() == pytest.approx(
                1.0, abs=1e-12
            )
            assert 0.0 <= sat <= 1.0

    def test_empty_edge_set(self):
        with pytest.raises(EmptyEdgeSet):
            edge_satisfaction(LabeledHypergraph(2, 2, ()), [1, 1])


class TestNodeAccuracy:
    def test_cases(self):
        assert node_accuracy([1, 2], [1, 2]) == 1.0
        assert node_accuracy([1, 2], [2, 1]) == 0.0
        assert node_accuracy([1, 2, 1, 2], [1, 2, 2, 1]) == 0.5

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            node_accuracy([1], [1, 2])


class TestAri:
    def test_identical(self):
        assert ari([1, 1, 2, 2], [1, 1, 2, 2]) == 1.0

    def test_permuted_names_ignored(self):
        assert ari([1, 1, 2, 2, 3], [3, 3, 1, 1, 2]) == 1.0

    def test_textbook_contingency(self):
        # contingency [[2,1,0],[0,2,1]]: index 2, rows 6, cols 4, total 15
        # ARI = (2 - 24/15) / (5 - 24/15) = 2/17
        assert ari([1, 1, 1, 2, 2, 2], [1, 1, 2, 2, 2, 3]) == pytest.approx(2 / 17)

    def test_matches_reference_implementation(self):
        sklearn_metrics = pytest.importorskip("sklearn.metrics")
        rng = np.random.default_rng(72)
        for _ in range(25):
            n = int(rng.integers(2, 40))
            a = rng.integers(1, 5, n)
            b = rng.integers(1, 5, n)
            assert ari(a, b) == pytest.approx(
                sklearn_metrics.adjusted_rand_score(a, b), abs=1e-12
            )

    def test_random_partitions_center_near_zero(self):
        rng = np.random.default_rng(73)
        vals = []
        for _ in range(100):
            a = rng.integers(1, 6, 1000)
            b = rng.integers(1, 6, 1000)
            vals.append(ari(a, b))
        assert abs(float(np.mean(vals))) < 0.02


class TestPairwiseFScore:
    def test_identical(self):
        assert pairwise_f_score([1, 1, 2], [2, 2, 1]) == 1.0

    def test_all_singletons_against_pairs(self):
        assert pairwise_f_score([1, 2, 3], [1, 1, 1]) == 0.0

    def test_both_trivial(self):
        assert pairwise_f_score([1, 2], [2, 1]) == 1.0

    def test_hand_computed(self):
        # prediction pairs {01}, truth pairs {01,02,12}: P=1, R=1/3
        assert pairwise_f_score([1, 1, 2], [1, 1, 1]) == pytest.approx(0.5)


class TestNormalizedCut:
    def test_single_cluster(self):
        h = LabeledHypergraph(3, 2, (edge([0, 1], 1), edge([1, 2], 1)))
        assert normalized_cut(h, [1, 1, 1]) == 0.0

    def test_two_triangles_with_bridge(self):
        pairs = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]
        h = LabeledHypergraph(6, 2, tuple(edge(p, 1) for p in pairs))
        y = [1, 1, 1, 2, 2, 2]
        assert normalized_cut(h, y) == pytest.approx(1 / 7 + 1 / 7)

    def test_one_edge_split(self):
        h = LabeledHypergraph(2, 2, (edge([0, 1], 1),))
        assert normalized_cut(h, [1, 2]) == pytest.approx(2.0)

    def test_invariant_under_relabeling(self):
        rng = np.random.default_rng(74)
        for _ in range(10):
            h = random_instance(rng, k=4, r_max=2)
            y = random_clustering(rng, h)
            perm = rng.permutation(4) + 1
            y2 = [int(perm[c - 1]) for c in y]
            assert normalized_cut(h, y) == pytest.approx(normalized_cut(h, y2))

    def test_needs_pairs(self):
        h = LabeledHypergraph(3, 2, (edge([0, 1, 2], 1),))
        with pytest.raises(WrongArity):
            normalized_cut(h, [1, 1, 1])


class TestAvgTimeDiff:
    def test_two_stamps_one_cluster(self):
        edges = [TemporalEdge(0.0, (0, 1)), TemporalEdge(10.0, (1, 2))]
        assert avg_time_diff(edges, [1, 1, 1]) == pytest.approx(5.0)

    def test_equal_stamps(self):
        edges = [TemporalEdge(4.0, (0, 1)), TemporalEdge(4.0, (1, 2))]
        assert avg_time_diff(edges, [1, 1, 1]) == 0.0

    def test_crossing_edges_excluded(self):
        edges = [
            TemporalEdge(0.0, (0, 1)),
            TemporalEdge(100.0, (1, 2)),  # crosses clusters: ignored entirely
            TemporalEdge(2.0, (2, 3)),
        ]
        y = [1, 1, 2, 2]
        assert avg_time_diff(edges, y) == 0.0

    def test_no_interior_edges(self):
        edges = [TemporalEdge(0.0, (0, 1))]
        with pytest.raises(NoInteriorEdges):
            avg_time_diff(edges, [1, 2])


class TestDegreeFilter:
    def test_floor_formula(self):
        h = LabeledHypergraph(
            6,
            2,
            tuple(edge([0, i], 1) for i in range(1, 6))
            + tuple(edge([0, i], 2) for i in range(1, 4)),
        )
        assert mistake_floor(h)[0] == pytest.approx(3.0)  # d = {c1: 5, c2: 3}
        kept, removed = degree_filter(h, 3.0)
        assert 0 not in removed
        _, removed2 = degree_filter(h, 2.9)
        assert 0 in removed2

    def test_infinite_beta_is_identity(self):
        rng = np.random.default_rng(75)
        h = random_instance(rng, k=3)
        kept, removed = degree_filter(h, math.inf)
        assert removed == frozenset()
        assert kept is h

    def test_beta_zero_keeps_single_category_nodes(self):
        h = LabeledHypergraph(4, 2, (edge([0, 1], 1), edge([1, 2], 2), edge([2, 3], 2)))
        kept, removed = degree_filter(h, 0.0)
        assert removed == frozenset({1})  # node 1 sees both categories
        assert kept.node_count == 3
        # edges touching node 1 are gone, survivors re-indexed
        assert all(mistake_floor(kept)[v] == 0 for v in range(kept.node_count))

    def test_monotone_in_beta(self):
        rng = np.random.default_rng(76)
        for _ in range(10):
            h = random_instance(rng, k=3, n_range=(5, 9))
            _, removed_tight = degree_filter(h, 1.0)
            _, removed_loose = degree_filter(h, 2.5)
            assert removed_loose <= removed_tight


class TestUnusedNodes:
    def test_fully_satisfied(self):
        h = LabeledHypergraph(3, 2, (edge([0, 1], 1), edge([1, 2], 1)))
        assert unused_nodes(h, [1, 1, 1]) == 0

    def test_mistaken_only_edge_counts(self):
        h = LabeledHypergraph(3, 2, (edge([0, 1], 1), edge([1, 2], 1)))
        # node 2's only edge is a mistake; node 1 is still used via (0, 1)
        assert unused_nodes(h, [1, 1, 2]) == 1

    def test_matches_direct_scan(self):
        rng = np.random.default_rng(77)
        for _ in range(25):
            h = random_instance(rng, k=3, wildcard_prob=0.1)
            y = random_clustering(rng, h)
            expected = 0
            for v in range(h.node_count):
                hits = [e for e in h.edges if v in e.nodes and mistake(e, y) == 0]
                if not hits:
                    expected += 1
            assert unused_nodes(h, y) == expected
