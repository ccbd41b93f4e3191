import gzip
import io
import json
import string

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from catec.errors import DuplicateNodeInEdge, LabelOutOfRange, ParseError
from catec.hypergraph import LabeledHypergraph, edge, validate
from catec.io_formats import (
    convert_parallel_files,
    parse_clustering,
    parse_hypergraph,
    parse_temporal,
    read_reports,
    read_text,
    reports_to_csv,
    write_clustering,
    write_hypergraph,
    write_report_line,
)
from catec.reports import SolveReport
from instgen import random_clustering, random_instance


class TestParseHypergraph:
    def test_minimal(self):
        h = parse_hypergraph("catec v1 nodes=2 categories=2\n1\t0 1\n")
        assert h.node_count == 2
        assert h.edges == (edge([0, 1], 1),)

    def test_weighted_named_edge(self):
        h = parse_hypergraph("catec v1 nodes=3 categories=10\n5\t2.5\ta b c\n")
        assert h.edges[0].weight == 2.5
        assert h.edges[0].size == 3
        assert h.node_names == ("a", "b", "c")

    def test_label_out_of_range_reports_line(self):
        text = "catec v1 nodes=2 categories=10\n1\ta b\n11\ta b\n"
        with pytest.raises(LabelOutOfRange) as err:
            parse_hypergraph(text)
        assert "line 3" in str(err.value)

    def test_duplicate_node(self):
        with pytest.raises(DuplicateNodeInEdge):
            parse_hypergraph("catec v1 nodes=2 categories=2\n1\ta a\n")

    def test_comments_and_blanks(self):
        text = (
            "# leading comment\n"
            "catec v1 nodes=2 categories=2\n"
            "\n"
            "1\tx y  # trailing comment\n"
        )
        h = parse_hypergraph(text)
        assert len(h.edges) == 1

    def test_missing_header(self):
        with pytest.raises(ParseError):
            parse_hypergraph("1\t0 1\n")

    def test_too_many_ids(self):
        with pytest.raises(ParseError):
            parse_hypergraph("catec v1 nodes=2 categories=2\n1\ta b\n1\tb c\n")

    def test_nodes_directive_pins_order(self):
        text = "catec v1 nodes=3 categories=2\n# nodes: z y x\n1\tx y\n"
        h = parse_hypergraph(text)
        assert h.node_names == ("z", "y", "x")
        assert h.edges[0].nodes == (1, 2)

    def test_deterministic(self):
        text = "catec v1 nodes=4 categories=2\n1\td c\n2\ta d\n"
        assert parse_hypergraph(text) == parse_hypergraph(text)


class TestRoundTrip:
    def test_random_instances(self):
        rng = np.random.default_rng(81)
        for _ in range(500):
            h = random_instance(
                rng, n_range=(2, 8), k=3, m_range=(0, 8), wildcard_prob=0.2,
                weights=(1, 2.5, 3),
            )
            assert parse_hypergraph(write_hypergraph(h)) == h

    def test_named_instance_with_isolated_node(self):
        h = LabeledHypergraph(3, 2, (edge([0, 2], 1),), ("left", "lonely", "right"))
        assert parse_hypergraph(write_hypergraph(h)) == h

    @settings(max_examples=80, deadline=None)
    @given(
        names=st.lists(
            st.text(string.ascii_letters + string.digits + "_.-", min_size=1, max_size=8),
            min_size=2,
            max_size=7,
            unique=True,
        ),
        data=st.data(),
    )
    def test_arbitrary_names_round_trip(self, names, data):
        n = len(names)
        # identity id tables intentionally collapse to unnamed on parse
        assume(tuple(names) != tuple(str(i) for i in range(n)))
        m = data.draw(st.integers(0, 5))
        edges = []
        for _ in range(m):
            size = data.draw(st.integers(2, n))
            nodes = data.draw(
                st.lists(st.integers(0, n - 1), min_size=size, max_size=size, unique=True)
            )
            label = data.draw(st.integers(0, 3))
            weight = data.draw(st.sampled_from([1.0, 0.5, 3.25]))
            edges.append(edge(nodes, label, weight))
        h = LabeledHypergraph(n, 3, tuple(edges), tuple(names))
        assert parse_hypergraph(write_hypergraph(h)) == h

    def test_clustering_round_trip(self):
        rng = np.random.default_rng(82)
        for _ in range(50):
            h = random_instance(rng, k=4)
            y = random_clustering(rng, h)
            text = write_clustering(h, y)
            assert text.count("\n") == h.node_count
            assert list(parse_clustering(text, h).labels) == y


class TestParseClustering:
    def test_missing_node(self):
        h = LabeledHypergraph(2, 2, (edge([0, 1], 1),))
        with pytest.raises(ParseError):
            parse_clustering("0\t1\n", h)

    def test_duplicate_node(self):
        h = LabeledHypergraph(2, 2, (edge([0, 1], 1),))
        with pytest.raises(ParseError):
            parse_clustering("0\t1\n0\t2\n1\t1\n", h)

    def test_category_out_of_range(self):
        h = LabeledHypergraph(2, 2, (edge([0, 1], 1),))
        with pytest.raises(LabelOutOfRange):
            parse_clustering("0\t1\n1\t3\n", h)


def test_gzip_detection(tmp_path):
    h = random_instance(np.random.default_rng(83))
    text = write_hypergraph(h)
    path = tmp_path / "instance.catec.gz"
    with gzip.open(path, "wt") as fh:
        fh.write(text)
    assert parse_hypergraph(read_text(path)) == h
    plain = tmp_path / "instance.catec"
    plain.write_text(text)
    assert read_text(plain) == text


class TestReports:
    def test_jsonl_round_trip(self, tmp_path):
        reports = [
            SolveReport("exact2", 3.0, 3.0, 1.0, 0.75, 0.01, 7, "brain.catec"),
            SolveReport("mv", 4.0, None, None, 0.7, 0.0, None, "brain.catec"),
        ]
        path = tmp_path / "rows.jsonl"
        with open(path, "w") as fh:
            for rep in reports:
                write_report_line(rep, fh)
        assert read_reports(path) == reports

    def test_row_fields(self):
        rep = SolveReport("lp-round", 10.0).with_bound(10.0)
        row = rep.to_dict()
        assert row["approx_ratio"] == 1.0
        assert json.loads(json.dumps(row)) == row

    def test_csv_summary(self):
        buf = io.StringIO()
        reports_to_csv(
            [SolveReport("exact2", 3.0, 3.0, 1.0, 0.75, 0.01, 7, "x")], buf
        )
        lines = buf.getvalue().strip().splitlines()
        assert lines[0].startswith("instance,algorithm,seed,objective")
        assert lines[1].startswith("x,exact2,7,3.0")


class TestTemporal:
    def test_parse(self):
        edges, names = parse_temporal("3.5\tb a\n1.0\tc a\n")
        assert names == ("b", "a", "c")
        assert edges[0].timestamp == 3.5
        assert edges[0].nodes == (0, 1)

    def test_bad_timestamp(self):
        with pytest.raises(ParseError):
            parse_temporal("soon\ta b\n")


class TestConvert:
    def test_parallel_files(self):
        h = convert_parallel_files("a b c\nb,d\n", "2\n1\n")
        assert h.node_count == 4
        assert h.category_count == 2
        assert h.edges[0].size == 3
        assert h.edges[1] == edge([1, 3], 1)
        assert validate(h) == []

    def test_with_weights(self):
        h = convert_parallel_files("a b\n", "1\n", "2.5\n")
        assert h.edges[0].weight == 2.5

    def test_count_mismatch(self):
        with pytest.raises(ParseError):
            convert_parallel_files("a b\nc d\n", "1\n")

    def test_bad_label(self):
        with pytest.raises(LabelOutOfRange):
            convert_parallel_files("a b\n", "0\n")
