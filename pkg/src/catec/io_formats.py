"""Text formats for instances, clusterings, temporal edges, and reports.

Instance format (UTF-8, ``#`` starts a comment)::

    catec v1 nodes=<n> categories=<k>
    # nodes: <id0> <id1> ...            (optional: pins id -> index order)
    <label>\\t<weight>\\t<id1> <id2> ... <idr>
    <label>\\t<id1> <id2> ...           (weight omitted: 1)

Node ids are arbitrary whitespace-free strings mapped to dense indices in
first-appearance order (directive first when present).  Label 0 is the
wildcard.  Clustering format: one ``<node-id>\\t<category>`` line per node.
Gzip-compressed files are detected by magic bytes.  Reports append as JSON
lines; a CSV summarizer flattens them for spreadsheets.
"""

from __future__ import annotations

import csv
import gzip
import json
from pathlib import Path
from typing import IO, Iterable, Sequence

from .errors import DuplicateNodeInEdge, LabelOutOfRange, ParseError
from .hypergraph import Clustering, HyperEdge, LabeledHypergraph, as_labels, clustering
from .reports import SolveReport, report_from_dict
from .synthetic import TemporalEdge

_HEADER_PREFIX = "catec v1"
_NODES_DIRECTIVE = "# nodes:"


def read_text(path: str | Path) -> str:
    """Read a text file, transparently decompressing gzip input."""
    path = Path(path)
    with open(path, "rb") as fh:
        magic = fh.read(2)
    if magic == b"\x1f\x8b":
        with gzip.open(path, "rt", encoding="utf-8") as fh:
            return fh.read()
    return path.read_text(encoding="utf-8")


class _NodeTable:
    def __init__(self, limit: int | None = None):
        self.limit = limit
        self.index: dict[str, int] = {}

    def get(self, name: str, line: int | None = None) -> int:
        if name not in self.index:
            if self.limit is not None and len(self.index) >= self.limit:
                raise ParseError(
                    f"node id {name!r} exceeds declared node count", line
                )
            self.index[name] = len(self.index)
        return self.index[name]

    def names(self, count: int) -> tuple[str, ...]:
        names = list(self.index)
        names += [str(i) for i in range(len(names), count)]
        return tuple(names)


def parse_hypergraph(text: str) -> LabeledHypergraph:
    """Parse the instance format; raises ParseError and friends with the
    offending line number."""
    lines = text.splitlines()
    header = None
    header_line = 0
    for lineno, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if stripped and not stripped.startswith("#"):
            header = stripped
            header_line = lineno
            break
    if header is None or not header.startswith(_HEADER_PREFIX):
        raise ParseError("missing 'catec v1' header", header_line or 1)
    fields = dict(
        part.split("=", 1) for part in header.split()[2:] if "=" in part
    )
    try:
        n = int(fields["nodes"])
        k = int(fields["categories"])
    except (KeyError, ValueError) as exc:
        raise ParseError(f"bad header: {exc}", header_line) from None
    if n < 1 or k < 1:
        raise ParseError("node and category counts must be positive", header_line)

    table = _NodeTable(limit=n)
    edges: list[HyperEdge] = []
    for lineno, raw in enumerate(lines, start=1):
        if lineno <= header_line:
            if raw.strip().startswith(_NODES_DIRECTIVE):
                for name in raw.strip()[len(_NODES_DIRECTIVE):].split():
                    table.get(name, lineno)
            continue
        line = raw.split("#", 1)[0].rstrip()
        if raw.strip().startswith(_NODES_DIRECTIVE):
            for name in raw.strip()[len(_NODES_DIRECTIVE):].split():
                table.get(name, lineno)
            continue
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) == 2:
            label_s, nodes_s = parts
            weight = 1.0
        elif len(parts) == 3:
            label_s, weight_s, nodes_s = parts
            try:
                weight = float(weight_s)
            except ValueError:
                raise ParseError(f"bad weight {weight_s!r}", lineno) from None
        else:
            raise ParseError("expected 2 or 3 tab-separated fields", lineno)
        try:
            label = int(label_s)
        except ValueError:
            raise ParseError(f"bad label {label_s!r}", lineno) from None
        if not (label == 0 or 1 <= label <= k):
            raise LabelOutOfRange(f"label {label} outside [0, {k}]", lineno)
        if not weight > 0:
            raise ParseError("weight must be positive", lineno)
        names = nodes_s.split()
        if len(names) < 2:
            raise ParseError("edge needs at least 2 nodes", lineno)
        ids = [table.get(name, lineno) for name in names]
        if len(set(ids)) != len(ids):
            raise DuplicateNodeInEdge(f"repeated node in {names}", lineno)
        edges.append(HyperEdge(tuple(sorted(ids)), label, weight))
    if len(table.index) > n:
        raise ParseError(f"{len(table.index)} node ids but header says {n}")
    names = table.names(n)
    if names == tuple(str(i) for i in range(n)):
        names = None  # identity ids carry no information
    return LabeledHypergraph(n, k, tuple(edges), names)


def write_hypergraph(h: LabeledHypergraph) -> str:
    """Canonical text for an instance; round-trips through parse_hypergraph."""
    out = [f"catec v1 nodes={h.node_count} categories={h.category_count}"]
    names = [h.name_of(v) for v in range(h.node_count)]
    out.append(f"{_NODES_DIRECTIVE} " + " ".join(names))
    for e in h.edges:
        members = " ".join(names[v] for v in e.nodes)
        out.append(f"{e.label}\t{e.weight:.17g}\t{members}")
    return "\n".join(out) + "\n"


def _node_index(h: LabeledHypergraph) -> dict[str, int]:
    return {h.name_of(v): v for v in range(h.node_count)}


def parse_clustering(text: str, h: LabeledHypergraph) -> Clustering:
    """Parse node-to-category lines; every node must appear exactly once."""
    index = _node_index(h)
    labels = [0] * h.node_count
    seen = [False] * h.node_count
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("expected '<node-id>\\t<category>'", lineno)
        name, cat_s = parts
        if name not in index:
            raise ParseError(f"unknown node id {name!r}", lineno)
        v = index[name]
        if seen[v]:
            raise ParseError(f"node {name!r} assigned twice", lineno)
        try:
            cat = int(cat_s)
        except ValueError:
            raise ParseError(f"bad category {cat_s!r}", lineno) from None
        if not 1 <= cat <= h.category_count:
            raise LabelOutOfRange(f"category {cat} outside [1, {h.category_count}]", lineno)
        labels[v] = cat
        seen[v] = True
    if not all(seen):
        missing = next(v for v in range(h.node_count) if not seen[v])
        raise ParseError(f"node {h.name_of(missing)!r} has no category")
    return clustering(labels)


def write_clustering(h: LabeledHypergraph, y: Clustering | Sequence[int]) -> str:
    labels = as_labels(y)
    return "".join(
        f"{h.name_of(v)}\t{labels[v]}\n" for v in range(h.node_count)
    )


# --- reports -----------------------------------------------------------------

_REPORT_COLUMNS = [
    "instance",
    "algorithm",
    "seed",
    "objective",
    "lower_bound",
    "approx_ratio",
    "edge_satisfaction",
    "wall_time_sec",
]


def write_report_line(report: SolveReport, fh: IO[str]) -> None:
    fh.write(json.dumps(report.to_dict(), sort_keys=True) + "\n")


def read_reports(path: str | Path) -> list[SolveReport]:
    out = []
    for line in read_text(path).splitlines():
        if line.strip():
            out.append(report_from_dict(json.loads(line)))
    return out


def reports_to_csv(reports: Iterable[SolveReport], fh: IO[str]) -> None:
    writer = csv.DictWriter(fh, fieldnames=_REPORT_COLUMNS)
    writer.writeheader()
    for rep in reports:
        row = rep.to_dict()
        writer.writerow({col: row.get(col, "") for col in _REPORT_COLUMNS})


# --- other ingestion ---------------------------------------------------------


def parse_temporal(text: str) -> tuple[list[TemporalEdge], tuple[str, ...]]:
    """Parse ``<timestamp>\\t<u> <v> ...`` lines; returns edges plus the node
    id table in index order."""
    table = _NodeTable()
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ParseError("expected '<timestamp>\\t<nodes...>'", lineno)
        try:
            ts = float(parts[0])
        except ValueError:
            raise ParseError(f"bad timestamp {parts[0]!r}", lineno) from None
        names = parts[1].split()
        if len(names) < 2:
            raise ParseError("edge needs at least 2 nodes", lineno)
        ids = [table.get(name, lineno) for name in names]
        if len(set(ids)) != len(ids):
            raise DuplicateNodeInEdge(f"repeated node in {names}", lineno)
        edges.append(TemporalEdge(ts, tuple(sorted(ids))))
    names = tuple(table.index)
    return edges, names


def convert_parallel_files(
    edges_text: str, labels_text: str, weights_text: str | None = None
) -> LabeledHypergraph:
    """Convert the common two-parallel-file corpus layout (one hyperedge's
    node ids per line in one file, one integer category per line in the
    other, optional weights) into a native instance."""
    edge_lines = [ln for ln in edges_text.splitlines() if ln.strip()]
    label_lines = [ln for ln in labels_text.splitlines() if ln.strip()]
    if len(edge_lines) != len(label_lines):
        raise ParseError(
            f"{len(edge_lines)} edges but {len(label_lines)} labels"
        )
    weights = None
    if weights_text is not None:
        weight_lines = [ln for ln in weights_text.splitlines() if ln.strip()]
        if len(weight_lines) != len(edge_lines):
            raise ParseError(
                f"{len(edge_lines)} edges but {len(weight_lines)} weights"
            )
        weights = [float(w) for w in weight_lines]

    table = _NodeTable()
    edges = []
    max_label = 0
    for lineno, (edge_line, label_line) in enumerate(
        zip(edge_lines, label_lines), start=1
    ):
        names = edge_line.replace(",", " ").split()
        if len(names) < 2:
            raise ParseError("edge needs at least 2 nodes", lineno)
        ids = [table.get(name, lineno) for name in names]
        if len(set(ids)) != len(ids):
            raise DuplicateNodeInEdge(f"repeated node in {names}", lineno)
        try:
            label = int(label_line.strip())
        except ValueError:
            raise ParseError(f"bad label {label_line!r}", lineno) from None
        if label < 1:
            raise LabelOutOfRange(f"label {label} must be at least 1", lineno)
        max_label = max(max_label, label)
        weight = weights[lineno - 1] if weights else 1.0
        edges.append(HyperEdge(tuple(sorted(ids)), label, weight))
    n = len(table.index)
    return LabeledHypergraph(n, max_label, tuple(edges), table.names(n))
