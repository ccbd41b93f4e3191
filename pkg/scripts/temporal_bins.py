#!/usr/bin/env python3
"""Temporal community detection by timestamp binning.

Edges of a temporal network are labeled by time window (k near-equal bins in
time order); clustering the labeled graph then groups nodes that interact
within a short period.  For each k the script reports edge satisfaction,
normalized cut, and the interior-edge time dispersion for the LP rounding
and for majority vote.  Without --input, a small synthetic message network
with planted temporal communities is used.

Example:
    python scripts/temporal_bins.py --bins 2 4 8 16 --out temporal.csv
"""

import argparse
import csv
import sys

import numpy as np

from catec.baselines import majority_vote
from catec.io_formats import parse_temporal, read_text
from catec.lp import build_lp, round_deterministic, solve_lp
from catec.metrics import avg_time_diff, edge_satisfaction, normalized_cut
from catec.synthetic import TemporalEdge, bin_timestamps


def synthetic_messages(rng, n=120, events=6, edges_per_event=80, background=60):
    """Groups of nodes that exchange many messages inside a short window."""
    edges = []
    for event in range(events):
        members = rng.choice(n, size=max(4, n // events), replace=False)
        start = event / events
        for _ in range(edges_per_event):
            u, v = rng.choice(members, size=2, replace=False)
            ts = start + rng.random() / events
            edges.append(TemporalEdge(float(ts), (int(u), int(v))))
    for _ in range(background):
        u, v = rng.choice(n, size=2, replace=False)
        edges.append(TemporalEdge(float(rng.random()), (int(u), int(v))))
    return edges, n


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--input", help="temporal edge file: <timestamp>\\t<u> <v>")
    parser.add_argument("--bins", type=int, nargs="+", default=[2, 4, 8])
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default="-", help="CSV path, - for stdout")
    args = parser.parse_args(argv)

    if args.input:
        edges, names = parse_temporal(read_text(args.input))
        node_count = len(names)
    else:
        edges, node_count = synthetic_messages(np.random.default_rng(args.seed))

    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    writer = csv.writer(fh)
    writer.writerow(
        ["k", "algorithm", "edge_satisfaction", "normalized_cut", "avg_time_diff"]
    )
    for k in args.bins:
        h = bin_timestamps(edges, k, node_count=node_count)
        sol = solve_lp(build_lp(h))
        for name, y in (
            ("lp-round", round_deterministic(sol)),
            ("mv", majority_vote(h)),
        ):
            writer.writerow(
                [k, name,
                 f"{edge_satisfaction(h, y):.4f}",
                 f"{normalized_cut(h, y):.4f}",
                 f"{avg_time_diff(edges, y):.4f}"]
            )
        fh.flush()
    if fh is not sys.stdout:
        fh.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
