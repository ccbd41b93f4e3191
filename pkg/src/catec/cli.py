"""Command-line entry point: solve, gen, eval, filter, bench, convert.

Configuration comes from flags, optionally seeded by a TOML config file
(flags win).  Runs are deterministic for a fixed (config, seed): the
clustering output is byte-identical across repeats; report rows repeat too
except for the recorded wall time.  The LP backend is picked by --lp-solver,
falling back to the CATEC_LP_SOLVER environment variable (``embedded`` or
``external:<path>``).

Exit codes: 0 success, 1 unreadable/unparseable input, 2 algorithm
incompatible with the instance, 3 solver failure.
"""

from __future__ import annotations

import argparse
import json
import subprocess
import sys
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from pathlib import Path

import numpy as np

from . import baselines, io_formats, lp, metrics, multiway, synthetic, two_color
from .errors import (
    CatecError,
    InfeasibleLp,
    IterationLimit,
    ParseError,
    WildcardUnsupported,
    WrongArity,
    WrongCategoryCount,
)
from .hypergraph import LabeledHypergraph, objective, reduce_to_labeled_graph, validate
from .reports import SolveReport, approx_ratio, report_from_dict

ALGORITHMS = ("exact2", "lp-round", "lp-rand", "isocut", "mv", "cb", "lcb")

EXIT_PARSE = 1
EXIT_INCOMPATIBLE = 2
EXIT_SOLVER = 3


def _load_instance(path: str) -> LabeledHypergraph:
    h = io_formats.parse_hypergraph(io_formats.read_text(path))
    issues = validate(h)
    if issues:
        raise ParseError(f"invalid instance {path}: " + "; ".join(issues))
    return h


def _solve_one(
    h: LabeledHypergraph,
    alg: str,
    seed: int,
    t: float | None,
    want_bound: bool,
    lp_solver: str | None,
    instance_name: str | None = None,
) -> tuple[list[int], SolveReport]:
    rng = np.random.default_rng(seed)
    start = time.perf_counter()
    lb = None
    if alg == "exact2":
        y, _ = two_color.solve_two_color(h)
        labels = list(y.labels)
    elif alg in ("lp-round", "lp-rand"):
        sol = lp.solve_lp(lp.build_lp(h), solver=lp_solver)
        lb = lp.lower_bound(sol)
        if alg == "lp-round":
            y = lp.round_deterministic(sol)
        else:
            threshold = t if t is not None else lp.theorem_threshold(h.k, h.r)
            y = lp.round_randomized(sol, threshold, rng)
        labels = list(y.labels)
    elif alg == "isocut":
        y, _ = multiway.cat_isocut(h)
        labels = list(y.labels)
    elif alg == "mv":
        labels = list(baselines.majority_vote(h).labels)
    elif alg in ("cb", "lcb"):
        g = reduce_to_labeled_graph(h)
        grow = baselines.chromatic_balls if alg == "cb" else baselines.lazy_chromatic_balls
        labels = list(baselines.merge_same_color(grow(g, rng)).labels)
    else:
        raise ValueError(f"unknown algorithm {alg!r}")

    if want_bound and lb is None:
        sol = lp.solve_lp(lp.build_lp(h), solver=lp_solver)
        lb = lp.lower_bound(sol)
    obj = objective(h, labels)
    report = SolveReport(
        algorithm=alg,
        objective=obj,
        lower_bound=lb,
        approx_ratio=approx_ratio(obj, lb) if lb is not None else None,
        edge_satisfaction=metrics.edge_satisfaction(h, labels) if h.edges else None,
        wall_time_sec=time.perf_counter() - start,
        seed=seed,
        instance=instance_name,
    )
    return labels, report


def cmd_solve(args) -> int:
    h = _load_instance(args.input)
    if args.alg == "exact2" and h.category_count != 2:
        raise WrongCategoryCount("exact2 needs a 2-category instance")
    labels, report = _solve_one(
        h, args.alg, args.seed, args.t, args.bound, args.lp_solver,
        instance_name=args.input,
    )
    if args.output:
        Path(args.output).write_text(io_formats.write_clustering(h, labels))
    if args.report:
        with open(args.report, "a", encoding="utf-8") as fh:
            io_formats.write_report_line(report, fh)
    print(json.dumps(report.to_dict(), sort_keys=True))
    return 0


def cmd_gen(args) -> int:
    out = Path(args.out)
    if args.model == "time-bins":
        edges, names = io_formats.parse_temporal(io_formats.read_text(args.input))
        h = synthetic.bin_timestamps(edges, args.k, node_count=len(names))
        h = LabeledHypergraph(h.node_count, h.category_count, h.edges, names)
        out.write_text(io_formats.write_hypergraph(h))
        print(f"wrote {out} ({h.node_count} nodes, {len(h.edges)} edges, k={h.k})")
        return 0

    params = synthetic.ChromaticModelParams(
        n=args.n, L=args.L, K=args.K, p=args.p, q=args.q, w=args.w, r=args.r
    )
    rng = np.random.default_rng(args.seed)
    if args.model == "chromatic-graph":
        h, truth = synthetic.gen_chromatic_graph(params, rng)
    else:
        h, truth = synthetic.gen_chromatic_hypergraph(params, rng)
    out.write_text(io_formats.write_hypergraph(h))
    truth_path = out.with_suffix(out.suffix + ".truth")
    truth_path.write_text(io_formats.write_clustering(h, truth.node_colors()))
    print(
        f"wrote {out} ({h.node_count} nodes, {len(h.edges)} edges, k={h.k}) "
        f"and {truth_path}"
    )
    return 0


def cmd_eval(args) -> int:
    h = _load_instance(args.instance)
    y = io_formats.parse_clustering(io_formats.read_text(args.clustering), h)
    obj = objective(h, y)
    report = metrics.EvalReport(
        objective=obj,
        edge_satisfaction=metrics.edge_satisfaction(h, y),
    )
    if args.bound:
        sol = lp.solve_lp(lp.build_lp(h), solver=args.lp_solver)
        report.lower_bound = lp.lower_bound(sol)
        report.approx_ratio = approx_ratio(obj, report.lower_bound)
    if args.truth:
        truth = io_formats.parse_clustering(io_formats.read_text(args.truth), h)
        report.node_accuracy = metrics.node_accuracy(y, truth)
        report.ari = metrics.ari(y, truth)
        report.f_score = metrics.pairwise_f_score(y, truth)
    if h.max_edge_size == 2 and all(e.size == 2 for e in h.edges):
        report.ncut = metrics.normalized_cut(h, y)
    if args.temporal:
        edges, _ = io_formats.parse_temporal(io_formats.read_text(args.temporal))
        report.avg_time_diff = metrics.avg_time_diff(edges, y)
    payload = report.to_dict()
    if args.out:
        Path(args.out).write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    width = max(len(key) for key in payload)
    for key in sorted(payload):
        print(f"{key:<{width}}  {payload[key]:.6g}")
    return 0


def cmd_filter(args) -> int:
    h = _load_instance(args.input)
    filtered, removed = metrics.degree_filter(h, args.beta)
    Path(args.output).write_text(io_formats.write_hypergraph(filtered))
    print(
        f"removed {len(removed)} nodes and {len(h.edges) - len(filtered.edges)} "
        f"edges at beta={args.beta:g}"
    )
    return 0


def cmd_convert(args) -> int:
    weights = io_formats.read_text(args.weights) if args.weights else None
    h = io_formats.convert_parallel_files(
        io_formats.read_text(args.edges),
        io_formats.read_text(args.labels),
        weights,
    )
    Path(args.out).write_text(io_formats.write_hypergraph(h))
    print(f"wrote {args.out} ({h.node_count} nodes, {len(h.edges)} edges, k={h.k})")
    return 0


def _bench_row(row: tuple) -> dict:
    instance_path, alg, seed, t, want_bound, lp_solver = row
    h = _load_instance(instance_path)
    _, report = _solve_one(
        h, alg, seed, t, want_bound, lp_solver, instance_name=instance_path
    )
    return report.to_dict()


def cmd_bench(args) -> int:
    suite_text = io_formats.read_text(args.suite)
    if args.suite.endswith(".json"):
        suite = json.loads(suite_text)
    else:
        try:
            import tomllib
        except ImportError:
            import tomli as tomllib
        suite = tomllib.loads(suite_text)
    instances = suite["instances"]
    algorithms = suite.get("algorithms", list(ALGORITHMS))
    seeds = suite.get("seeds", [0])
    t = suite.get("t")
    want_bound = bool(suite.get("bound", False))

    done: set[tuple] = set()
    existing = []
    if Path(args.out).exists():
        existing = io_formats.read_reports(args.out)
        done = {(r.instance, r.algorithm, r.seed) for r in existing}

    rows = [
        (inst, alg, seed, t, want_bound, args.lp_solver)
        for inst in instances
        for alg in algorithms
        for seed in seeds
        if (inst, alg, seed) not in done
    ]
    print(f"{len(rows)} rows to run ({len(done)} already present)")
    new_reports = []
    with open(args.out, "a", encoding="utf-8") as fh:
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                futures = {pool.submit(_bench_row, row): row for row in rows}
                for fut in as_completed(futures):
                    rep = report_from_dict(fut.result())
                    new_reports.append(rep)
                    io_formats.write_report_line(rep, fh)
                    fh.flush()
        else:
            for row in rows:
                rep = report_from_dict(_bench_row(row))
                new_reports.append(rep)
                io_formats.write_report_line(rep, fh)
                fh.flush()
    if args.emit_csv:
        with open(args.emit_csv, "w", encoding="utf-8", newline="") as fh:
            io_formats.reports_to_csv(existing + new_reports, fh)
    return 0


def _apply_config(args: argparse.Namespace, hard_defaults: dict) -> None:
    """Fill unset (None) flags from the TOML config, then hard defaults."""
    config = {}
    if getattr(args, "config", None):
        try:
            import tomllib
        except ImportError:
            import tomli as tomllib
        with open(args.config, "rb") as fh:
            config = tomllib.load(fh)
    for key in vars(args):
        if getattr(args, key) is not None or key.startswith("_"):
            continue
        if key in config or key.replace("_", "-") in config:
            setattr(args, key, config.get(key, config.get(key.replace("_", "-"))))
        elif key in hard_defaults:
            setattr(args, key, hard_defaults[key])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catec",
        description="Cluster edge-labeled graphs and hypergraphs, one cluster per category.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("solve", help="run one algorithm on one instance")
    ps.add_argument("--alg", required=True, choices=ALGORITHMS)
    ps.add_argument("--input", required=True)
    ps.add_argument("--output", help="clustering output path")
    ps.add_argument("--report", help="JSON-lines report path (appended)")
    ps.add_argument("--seed", type=int, default=None)
    ps.add_argument("--t", type=float, default=None, help="rounding threshold override")
    ps.add_argument("--bound", action="store_true", default=None,
                    help="also compute the LP lower bound")
    ps.add_argument("--lp-solver", default=None,
                    help="embedded or external:<path>; default from CATEC_LP_SOLVER")
    ps.add_argument("--config", help="TOML config file; flags win")
    ps.set_defaults(func=cmd_solve, _defaults={"seed": 0, "bound": False})

    pg = sub.add_parser("gen", help="generate synthetic instances")
    pg.add_argument("model", choices=["chromatic-graph", "chromatic-hypergraph", "time-bins"])
    pg.add_argument("--n", type=int, default=100)
    pg.add_argument("--L", type=int, default=5)
    pg.add_argument("--K", type=int, default=5)
    pg.add_argument("--p", type=float, default=0.05)
    pg.add_argument("--q", type=float, default=0.01)
    pg.add_argument("--w", type=float, default=0.0)
    pg.add_argument("--r", type=int, default=2)
    pg.add_argument("--k", type=int, default=8, help="bins for time-bins")
    pg.add_argument("--input", help="temporal edge file for time-bins")
    pg.add_argument("--seed", type=int, default=0)
    pg.add_argument("--out", required=True)
    pg.set_defaults(func=cmd_gen, _defaults={})

    pe = sub.add_parser("eval", help="score a clustering against an instance")
    pe.add_argument("--instance", required=True)
    pe.add_argument("--clustering", required=True)
    pe.add_argument("--truth", help="ground-truth clustering file")
    pe.add_argument("--temporal", help="temporal edge file for time dispersion")
    pe.add_argument("--bound", action="store_true", help="compute the LP lower bound")
    pe.add_argument("--lp-solver", default=None)
    pe.add_argument("--out", help="write the report as JSON here")
    pe.set_defaults(func=cmd_eval, _defaults={})

    pf = sub.add_parser("filter", help="drop nodes with guaranteed mistakes above beta")
    pf.add_argument("--input", required=True)
    pf.add_argument("--beta", type=float, required=True)
    pf.add_argument("--output", required=True)
    pf.set_defaults(func=cmd_filter, _defaults={})

    pb = sub.add_parser("bench", help="run a suite of (instance, algorithm, seed) rows")
    pb.add_argument("--suite", required=True, help="TOML or JSON suite file")
    pb.add_argument("--out", required=True, help="JSON-lines output (resumable)")
    pb.add_argument("--jobs", type=int, default=1)
    pb.add_argument("--emit-csv", help="also write a CSV summary here")
    pb.add_argument("--lp-solver", default=None)
    pb.set_defaults(func=cmd_bench, _defaults={})

    pc = sub.add_parser("convert", help="convert parallel hyperedge/label files")
    pc.add_argument("--edges", required=True)
    pc.add_argument("--labels", required=True)
    pc.add_argument("--weights")
    pc.add_argument("--out", required=True)
    pc.set_defaults(func=cmd_convert, _defaults={})

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _apply_config(args, getattr(args, "_defaults", {}))
    try:
        return args.func(args)
    except (ParseError, FileNotFoundError, OSError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (WrongArity, WrongCategoryCount, WildcardUnsupported) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCOMPATIBLE
    except (InfeasibleLp, IterationLimit, subprocess.CalledProcessError, CatecError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
