"""Command-line surface: audit a dataset's order, generate scenarios, benchmark.

Exit codes: 0 success, 1 I/O or file-format failure, 2 invalid parameters,
3 when --fail-below is set and the audit p-value falls below the threshold.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import replace

import numpy as np

from .bench import METHODS, BenchmarkPlan, histogram, run_benchmark
from .generators import KINDS, ScenarioSpec, default_spec, generate
from .knn import METRICS, build_knn_graph
from .kstat import background_cdf, foreground_distances, ks_statistic
from .matrixio import FORMATS, MatrixFormatError, atomic_write_text, load_matrix, write_matrix
from .permute import kde_p_value, null_distribution
from .scores import datapoint_scores, default_window

_REPORT_EXIT_THRESHOLD = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="noniid",
        description="Statistical audit of whether a dataset's collection order matters.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    audit = sub.add_parser("audit", help="test one dataset for order dependence")
    audit.add_argument("--input", required=True, help="dataset file to audit")
    audit.add_argument("--format", choices=FORMATS, default="csv")
    audit.add_argument("--k", type=int, default=10, help="neighbor count (default 10)")
    audit.add_argument("--metric", choices=METRICS, default="euclidean")
    audit.add_argument("--permutations", type=int, default=25)
    audit.add_argument("--seed", type=int, default=0)
    audit.add_argument("--scores", action="store_true", help="add per-datapoint scores to the report")
    audit.add_argument("--score-window", type=int, default=None, help="odd smoothing window (default ~N/50)")
    audit.add_argument("--scores-out", default=None, help="also write scores as CSV (implies --scores)")
    audit.add_argument("--out", default=None, help="report file (default: stdout)")
    audit.add_argument("--fail-below", type=float, default=None, metavar="ALPHA",
                       help="exit 3 when the p-value is below ALPHA")
    audit.set_defaults(func=cmd_audit)

    gen = sub.add_parser("gen", help="generate a synthetic scenario dataset")
    gen.add_argument("--kind", choices=KINDS, required=True)
    gen.add_argument("--n", type=int, default=None)
    gen.add_argument("--dims", type=int, default=None)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True, help="dataset file to write")
    gen.add_argument("--format", choices=FORMATS, default="csv")
    gen.add_argument("--total-shift", type=float, default=None, help="mean_shift: total drift per dimension")
    gen.add_argument("--factor", type=float, default=None, help="variance_changepoint: std multiplier")
    gen.add_argument("--fraction", type=float, default=None, help="variance_changepoint: changepoint position")
    gen.add_argument("--alphas", type=float, nargs=3, default=None, metavar=("A1", "A2", "A3"),
                     help="ar_dependent: coefficients summing to 0")
    gen.add_argument("--classes", type=int, default=None, help="embedding scenarios: class count")
    gen.add_argument("--separation", type=float, default=None, help="embedding scenarios: cluster separation")
    gen.add_argument("--skew", type=float, default=None, help="class_drift: geometric end-weight decay")
    gen.add_argument("--block-len", type=int, default=None, help="contiguous_block: block length")
    gen.add_argument("--block-class", type=int, default=None, help="contiguous_block: class of the block")
    gen.set_defaults(func=cmd_gen)

    bench = sub.add_parser("bench", help="replicate-run p-value benchmark")
    source = bench.add_mutually_exclusive_group()
    source.add_argument("--paper-gaussian", action="store_true",
                        help="3 Gaussian scenarios x 3 methods x 50 replicates")
    source.add_argument("--plan", default=None, help="JSON plan file")
    source.add_argument("--scenario", action="append", choices=KINDS, default=None,
                        help="scenario kind at its default shape (repeatable)")
    bench.add_argument("--methods", nargs="+", choices=METHODS, default=None)
    bench.add_argument("--replicates", type=int, default=None)
    bench.add_argument("--base-seed", type=int, default=0)
    bench.add_argument("--bins", type=int, default=20)
    bench.add_argument("--no-shuffled-twin", action="store_true")
    bench.add_argument("--out", default=None, help="results file (default: stdout)")
    bench.set_defaults(func=cmd_bench)

    return parser


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text + "\n")
    else:
        atomic_write_text(out, text + "\n")


def cmd_audit(args) -> int:
    started = time.perf_counter()
    data = load_matrix(args.input, args.format)
    graph = build_knn_graph(data, k=args.k, metric=args.metric)
    observed = ks_statistic(foreground_distances(graph), background_cdf(graph.n))
    null = null_distribution(graph, p_count=args.permutations, seed=args.seed)
    p_value = kde_p_value(observed.statistic, null)

    report = {
        "method": "knn",
        "parameters": {
            "k": args.k,
            "metric": args.metric,
            "permutations": args.permutations,
            "seed": args.seed,
        },
        "n": graph.n,
        "dims": int(data.shape[1]),
        "statistic": observed.statistic,
        "p_value": p_value,
    }

    want_scores = args.scores or args.scores_out is not None
    if want_scores:
        window = default_window(graph.n) if args.score_window is None else args.score_window
        point = datapoint_scores(graph, window=window)
        report["score_window"] = window
        report["scores"] = point.scores.tolist()
        report["smoothed_scores"] = point.smoothed.tolist()
        if args.scores_out is not None:
            lines = ["index,score,smoothed"]
            lines += [
                f"{i},{float(point.scores[i])!r},{float(point.smoothed[i])!r}"
                for i in range(graph.n)
            ]
            atomic_write_text(args.scores_out, "\n".join(lines) + "\n")

    report["duration_seconds"] = time.perf_counter() - started
    _emit(json.dumps(report, indent=2, sort_keys=True), args.out)

    if args.fail_below is not None and p_value < args.fail_below:
        return _REPORT_EXIT_THRESHOLD
    return 0


_GEN_PARAM_FLAGS = (
    ("total_shift", "total_shift"),
    ("factor", "factor"),
    ("fraction", "fraction"),
    ("alphas", "alphas"),
    ("classes", "classes"),
    ("separation", "separation"),
    ("skew", "skew"),
    ("block_len", "block_len"),
    ("block_class", "block_class"),
)


def cmd_gen(args) -> int:
    params = {}
    for attr, name in _GEN_PARAM_FLAGS:
        value = getattr(args, attr)
        if value is not None:
            params[name] = tuple(value) if isinstance(value, list) else value
    spec = default_spec(args.kind, n=args.n, dims=args.dims, seed=args.seed, **params)
    write_matrix(args.out, generate(spec), args.format)
    return 0


def _plan_from_file(path: str) -> tuple[BenchmarkPlan, int | None]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not valid JSON ({exc})") from None
    try:
        scenarios = tuple(
            ScenarioSpec(
                kind=s["kind"],
                n=int(s.get("n") or default_spec(s["kind"]).n),
                dims=int(s.get("dims") or default_spec(s["kind"]).dims),
                params=dict(s.get("params", {})),
                seed=int(s.get("seed", 0)),
            )
            for s in raw["scenarios"]
        )
        plan = BenchmarkPlan(
            scenarios=scenarios,
            methods=tuple(raw.get("methods", ["knn"])),
            replicates=int(raw.get("replicates", 50)),
            include_shuffled_twin=bool(raw.get("include_shuffled_twin", True)),
            base_seed=int(raw.get("base_seed", 0)),
        )
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValueError(f"{path}: malformed benchmark plan ({exc!r})") from None
    return plan, raw.get("bins")


def _plan_from_flags(args) -> BenchmarkPlan:
    if args.paper_gaussian:
        scenarios = tuple(
            default_spec(kind) for kind in ("mean_shift", "variance_changepoint", "ar_dependent")
        )
        methods = tuple(METHODS)
        replicates = 50
    else:
        kinds = args.scenario or ["iid_mixture"]
        scenarios = tuple(default_spec(kind) for kind in kinds)
        methods = ("knn",)
        replicates = 50
    return BenchmarkPlan(
        scenarios=scenarios,
        methods=tuple(args.methods) if args.methods else methods,
        replicates=args.replicates if args.replicates is not None else replicates,
        include_shuffled_twin=not args.no_shuffled_twin,
        base_seed=args.base_seed,
    )


def cmd_bench(args) -> int:
    if args.plan is not None:
        plan, plan_bins = _plan_from_file(args.plan)
        if args.methods:
            plan = replace(plan, methods=tuple(args.methods))
        if args.replicates is not None:
            plan = replace(plan, replicates=args.replicates)
        bins = plan_bins or args.bins
    else:
        plan = _plan_from_flags(args)
        bins = args.bins
    if bins < 1:
        raise ValueError(f"need at least 1 histogram bin, got {bins}")

    result = run_benchmark(plan)
    payload = {
        "replicates": result.replicates,
        "base_seed": result.base_seed,
        "methods": list(plan.methods),
        "scenarios": [
            {"kind": s.kind, "n": s.n, "dims": s.dims, "params": s.params} for s in plan.scenarios
        ],
        "bins": bins,
        "entries": [
            {
                "scenario": e.scenario,
                "method": e.method,
                "variant": e.variant,
                "p_values": list(e.p_values),
                "fraction_below_05": e.fraction_below_05,
                "median": e.median,
                "histogram": histogram(np.asarray(e.p_values), bins),
            }
            for e in result.entries
        ],
    }
    _emit(json.dumps(payload, indent=2, sort_keys=True), args.out)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MatrixFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
