"""Command-line interface.

Subcommands: ``compute`` (curvature report), ``compare`` (bound vs baseline
agreement), ``bench`` (timing comparison), ``generate`` (synthetic
instances). Outputs are CSV/JSON files plus static SVG plots in the chosen
output directory. Exit codes: 0 success, 2 usage errors, 1 runtime failures.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import bench, plots, reports, transport
from .curvature import AGG_KINDS, ESTIMATOR_KINDS, compute_report
from .generators import (
    GeneratorError,
    HcmSpec,
    HsbmSpec,
    generate_hcm,
    generate_hsbm,
    parse_generator_spec,
)
from .hypergraph import Hypergraph, ParseError, parse_hyperedge_list, serialize_hyperedge_list
from .measures import MEASURE_KINDS


class UsageError(Exception):
    """Bad invocation: unknown value, missing file, invalid combination."""


def _load_dataset(path: str, remap_ids: bool) -> Hypergraph:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"dataset file not found: {path}")
    with open(p, encoding="utf-8") as fh:
        return parse_hyperedge_list(fh, remap_ids=remap_ids).hypergraph


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _check_alpha(alpha: float | None) -> float | None:
    if alpha is not None and not 0.0 < alpha < 1.0:
        raise UsageError(f"--alpha must lie strictly between 0 and 1, got {alpha}")
    return alpha


def _add_sinkhorn_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--reg", type=float, default=transport.DEFAULT_SINKHORN_REG,
                     help="Sinkhorn regularization on max-normalized costs")
    sub.add_argument("--iters", type=int, default=transport.DEFAULT_SINKHORN_ITERS,
                     help="Sinkhorn iteration cap")
    sub.add_argument("--threshold", type=float, default=transport.DEFAULT_SINKHORN_THRESHOLD,
                     help="Sinkhorn scaling-vector convergence threshold")


def _cmd_compute(args) -> int:
    h = _load_dataset(args.dataset, args.remap_ids)
    report = compute_report(
        h, measure=args.measure, agg=args.agg, estimator=args.estimator,
        alpha=_check_alpha(args.alpha), reg=args.reg, iters=args.iters,
        threshold=args.threshold, count_singletons=args.count_singleton_edges,
    )
    out = _out_dir(args)
    reports.write_edge_csv(report.edges, out / "edges.csv")
    reports.write_node_csv(report.nodes, out / "nodes.csv")
    skipped_edges = sum(1 for r in report.edges if r.skip_reason)
    skipped_nodes = sum(1 for r in report.nodes if r.skip_reason)
    doc = {
        "kind": "curvature-report",
        **report.metadata,
        "dataset": args.dataset,
        "edges_reported": len(report.edges),
        "edges_skipped": skipped_edges,
        "nodes_reported": len(report.nodes),
        "nodes_skipped": skipped_nodes,
        "total_time_ns": sum(r.time_ns for r in report.edges),
    }
    reports.write_json(doc, out / "summary.json")
    print(f"wrote {out / 'edges.csv'}, {out / 'nodes.csv'}, {out / 'summary.json'}")
    return 0


def _cmd_compare(args) -> int:
    h = _load_dataset(args.dataset, args.remap_ids)
    result = bench.run_agreement(
        h, dataset=args.dataset, measure=args.measure, agg=args.agg,
        baseline=args.baseline, estimator=args.estimator, reg=args.reg,
        iters=args.iters, threshold=args.threshold,
        support_cap=args.support_cap, bins=args.bins, workers=args.workers,
    )
    out = _out_dir(args)
    reports.write_samples_csv(
        result.samples, ("edge_id", "bound_curvature", "baseline_curvature"),
        out / "agreement.csv",
    )
    xs = [s for _, s, _ in result.samples]
    ys = [b for _, _, b in result.samples]
    plots.write_svg(
        plots.scatter_svg(
            xs, ys, xlabel=f"curvature ({args.estimator})",
            ylabel=f"curvature ({args.baseline})",
            title=f"edge curvature agreement: {Path(args.dataset).name}",
            trend=(result.trend_slope, result.trend_intercept),
        ),
        out / "scatter.svg",
    )
    plots.write_svg(
        plots.dual_histogram_svg(
            result.bin_edges, result.bound_counts, result.baseline_counts,
            label_a=args.estimator, label_b=args.baseline,
            xlabel="edge curvature",
            title=f"curvature distribution: {Path(args.dataset).name}",
        ),
        out / "histogram.svg",
    )
    reports.write_json(result.to_doc(), out / "summary.json")
    print(
        f"{len(result.samples)} edges, spearman={result.spearman:.4f}, "
        f"mean shift={result.mean_shift:.4f}; wrote {out}/"
    )
    return 0


def _cmd_bench(args) -> int:
    h = _load_dataset(args.dataset, args.remap_ids)
    result = bench.run_timing(
        h, dataset=args.dataset, measure=args.measure, agg=args.agg,
        reg=args.reg, iters=args.iters, threshold=args.threshold,
        workers=args.workers, warmup=args.warmup,
    )
    out = _out_dir(args)
    reports.write_json(result.to_doc(), out / "timing.json")
    print(
        f"{result.pair_count} pairs: bound {result.bound_total_ns / 1e6:.2f} ms, "
        f"sinkhorn {result.sinkhorn_total_ns / 1e6:.2f} ms, "
        f"speedup {result.speedup:.1f}x; wrote {out / 'timing.json'}"
    )
    return 0


def _cmd_generate(args) -> int:
    spec_path = Path(args.spec)
    if not spec_path.is_file():
        raise UsageError(f"spec file not found: {args.spec}")
    try:
        spec = parse_generator_spec(spec_path.read_text(encoding="utf-8"), model=args.model)
    except GeneratorError as exc:
        raise UsageError(str(exc)) from exc
    if args.seed is not None:
        if isinstance(spec, HcmSpec):
            spec = HcmSpec(spec.degrees, spec.cardinalities, seed=args.seed)
        else:
            spec = HsbmSpec(spec.node_community_sizes, spec.edge_community_sizes,
                            spec.affinity, seed=args.seed)
    result = generate_hcm(spec) if isinstance(spec, HcmSpec) else generate_hsbm(spec)
    header = [
        f"model={args.model} seed={spec.seed} rng={result.rng_algorithm}",
        f"n={result.hypergraph.n} m={result.hypergraph.m} "
        f"collapsed={result.collapsed_duplicates} dropped_empty={result.dropped_empty_edges}",
    ]
    text = serialize_hyperedge_list(result.hypergraph, header=header)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orcbound",
        description="Curvature lower bounds for graphs and hypergraphs via "
                    "closed-form Wasserstein upper bounds.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("compute", help="per-edge and per-node curvature report")
    p.add_argument("dataset", help="hyperedge-list file")
    p.add_argument("--measure", choices=MEASURE_KINDS, default="en")
    p.add_argument("--agg", choices=AGG_KINDS, default="a")
    p.add_argument("--estimator", choices=ESTIMATOR_KINDS, default="bound")
    p.add_argument("--alpha", type=float, default=None, help="laziness in (0,1)")
    p.add_argument("--remap-ids", action="store_true",
                   help="renumber sparse vertex ids densely, keeping a label table")
    p.add_argument("--count-singleton-edges", action="store_true",
                   help="include singleton hyperedges in node-curvature denominators")
    p.add_argument("--out", default="orcbound_out")
    _add_sinkhorn_flags(p)
    p.set_defaults(func=_cmd_compute)

    p = subs.add_parser("compare", help="agreement between bound and baseline curvatures")
    p.add_argument("dataset")
    p.add_argument("--measure", choices=MEASURE_KINDS, default="en")
    p.add_argument("--agg", choices=AGG_KINDS, default="a")
    p.add_argument("--estimator", choices=ESTIMATOR_KINDS, default="bound")
    p.add_argument("--baseline", choices=ESTIMATOR_KINDS, default="exact")
    p.add_argument("--support-cap", type=int, default=transport.DEFAULT_SUPPORT_CAP)
    p.add_argument("--bins", type=int, default=20)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--remap-ids", action="store_true")
    p.add_argument("--out", default="orcbound_out")
    _add_sinkhorn_flags(p)
    p.set_defaults(func=_cmd_compare)

    p = subs.add_parser("bench", help="time the W1 phase: bound vs Sinkhorn")
    p.add_argument("dataset")
    p.add_argument("--measure", choices=MEASURE_KINDS, default="we")
    p.add_argument("--agg", choices=AGG_KINDS, default="a")
    p.add_argument("--workers", type=int, default=1,
                   help="1 pins the workload to a single worker for low noise")
    p.add_argument("--warmup", type=int, default=32)
    p.add_argument("--remap-ids", action="store_true")
    p.add_argument("--out", default="orcbound_out")
    _add_sinkhorn_flags(p)
    p.set_defaults(func=_cmd_bench)

    p = subs.add_parser("generate", help="generate a synthetic hypergraph")
    p.add_argument("model", choices=("hcm", "hsbm"))
    p.add_argument("--spec", required=True, help="key-value spec file")
    p.add_argument("--seed", type=int, default=None, help="overrides the spec file seed")
    p.add_argument("--out", default="-", help="output file, '-' for stdout")
    p.set_defaults(func=_cmd_generate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ParseError, GeneratorError, transport.TransportError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
