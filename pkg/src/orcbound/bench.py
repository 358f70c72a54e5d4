"""Benchmark harness: timing vs the Sinkhorn baseline, agreement against the
exact oracle, and support-size scaling of the bound estimator.

Timing covers only the W1-evaluation phase: measures and transport problems
are materialized before the clock starts, both estimators run the identical
pair workload, and a warm-up pass is excluded from totals. Totals are the
sums of the per-pair monotonic-clock samples, so the reported aggregates
reconcile with the per-record data by construction.
"""

from __future__ import annotations

import platform
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import stats

from . import transport
from .bound import w1_upper_bound
from .curvature import SKIP_SINGLETON, PairwiseW1
from .generators import HcmSpec, generate_hcm
from .hypergraph import AdjacencyIndex, Hypergraph, build_adjacency
from .spaces import GraphSpace


class BenchError(RuntimeError):
    """Benchmark could not be carried out on the given input."""


@dataclass
class BenchResult:
    """Wall-time comparison of the two W1 estimators on one dataset."""

    dataset: str
    measure: str
    agg: str
    pair_count: int
    excluded_pairs: int
    bound_total_ns: int
    sinkhorn_total_ns: int
    bound_per_pair_ns: list[int]
    sinkhorn_per_pair_ns: list[int]
    speedup: float
    sinkhorn_reg: float
    sinkhorn_iters: int
    sinkhorn_threshold: float
    environment: dict

    def to_doc(self) -> dict:
        return {
            "kind": "timing",
            "dataset": self.dataset,
            "measure": self.measure,
            "agg": self.agg,
            "pair_count": self.pair_count,
            "excluded_pairs": self.excluded_pairs,
            "speedup": self.speedup,
            "bound": {
                "total_ns": self.bound_total_ns,
                "per_pair_ns": self.bound_per_pair_ns,
            },
            "sinkhorn": {
                "total_ns": self.sinkhorn_total_ns,
                "per_pair_ns": self.sinkhorn_per_pair_ns,
                "reg": self.sinkhorn_reg,
                "iters": self.sinkhorn_iters,
                "threshold": self.sinkhorn_threshold,
            },
            "environment": self.environment,
        }


@dataclass
class AgreementResult:
    """Paired per-edge curvatures from the bound and a baseline estimator."""

    dataset: str
    measure: str
    agg: str
    baseline: str
    samples: list[tuple[int, float, float]]  # (edge_id, bound, baseline)
    pearson: float
    spearman: float
    mean_shift: float  # baseline mean - bound mean
    trend_slope: float
    trend_intercept: float
    bin_edges: list[float]
    bound_counts: list[int]
    baseline_counts: list[int]
    skipped_edges: int

    def to_doc(self) -> dict:
        return {
            "kind": "agreement",
            "dataset": self.dataset,
            "measure": self.measure,
            "agg": self.agg,
            "baseline": self.baseline,
            "n_samples": len(self.samples),
            "skipped_edges": self.skipped_edges,
            "pearson": self.pearson,
            "spearman": self.spearman,
            "mean_shift": self.mean_shift,
            "trend": {"slope": self.trend_slope, "intercept": self.trend_intercept},
            "histogram": {
                "bin_edges": self.bin_edges,
                "bound_counts": self.bound_counts,
                "baseline_counts": self.baseline_counts,
            },
        }


@dataclass
class ScalingResult:
    """Per-pair bound cost vs total support size, with the log-log OLS fit."""

    support_sizes: list[int]
    times_ns: list[int]
    slope: float
    intercept: float

    def to_doc(self) -> dict:
        return {
            "kind": "scaling",
            "support_sizes": self.support_sizes,
            "times_ns": self.times_ns,
            "loglog_slope": self.slope,
            "loglog_intercept": self.intercept,
        }


def environment_info(workers: int) -> dict:
    return {
        "python": sys.version.split()[0],
        "implementation": platform.python_implementation(),
        "numpy": np.__version__,
        "machine": platform.machine(),
        "workers": workers,
    }


def pair_workload(h: Hypergraph, adj: AdjacencyIndex | None = None) -> list[tuple[int, int]]:
    """Unique adjacent pairs drawn from hyperedges of cardinality >= 2, sorted."""
    pairs: set[tuple[int, int]] = set()
    for e in h.edges:
        members = sorted(e)
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                pairs.add((members[a], members[b]))
    return sorted(pairs)


def _map_indexed(fn: Callable, items: Sequence, workers: int) -> list:
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def run_timing(
    h: Hypergraph,
    dataset: str = "",
    measure: str = "we",
    agg: str = "a",
    reg: float = transport.DEFAULT_SINKHORN_REG,
    iters: int = transport.DEFAULT_SINKHORN_ITERS,
    threshold: float = transport.DEFAULT_SINKHORN_THRESHOLD,
    workers: int = 1,
    warmup: int = 32,
) -> BenchResult:
    """Time both estimators over the identical pair workload.

    A Sinkhorn failure on a pair drops that pair from both sides and is
    counted in ``excluded_pairs``. One worker gives the lowest-noise numbers;
    more workers only shard the workload.
    """
    adj = build_adjacency(h)
    space = GraphSpace(adj)
    pairs = pair_workload(h, adj)
    evaluator = PairwiseW1(h, adj, measure=measure, estimator="bound")
    prepared = []
    for i, j in pairs:
        mu_i = evaluator.measure_at(i)
        mu_j = evaluator.measure_at(j)
        prepared.append((i, j, mu_i, mu_j, transport.build_problem(mu_i, mu_j, space)))
    if not prepared:
        return BenchResult(
            dataset=dataset, measure=measure, agg=agg, pair_count=0, excluded_pairs=0,
            bound_total_ns=0, sinkhorn_total_ns=0, bound_per_pair_ns=[],
            sinkhorn_per_pair_ns=[], speedup=float("nan"), sinkhorn_reg=reg,
            sinkhorn_iters=iters, sinkhorn_threshold=threshold,
            environment=environment_info(workers),
        )

    for i, j, mu_i, mu_j, problem in prepared[:warmup]:
        w1_upper_bound(i, j, mu_i, mu_j, space, validate=False)
        try:
            transport.sinkhorn_w1(problem, reg=reg, max_iters=iters, threshold=threshold)
        except transport.TransportError:
            pass

    def timed_sinkhorn(item):
        _, _, _, _, problem = item
        t0 = time.perf_counter_ns()
        try:
            transport.sinkhorn_w1(problem, reg=reg, max_iters=iters, threshold=threshold)
        except transport.TransportError:
            return None
        return time.perf_counter_ns() - t0

    sink_times = _map_indexed(timed_sinkhorn, prepared, workers)
    keep = [k for k, t in enumerate(sink_times) if t is not None]
    excluded = len(prepared) - len(keep)

    def timed_bound(item):
        i, j, mu_i, mu_j, _ = item
        t0 = time.perf_counter_ns()
        w1_upper_bound(i, j, mu_i, mu_j, space, validate=False)
        return time.perf_counter_ns() - t0

    bound_times = _map_indexed(timed_bound, [prepared[k] for k in keep], workers)
    sink_kept = [sink_times[k] for k in keep]
    bound_total = sum(bound_times)
    sink_total = sum(sink_kept)
    speedup = sink_total / bound_total if bound_total > 0 else float("nan")
    return BenchResult(
        dataset=dataset, measure=measure, agg=agg,
        pair_count=len(keep), excluded_pairs=excluded,
        bound_total_ns=bound_total, sinkhorn_total_ns=sink_total,
        bound_per_pair_ns=bound_times, sinkhorn_per_pair_ns=sink_kept,
        speedup=speedup, sinkhorn_reg=reg, sinkhorn_iters=iters,
        sinkhorn_threshold=threshold, environment=environment_info(workers),
    )


def _correlations(a: np.ndarray, b: np.ndarray) -> tuple[float, float]:
    if np.allclose(a, b, atol=1e-12, rtol=0.0):
        return 1.0, 1.0
    if len(a) < 2 or np.ptp(a) == 0.0 or np.ptp(b) == 0.0:
        return float("nan"), float("nan")
    pearson = float(stats.pearsonr(a, b).statistic)
    spearman = float(stats.spearmanr(a, b).statistic)
    return pearson, spearman


def run_agreement(
    h: Hypergraph,
    dataset: str = "",
    measure: str = "en",
    agg: str = "a",
    baseline: str = "exact",
    estimator: str = "bound",
    reg: float = transport.DEFAULT_SINKHORN_REG,
    iters: int = transport.DEFAULT_SINKHORN_ITERS,
    threshold: float = transport.DEFAULT_SINKHORN_THRESHOLD,
    support_cap: int = transport.DEFAULT_SUPPORT_CAP,
    bins: int = 20,
    workers: int = 1,
) -> AgreementResult:
    """Per-edge curvature agreement between two estimators.

    Singleton hyperedges and edges whose supports exceed the oracle cap are
    counted as skipped. Histograms share one binning across both series.
    """
    adj = build_adjacency(h)
    eval_side = PairwiseW1(h, adj, measure=measure, estimator=estimator,
                           reg=reg, iters=iters, threshold=threshold,
                           support_cap=support_cap)
    eval_base = PairwiseW1(h, adj, measure=measure, estimator=baseline,
                           reg=reg, iters=iters, threshold=threshold,
                           support_cap=support_cap)

    def one_edge(item):
        eid, e = item
        if len(e) < 2:
            return (eid, None, SKIP_SINGLETON)
        from .curvature import agg_average, agg_max
        agg_fn = agg_average if agg == "a" else agg_max
        try:
            side = 1.0 - agg_fn(e, eval_side.w1)
            base = 1.0 - agg_fn(e, eval_base.w1)
        except transport.SupportCapError:
            return (eid, None, "support-cap-exceeded")
        return (eid, (side, base), None)

    results = _map_indexed(one_edge, list(enumerate(h.edges)), workers)
    samples = [(eid, vals[0], vals[1]) for eid, vals, _ in results if vals is not None]
    skipped = sum(1 for _, vals, _ in results if vals is None)
    if not samples:
        raise BenchError("no curvature-bearing hyperedge in dataset")
    side_vals = np.array([s for _, s, _ in samples])
    base_vals = np.array([b for _, _, b in samples])
    pearson, spearman = _correlations(side_vals, base_vals)
    if len(samples) >= 2 and np.ptp(side_vals) > 0:
        slope, intercept = np.polyfit(side_vals, base_vals, 1)
    else:
        slope, intercept = 1.0, 0.0
    combined = np.concatenate([side_vals, base_vals])
    lo, hi = float(combined.min()), float(combined.max())
    if hi <= lo:
        hi = lo + 1.0
    edges = np.linspace(lo, hi, bins + 1)
    side_counts, _ = np.histogram(side_vals, bins=edges)
    base_counts, _ = np.histogram(base_vals, bins=edges)
    return AgreementResult(
        dataset=dataset, measure=measure, agg=agg, baseline=baseline,
        samples=samples, pearson=pearson, spearman=spearman,
        mean_shift=float(base_vals.mean() - side_vals.mean()),
        trend_slope=float(slope), trend_intercept=float(intercept),
        bin_edges=[float(x) for x in edges],
        bound_counts=[int(c) for c in side_counts],
        baseline_counts=[int(c) for c in base_counts],
        skipped_edges=skipped,
    )


def run_scaling(
    degrees: Sequence[int] = (64, 128, 256, 512),
    pairs_per_size: int = 48,
    repeats: int = 8,
    seed: int = 1,
) -> ScalingResult:
    """Per-pair bound cost across generated instances of increasing degree.

    Each instance is a configuration-model multigraph with constant degree;
    sampled adjacent pairs are evaluated ``repeats`` times and the minimum
    sample is kept to suppress scheduler noise. The fit is ordinary least
    squares on log support size vs log time.
    """
    rng = np.random.default_rng(seed)
    sizes: list[int] = []
    times: list[int] = []
    for d in degrees:
        n = d + 8
        if (n * d) % 2:
            n += 1
        m = (n * d) // 2
        spec = HcmSpec(degrees=(d,) * n, cardinalities=(2,) * m, seed=seed + d)
        h = generate_hcm(spec).hypergraph
        adj = build_adjacency(h)
        space = GraphSpace(adj)
        evaluator = PairwiseW1(h, adj, measure="en", estimator="bound")
        pairs = pair_workload(h, adj)
        idx = rng.choice(len(pairs), size=min(pairs_per_size, len(pairs)), replace=False)
        for k in idx:
            i, j = pairs[int(k)]
            mu_i = evaluator.measure_at(i)
            mu_j = evaluator.measure_at(j)
            best = None
            for _ in range(repeats):
                t0 = time.perf_counter_ns()
                w1_upper_bound(i, j, mu_i, mu_j, space, validate=False)
                dt = time.perf_counter_ns() - t0
                best = dt if best is None else min(best, dt)
            sizes.append(len(mu_i.masses) + len(mu_j.masses))
            times.append(best)
    slope, intercept = np.polyfit(np.log(sizes), np.log(times), 1)
    return ScalingResult(
        support_sizes=sizes, times_ns=times,
        slope=float(slope), intercept=float(intercept),
    )
