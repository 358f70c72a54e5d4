import math

import numpy as np
import pytest

from orcbound.bench import (
    BenchError,
    pair_workload,
    run_agreement,
    run_scaling,
    run_timing,
)
from orcbound.generators import HcmSpec, generate_hcm
from orcbound.hypergraph import Hypergraph
from orcbound.plots import dual_histogram_svg, scatter_svg
from conftest import random_hypergraph


def small_instance(seed=3):
    rng = np.random.default_rng(seed)
    return random_hypergraph(rng, n_max=14, m_max=7)


class TestWorkload:
    def test_pairs_unique_and_sorted(self):
        h = Hypergraph.from_edges([[0, 1, 2], [1, 2, 3], [1, 2]])
        assert pair_workload(h) == [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]

    def test_singletons_contribute_nothing(self):
        h = Hypergraph.from_edges([[0], [1]], n=2)
        assert pair_workload(h) == []


class TestTiming:
    def test_totals_reconcile_with_per_pair_times(self):
        result = run_timing(small_instance(), dataset="t", warmup=4)
        assert result.pair_count == len(result.bound_per_pair_ns)
        assert result.bound_total_ns == sum(result.bound_per_pair_ns)
        assert result.sinkhorn_total_ns == sum(result.sinkhorn_per_pair_ns)
        assert result.speedup == pytest.approx(
            result.sinkhorn_total_ns / result.bound_total_ns
        )
        assert result.environment["workers"] == 1

    def test_empty_workload(self):
        h = Hypergraph.from_edges([[0], [1]], n=2)
        result = run_timing(h, dataset="empty")
        assert result.pair_count == 0
        assert result.bound_total_ns == 0
        assert math.isnan(result.speedup)

    def test_worker_shards_agree_on_counts(self):
        h = small_instance(seed=4)
        one = run_timing(h, workers=1, warmup=2)
        multi = run_timing(h, workers=3, warmup=2)
        assert one.pair_count == multi.pair_count

    def test_to_doc_shape(self):
        doc = run_timing(small_instance(), dataset="d").to_doc()
        assert doc["kind"] == "timing"
        assert doc["sinkhorn"]["reg"] > 0
        assert len(doc["bound"]["per_pair_ns"]) == doc["pair_count"]


class TestAgreement:
    def test_single_hyperedge_single_sample(self):
        h = Hypergraph.from_edges([[0, 1, 2]])
        result = run_agreement(h, baseline="exact")
        assert len(result.samples) == 1
        eid, bound_val, exact_val = result.samples[0]
        assert bound_val == pytest.approx(0.5, abs=1e-9)
        assert exact_val == pytest.approx(0.5, abs=1e-9)

    def test_self_comparison_is_perfect(self):
        result = run_agreement(small_instance(), baseline="bound", estimator="bound")
        assert result.pearson == 1.0
        assert result.spearman == 1.0
        assert result.mean_shift == pytest.approx(0.0, abs=1e-15)

    def test_bound_below_exact_everywhere(self):
        result = run_agreement(small_instance(seed=9), baseline="exact")
        for _, bound_val, exact_val in result.samples:
            assert bound_val <= exact_val + 1e-9
        assert result.mean_shift >= -1e-12

    def test_histogram_bins_shared(self):
        result = run_agreement(small_instance(seed=10), baseline="exact", bins=8)
        assert len(result.bin_edges) == 9
        assert sum(result.bound_counts) == len(result.samples)
        assert sum(result.baseline_counts) == len(result.samples)

    def test_singletons_counted_as_skipped(self):
        h = Hypergraph.from_edges([[0], [0, 1, 2]])
        result = run_agreement(h, baseline="exact")
        assert result.skipped_edges == 1

    def test_support_cap_skips_edge(self):
        h = Hypergraph.from_edges([[0, 1, 2, 3, 4], [5, 6]])
        result = run_agreement(h, baseline="exact", support_cap=3)
        assert result.skipped_edges == 1
        assert [eid for eid, _, _ in result.samples] == [1]

    def test_all_skipped_raises(self):
        h = Hypergraph.from_edges([[0], [1]], n=2)
        with pytest.raises(BenchError):
            run_agreement(h, baseline="exact")


class TestScaling:
    def test_smoke_fit(self):
        result = run_scaling(degrees=(8, 16, 32), pairs_per_size=12, repeats=3, seed=2)
        assert len(result.support_sizes) == len(result.times_ns)
        assert all(t > 0 for t in result.times_ns)
        assert result.slope == result.slope  # not NaN


class TestPlots:
    def test_scatter_svg_well_formed(self):
        svg = scatter_svg([0.1, 0.5], [0.2, 0.5], "x", "y", "t", trend=(1.0, 0.0))
        assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
        assert "circle" in svg and "stroke-dasharray" in svg

    def test_histogram_svg_well_formed(self):
        svg = dual_histogram_svg([0.0, 0.5, 1.0], [2, 1], [1, 2], "a", "b", "x", "t")
        assert svg.count("<rect") >= 5

    def test_histogram_validates_lengths(self):
        with pytest.raises(ValueError):
            dual_histogram_svg([0.0, 1.0], [1, 2], [1], "a", "b", "x", "t")

    def test_scatter_validates_lengths(self):
        with pytest.raises(ValueError):
            scatter_svg([1.0], [], "x", "y", "t")
