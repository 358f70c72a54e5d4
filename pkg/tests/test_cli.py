import json

import pytest

from orcbound.cli import main
from orcbound.reports import read_edge_csv


K3_FILE = "0 1 2\n"

HCM_SPEC = "model = hcm\ndegrees = 2 2 2 2 1 1\ncardinalities = 2 2 3 3\nseed = 1\n"
HSBM_SPEC = (
    "model = hsbm\nnode_community_sizes = 5 5\nedge_community_sizes = 4 4\n"
    "affinity = 0.8 0.1 ; 0.1 0.8\nseed = 2\n"
)


@pytest.fixture
def k3_path(tmp_path):
    p = tmp_path / "k3.txt"
    p.write_text(K3_FILE)
    return p


class TestCompute:
    def test_writes_report(self, tmp_path, k3_path, capsys):
        out = tmp_path / "out"
        code = main(["compute", str(k3_path), "--measure", "en", "--agg", "a",
                     "--estimator", "bound", "--out", str(out)])
        assert code == 0
        records = read_edge_csv(out / "edges.csv")
        assert len(records) == 1
        assert records[0].curvature == pytest.approx(0.5, abs=1e-9)
        summary = json.loads((out / "summary.json").read_text())
        assert summary["schema_version"] == 1
        assert summary["estimator"] == "bound"
        assert (out / "nodes.csv").exists()

    def test_exact_and_sinkhorn_estimators(self, tmp_path, k3_path):
        for est in ("exact", "sinkhorn"):
            out = tmp_path / est
            assert main(["compute", str(k3_path), "--estimator", est,
                         "--out", str(out)]) == 0

    def test_missing_file_is_usage_error(self, tmp_path):
        assert main(["compute", str(tmp_path / "nope.txt")]) == 2

    def test_unknown_flag_is_usage_error(self, k3_path):
        assert main(["compute", str(k3_path), "--frobnicate"]) == 2

    def test_bad_alpha_is_usage_error(self, tmp_path, k3_path):
        assert main(["compute", str(k3_path), "--alpha", "1.5",
                     "--out", str(tmp_path / "o")]) == 2

    def test_malformed_dataset_is_runtime_error(self, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("0 x\n")
        assert main(["compute", str(bad), "--out", str(tmp_path / "o")]) == 1

    def test_unknown_subcommand(self):
        assert main(["explode"]) == 2


class TestCompare:
    def test_k3_single_point(self, tmp_path, k3_path):
        out = tmp_path / "cmp"
        code = main(["compare", str(k3_path), "--baseline", "exact", "--out", str(out)])
        assert code == 0
        lines = (out / "agreement.csv").read_text().strip().splitlines()
        assert len(lines) == 2  # header plus the single hyperedge
        assert (out / "scatter.svg").read_text().count("<circle") == 1
        assert (out / "histogram.svg").exists()
        summary = json.loads((out / "summary.json").read_text())
        assert summary["n_samples"] == 1
        assert summary["pearson"] == 1.0


class TestBench:
    def test_timing_output(self, tmp_path, k3_path):
        out = tmp_path / "bench"
        code = main(["bench", str(k3_path), "--measure", "we", "--warmup", "1",
                     "--out", str(out)])
        assert code == 0
        doc = json.loads((out / "timing.json").read_text())
        assert doc["pair_count"] == 3
        assert doc["sinkhorn"]["iters"] == 500
        assert doc["sinkhorn"]["threshold"] == 0.01


class TestGenerate:
    def test_deterministic_files(self, tmp_path):
        spec = tmp_path / "spec.txt"
        spec.write_text(HCM_SPEC)
        out1, out2 = tmp_path / "a.txt", tmp_path / "b.txt"
        assert main(["generate", "hcm", "--spec", str(spec), "--seed", "7",
                     "--out", str(out1)]) == 0
        assert main(["generate", "hcm", "--spec", str(spec), "--seed", "7",
                     "--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_cli_seed_overrides_spec_seed(self, tmp_path):
        spec = tmp_path / "spec.txt"
        spec.write_text(HCM_SPEC)
        out1, out2 = tmp_path / "a.txt", tmp_path / "b.txt"
        main(["generate", "hcm", "--spec", str(spec), "--out", str(out1)])
        main(["generate", "hcm", "--spec", str(spec), "--seed", "99", "--out", str(out2)])
        header1 = out1.read_text().splitlines()[0]
        header2 = out2.read_text().splitlines()[0]
        assert "seed=1" in header1 and "seed=99" in header2

    def test_hsbm_generation_parses_back(self, tmp_path):
        from orcbound.hypergraph import parse_hyperedge_list
        spec = tmp_path / "spec.txt"
        spec.write_text(HSBM_SPEC)
        out = tmp_path / "g.txt"
        assert main(["generate", "hsbm", "--spec", str(spec), "--out", str(out)]) == 0
        h = parse_hyperedge_list(out.read_text()).hypergraph
        assert h.m > 0

    def test_stdout_output(self, tmp_path, capsys):
        spec = tmp_path / "spec.txt"
        spec.write_text(HCM_SPEC)
        assert main(["generate", "hcm", "--spec", str(spec)]) == 0
        captured = capsys.readouterr()
        assert "# model=hcm" in captured.out

    def test_missing_spec_is_usage_error(self, tmp_path):
        assert main(["generate", "hcm", "--spec", str(tmp_path / "nope.txt")]) == 2

    def test_invalid_spec_is_usage_error(self, tmp_path):
        spec = tmp_path / "spec.txt"
        spec.write_text("model = hcm\ndegrees = 1\ncardinalities = 2\n")
        assert main(["generate", "hcm", "--spec", str(spec)]) == 2
