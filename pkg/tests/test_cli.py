"""CLI: in-process invocation, file roundtrips, exit-code contract."""

import io
import json

import numpy as np
import pytest

from pairclust import (
    Clustering,
    clustering_to_similarity,
    hamming_distance,
    misclassification_error,
    planted_clustering,
)
from pairclust.cli import main
from pairclust.fileio import (
    read_clustering,
    read_similarity_graph,
    read_training_set,
    write_clustering,
    write_graph,
)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def planted_file(tmp_path):
    d = planted_clustering(24, sizes=[8, 8, 8], seed=1)
    path = tmp_path / "planted.tsv"
    write_clustering(d, str(path))
    return d, str(path)


@pytest.fixture
def path_graph_file(tmp_path):
    path = tmp_path / "path.txt"
    path.write_text("n=4\n0,1\n1,2\n2,3\n")
    return str(path)


class TestClusterers:
    def test_rgca_recovers_unperturbed_input(self, capsys, tmp_path, planted_file):
        d, _ = planted_file
        gpath = tmp_path / "g.txt"
        write_graph(clustering_to_similarity(d), str(gpath))
        code, out, _ = run(capsys, "rgca", "--input", str(gpath))
        assert code == 0
        assert read_clustering(io.StringIO(out)) == d

    def test_rgca_a_flag_parses_fraction(self, capsys, tmp_path, planted_file):
        d, _ = planted_file
        gpath = tmp_path / "g.txt"
        write_graph(clustering_to_similarity(d), str(gpath))
        code, out, _ = run(capsys, "rgca", "--input", str(gpath), "--a", "1/3")
        assert code == 0
        read_clustering(io.StringIO(out))  # parseable output either way

    def test_saca_roundtrip_and_output_file(self, capsys, tmp_path, planted_file):
        d, dpath = planted_file
        pairs = tmp_path / "train.csv"
        code, _, _ = run(
            capsys, "gen", "pairs", "--clustering", dpath, "--m", "3000",
            "--output", str(pairs),
        )
        assert code == 0
        out_file = tmp_path / "c.tsv"
        code, out, _ = run(capsys, "saca", "--pairs", str(pairs), "--output", str(out_file))
        assert code == 0 and out == ""
        assert read_clustering(str(out_file)) == d

    def test_saca_n_flag_validates_item_count(self, capsys, tmp_path):
        from pairclust import sample_training_set
        from pairclust.fileio import write_training_set

        d = planted_clustering(10, k=2, seed=0)
        pairs = tmp_path / "train.csv"
        write_training_set(sample_training_set(d, 200, seed=1), str(pairs))
        code, out, _ = run(capsys, "saca", "--pairs", str(pairs), "--n", "10")
        assert code == 0
        assert read_clustering(io.StringIO(out)).n == 10
        code, _, err = run(capsys, "saca", "--pairs", str(pairs), "--n", "12")
        assert code == 2 and "error:" in err  # header disagrees with --n


class TestMetrics:
    def test_default_reports_both(self, capsys, tmp_path, planted_file):
        d, dpath = planted_file
        other = planted_clustering(24, sizes=[12, 12], seed=2)
        opath = tmp_path / "other.tsv"
        write_clustering(other, str(opath))
        code, out, _ = run(capsys, "metrics", dpath, str(opath))
        assert code == 0
        got = json.loads(out)
        assert got["er"] == misclassification_error(d, other)
        assert got["ha"] == hamming_distance(
            clustering_to_similarity(d), clustering_to_similarity(other)
        )

    def test_flag_selects_single_metric(self, capsys, tmp_path, planted_file):
        _, dpath = planted_file
        code, out, _ = run(capsys, "metrics", dpath, dpath, "--er")
        assert code == 0
        assert json.loads(out) == {"er": 0}

    def test_sniffs_graph_file_operand(self, capsys, tmp_path, planted_file):
        d, dpath = planted_file
        gpath = tmp_path / "g.txt"
        write_graph(clustering_to_similarity(d), str(gpath))
        code, out, _ = run(capsys, "metrics", str(gpath), dpath)
        assert code == 0
        got = json.loads(out)
        assert got == {"er": 0, "ha": 0}

    def test_er_on_non_clique_graph_is_data_error(self, capsys, tmp_path, planted_file):
        _, dpath = planted_file
        gpath = tmp_path / "notclique.txt"
        gpath.write_text("n=24\n0,1\n1,2\n")  # path, not a clique union
        code, _, err = run(capsys, "metrics", str(gpath), dpath, "--er")
        assert code == 2
        assert "error:" in err

    def test_anomalies_with_threshold(self, capsys, tmp_path, planted_file):
        d, dpath = planted_file
        gpath = tmp_path / "empty.txt"
        gpath.write_text("n=24\n")
        code, out, _ = run(
            capsys, "metrics", str(gpath), dpath, "--anomalies", "--b", "5/6"
        )
        assert code == 0
        got = json.loads(out)
        assert got["anomalies"] == 24  # empty graph: every item Jaccard-far
        assert got["b"] == "5/6"
        assert sorted(got["anomaly_items"]) == list(range(24))

    def test_json_pretty(self, capsys, planted_file):
        _, dpath = planted_file
        code, out, _ = run(capsys, "metrics", dpath, dpath, "--er", "--json")
        assert code == 0
        assert out.startswith("{\n  ")


class TestResistance:
    def test_path_graph_values(self, capsys, tmp_path, path_graph_file):
        cpath = tmp_path / "c.tsv"
        write_clustering(Clustering(np.array([0, 0, 1, 1])), str(cpath))
        code, out, _ = run(
            capsys, "resistance", "--graph", path_graph_file, "--clustering", str(cpath)
        )
        assert code == 0
        got = json.loads(out)
        assert got["n"] == 4 and got["edges"] == 3
        assert got["phi"] == 1
        assert got["phi_r"] == pytest.approx(1.0)  # tree edge resistance is exact
        assert got["resistance_sum_residual"] == pytest.approx(0.0, abs=1e-9)

    def test_disconnected_graph_rejected(self, capsys, tmp_path):
        gpath = tmp_path / "g.txt"
        gpath.write_text("n=4\n0,1\n2,3\n")
        cpath = tmp_path / "c.tsv"
        write_clustering(Clustering(np.zeros(4, dtype=int)), str(cpath))
        code, _, err = run(
            capsys, "resistance", "--graph", str(gpath), "--clustering", str(cpath)
        )
        assert code == 2 and "error:" in err


class TestGenerators:
    def test_planted_sizes_and_seed_default(self, capsys):
        code, out1, _ = run(capsys, "gen", "planted", "--n", "8", "--sizes", "4,4")
        assert code == 0
        c = read_clustering(io.StringIO(out1))
        assert sorted(c.sizes.tolist()) == [4, 4]
        _, out2, _ = run(capsys, "gen", "planted", "--n", "8", "--sizes", "4,4")
        assert out2 == out1  # seed defaults to 0: bare runs reproduce

    def test_planted_sizes_k_exclusive(self, capsys):
        code, _, _ = run(
            capsys, "gen", "planted", "--n", "8", "--sizes", "4,4", "--k", "2"
        )
        assert code == 1

    def test_perturb_budget(self, capsys, planted_file):
        d, dpath = planted_file
        code, out, _ = run(
            capsys, "gen", "perturb", "--clustering", dpath, "--flips", "5"
        )
        assert code == 0
        g = read_similarity_graph(io.StringIO(out))
        assert hamming_distance(g, clustering_to_similarity(d)) == 10

    def test_adv_t2_budget(self, capsys, planted_file):
        d, dpath = planted_file
        code, out, _ = run(
            capsys, "gen", "adv-t2", "--clustering", dpath, "--sigma", "40"
        )
        assert code == 0
        g = read_similarity_graph(io.StringIO(out))
        assert hamming_distance(g, clustering_to_similarity(d)) <= 40

    def test_adv_t4_meta_and_outputs(self, capsys, tmp_path):
        n = 30
        lines = ["n=30"] + [f"{i},{i + 1}" for i in range(n - 1)]
        gpath = tmp_path / "side.txt"
        gpath.write_text("\n".join(lines) + "\n")
        cpath, ppath = tmp_path / "y.tsv", tmp_path / "s.csv"
        code, out, _ = run(
            capsys, "gen", "adv-t4", "--graph", str(gpath), "--b", "8", "--k", "5",
            "--m", "20", "--out-clustering", str(cpath), "--out-pairs", str(ppath),
        )
        assert code == 0
        meta = json.loads(out)
        assert meta["n"] == 30 and meta["b"] == 8 and meta["k"] == 5 and meta["m"] == 20
        assert meta["phi_r"] <= 8
        assert meta["v_b_size"] == 4
        assert meta["classes"] <= 5
        y = read_clustering(str(cpath))
        s = read_training_set(str(ppath))
        assert y.n == 30 and s.m == 20
        assert meta["classes"] == y.k

    def test_er_graph(self, capsys):
        code, out, _ = run(capsys, "gen", "er", "--n", "12", "--p", "0.5", "--seed", "3")
        assert code == 0
        g = read_similarity_graph(io.StringIO(out))
        assert g.n == 12
        _, out2, _ = run(capsys, "gen", "er", "--n", "12", "--p", "0.5", "--seed", "4")
        assert out2 != out


class TestExperimentCommand:
    def test_csv_stdout(self, capsys):
        code, out, _ = run(
            capsys, "experiment", "--mode", "saca-scaling", "--n", "20", "--k", "2",
            "--m-list", "5,10", "--trials", "2",
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0].startswith("algorithm,n,k,")
        assert len(lines) == 1 + 4

    def test_jsonl_format(self, capsys):
        code, out, _ = run(
            capsys, "experiment", "--mode", "rgca-robustness", "--n", "12",
            "--sizes", "6,6", "--flips-list", "0,2", "--trials", "1",
            "--format", "jsonl",
        )
        assert code == 0
        rows = [json.loads(line) for line in out.strip().split("\n")]
        assert len(rows) == 2
        assert all(r["algorithm"] == "rgca" for r in rows)
        assert rows[0]["flips"] == 0 and rows[0]["er"] == 0

    def test_config_file_with_flag_override(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps(
            {"mode": "saca-scaling", "n": 20, "k": 2, "m_list": [10], "trials": 1}
        ))
        code, out, _ = run(capsys, "experiment", "--config", str(cfg), "--trials", "2")
        assert code == 0
        assert len(out.strip().split("\n")) == 1 + 2  # flag overrides config

    def test_missing_key_is_data_error(self, capsys):
        code, _, err = run(
            capsys, "experiment", "--mode", "saca-scaling", "--n", "10", "--k", "2"
        )
        assert code == 2
        assert "m_list" in err

    def test_mode_required_somewhere(self, capsys):
        code, _, err = run(capsys, "experiment", "--n", "10")
        assert code == 2 and "mode" in err

    def test_bad_mode_choice_is_usage_error(self, capsys):
        code, _, _ = run(capsys, "experiment", "--mode", "bogus")
        assert code == 1


class TestExitCodes:
    def test_help_exits_zero(self, capsys):
        assert run(capsys, "--help")[0] == 0

    def test_usage_errors_exit_one(self, capsys):
        assert run(capsys, "nonsense")[0] == 1
        assert run(capsys, "rgca")[0] == 1  # missing --input

    def test_data_errors_exit_two(self, capsys, tmp_path, planted_file):
        _, dpath = planted_file
        assert run(capsys, "rgca", "--input", str(tmp_path / "missing.txt"))[0] == 2
        bad = tmp_path / "bad.tsv"
        bad.write_text("0\t0\nalpha\tbeta\n")
        assert run(capsys, "gen", "pairs", "--clustering", str(bad), "--m", "5")[0] == 2
        assert run(capsys, "gen", "adv-t2", "--clustering", dpath, "--sigma", "0")[0] == 2
