"""End-to-end CLI: file formats, record round-trips, and exit codes."""

import csv
import math

import pytest

from dpmst.cli import BENCH_FIELDS, RUN_FIELDS, main, parse_run_record
from dpmst.graph import read_edge_list
from dpmst.mst import utility_bound


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def gen(tmp_path, n=8, seed=5):
    path = tmp_path / f"g{n}.csv"
    assert main(["gen", "--n", str(n), "--seed", str(seed),
                 "--out", str(path)]) == 0
    return path


class TestGen:
    def test_minimal_graph_single_row(self, tmp_path):
        path = gen(tmp_path, n=2)
        rows = read_rows(path)
        assert len(rows) == 1
        assert rows[0]["u"] == "0" and rows[0]["v"] == "1"
        assert 0.0 <= float(rows[0]["w"]) < 1.0

    def test_rerun_byte_identical(self, tmp_path):
        a = gen(tmp_path, n=10, seed=3)
        b = tmp_path / "again.csv"
        main(["gen", "--n", "10", "--seed", "3", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_round_trip_loads(self, tmp_path):
        path = gen(tmp_path, n=9)
        g, w = read_edge_list(path)
        assert g.n == 9 and g.m == 36 and len(w.weights) == 36

    def test_dist_choice_is_validated(self, tmp_path):
        assert main(["gen", "--n", "4", "--seed", "0", "--dist", "pareto",
                     "--out", str(tmp_path / "x.csv")]) == 2


class TestRun:
    def test_exact_has_zero_error(self, tmp_path):
        graph = gen(tmp_path)
        out = tmp_path / "runs.csv"
        assert main(["run", "--algo", "exact", "--graph", str(graph),
                     "--sensitivity", "1e-5", "--seed", "1",
                     "--out", str(out)]) == 0
        (row,) = read_rows(out)
        rec = parse_run_record(row)
        assert rec.error == 0.0
        assert rec.tree_weight == rec.opt_weight
        assert math.isnan(rec.rho) and math.isnan(rec.epsilon)

    def test_same_seed_identical_modulo_time(self, tmp_path):
        graph = gen(tmp_path, n=12)
        outs = []
        for name in ("a.csv", "b.csv"):
            out = tmp_path / name
            assert main(["run", "--algo", "fast-pamst", "--graph", str(graph),
                         "--rho", "0.5", "--sensitivity", "1e-4",
                         "--seed", "7", "--out", str(out)]) == 0
            outs.append(read_rows(out)[0])
        for field in RUN_FIELDS:
            if field != "elapsed_ns":
                assert outs[0][field] == outs[1][field]

    def test_fast_pamst_error_below_bound(self, tmp_path):
        graph = gen(tmp_path, n=24)
        out = tmp_path / "runs.csv"
        assert main(["run", "--algo", "fast-pamst", "--graph", str(graph),
                     "--rho", "0.5", "--sensitivity", "1e-5",
                     "--seed", "3", "--out", str(out)]) == 0
        rec = parse_run_record(read_rows(out)[0])
        assert 0.0 <= rec.error <= utility_bound(24, 0.5, 1e-5, 1 / 24)

    def test_append_keeps_single_header(self, tmp_path):
        graph = gen(tmp_path)
        out = tmp_path / "runs.csv"
        for seed in ("1", "2"):
            main(["run", "--algo", "pamst", "--graph", str(graph),
                  "--rho", "0.1", "--sensitivity", "1e-5",
                  "--seed", seed, "--out", str(out)])
        rows = read_rows(out)
        assert len(rows) == 2 and rows[0]["seed"] == "1" and rows[1]["seed"] == "2"

    def test_post_laplace_needs_epsilon(self, tmp_path):
        graph = gen(tmp_path)
        assert main(["run", "--algo", "post-laplace", "--graph", str(graph),
                     "--rho", "0.1", "--sensitivity", "1e-5", "--seed", "1",
                     "--out", str(tmp_path / "o.csv")]) == 3

    def test_missing_budget_is_data_error(self, tmp_path):
        graph = gen(tmp_path)
        assert main(["run", "--algo", "fast-pamst", "--graph", str(graph),
                     "--sensitivity", "1e-5", "--seed", "1",
                     "--out", str(tmp_path / "o.csv")]) == 3


class TestBench:
    def test_sweep_row_shape(self, tmp_path):
        out = tmp_path / "medians.csv"
        assert main(["bench", "--algos", "fast-pamst,pamst,exact",
                     "--n-list", "8,12", "--reps", "1", "--rho", "0.5",
                     "--sensitivity", "1e-4", "--seed", "2",
                     "--out", str(out)]) == 0
        rows = read_rows(out)
        assert [(r["algo"], r["n"]) for r in rows] == [
            ("fast-pamst", "8"), ("fast-pamst", "12"),
            ("pamst", "8"), ("pamst", "12"),
            ("exact", "8"), ("exact", "12")]
        assert list(rows[0]) == BENCH_FIELDS
        fast8 = rows[0]
        assert float(fast8["utility_bound"]) == pytest.approx(
            utility_bound(8, 0.5, 1e-4, 1 / 8))
        assert math.isnan(float(rows[2]["utility_bound"]))
        assert float(rows[4]["median_error"]) == 0.0

    def test_determinism_of_non_time_columns(self, tmp_path):
        rows = []
        for name in ("m1.csv", "m2.csv"):
            out = tmp_path / name
            assert main(["bench", "--algos", "fast-pamst", "--n-list", "10",
                         "--reps", "3", "--rho", "0.2", "--sensitivity", "1e-4",
                         "--seed", "9", "--out", str(out)]) == 0
            rows.append(read_rows(out)[0])
        for field in BENCH_FIELDS:
            if field != "median_elapsed_ns":
                assert rows[0][field] == rows[1][field]

    def test_unknown_algo_is_data_error(self, tmp_path):
        assert main(["bench", "--algos", "kruskal", "--n-list", "8",
                     "--rho", "0.1", "--sensitivity", "1e-5", "--seed", "1",
                     "--out", str(tmp_path / "o.csv")]) == 3

    def test_threads_env_same_result(self, tmp_path, monkeypatch):
        outs = []
        for threads, name in (("1", "t1.csv"), ("4", "t4.csv")):
            monkeypatch.setenv("DPMST_THREADS", threads)
            out = tmp_path / name
            assert main(["bench", "--algos", "fast-pamst,pamst",
                         "--n-list", "8,10", "--reps", "2", "--rho", "0.3",
                         "--sensitivity", "1e-4", "--seed", "4",
                         "--out", str(out)]) == 0
            outs.append(read_rows(out))
        for r1, r4 in zip(*outs):
            for field in BENCH_FIELDS:
                if field != "median_elapsed_ns":
                    assert r1[field] == r4[field]


class TestExitCodes:
    def test_usage_error(self):
        assert main(["run", "--algo", "not-an-algo"]) == 2
        assert main(["frobnicate"]) == 2

    def test_missing_file_is_data_error(self, tmp_path):
        assert main(["run", "--algo", "exact", "--graph",
                     str(tmp_path / "nope.csv"), "--sensitivity", "1.0",
                     "--seed", "1", "--out", str(tmp_path / "o.csv")]) == 3

    def test_malformed_graph_is_data_error(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("u,v,w\n0,0,1.0\n")
        assert main(["run", "--algo", "exact", "--graph", str(bad),
                     "--sensitivity", "1.0", "--seed", "1",
                     "--out", str(tmp_path / "o.csv")]) == 3

    def test_help_exits_zero(self):
        assert main(["--help"]) == 0
