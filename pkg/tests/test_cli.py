import csv
import json

import pytest
from typer.testing import CliRunner

from src import app
from src.experiments.schema import SolveResult
from src.experiments.service import ExperimentService

runner = CliRunner()

# W_01 = +1 in Ising form
ALIGNED_PAIR = "2 1\n1 2 -1.0\n"
CUT_PAIR = "2 1\n1 2 1.0\n"
UNIT_TRIANGLE = "3 3\n1 2 1\n2 3 1\n1 3 1\n"


def invoke(*args):
    return runner.invoke(app, [str(arg) for arg in args])


def test_info(graph_file):
    result = invoke("info", graph_file(CUT_PAIR))
    assert result.exit_code == 0
    assert "n=2 m=1" in result.output
    assert "couplings: 1 (W>0: 0, W<0: 1)" in result.output
    assert "total=1" in result.output


def test_info_empty_graph(graph_file):
    result = invoke("info", graph_file("3 0\n"))
    assert result.exit_code == 0
    assert "n=3 m=0" in result.output


def test_info_reports_parse_line(graph_file):
    result = invoke("info", graph_file("2 1\n1 1 1.0\n"))
    assert result.exit_code == 2
    assert "line 2" in result.output


def test_missing_file_is_usage_error(tmp_path):
    assert invoke("info", tmp_path / "absent.txt").exit_code == 2


def test_analyze_json(graph_file, tmp_path):
    out = tmp_path / "catalog.json"
    result = invoke("analyze", graph_file(ALIGNED_PAIR), "--output", out)
    assert result.exit_code == 0, result.output
    document = json.loads(out.read_text())
    assert len(document["records"]) == 4
    assert all(record["report"]["agree"] for record in document["records"])
    assert document["metadata"]["seed"] == 0
    assert document["metadata"]["rng_name"] == "PCG64"
    assert document["params"] == {"k": 1.0, "ks": 1.0, "alpha": 0.5}


def test_analyze_csv(graph_file, tmp_path):
    out = tmp_path / "catalog.csv"
    result = invoke("analyze", graph_file(ALIGNED_PAIR), "--format", "csv", "--output", out)
    assert result.exit_code == 0, result.output
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 4
    assert {row["classification"] for row in rows} == {"AttractiveMinimum", "Degenerate"}


def test_analyze_with_harvest(graph_file, tmp_path):
    out = tmp_path / "catalog.json"
    result = invoke("analyze", graph_file(ALIGNED_PAIR), "--harvest", "--starts", 10, "--tmax", 20, "--output", out)
    assert result.exit_code == 0, result.output
    ids = [record["id"] for record in json.loads(out.read_text())["records"]]
    assert {0, 1, 2, 3} <= set(ids)


def test_analyze_guard_suggests_solve(graph_file):
    result = invoke("analyze", graph_file("25 0\n"))
    assert result.exit_code == 2
    assert "solve" in result.output


def test_sweep_csv(graph_file, tmp_path):
    out = tmp_path / "sweep.csv"
    result = invoke("sweep", graph_file(ALIGNED_PAIR), "--ratios", "0.5,1,2", "--output", out)
    assert result.exit_code == 0, result.output
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 12
    suboptimal = [row for row in rows if row["fp_id"] == "2"]
    assert [row["classification"] for row in suboptimal] == ["Saddle", "Degenerate", "AttractiveMinimum"]


def test_sweep_json(graph_file, tmp_path):
    out = tmp_path / "sweep.json"
    result = invoke("sweep", graph_file(ALIGNED_PAIR), "--ratios", "2", "--format", "json", "--output", out)
    assert result.exit_code == 0, result.output
    document = json.loads(out.read_text())
    assert document["metadata"]["ratios"] == [2.0]
    assert len(document["rows"]) == 4


@pytest.mark.parametrize("args", [[], ["--ratios", "1,0.5"], ["--ratios", "a,b"]])
def test_sweep_usage_errors(graph_file, args):
    assert invoke("sweep", graph_file(ALIGNED_PAIR), *args).exit_code == 2


def test_solve_pair(graph_file, tmp_path):
    out = tmp_path / "solve.json"
    result = invoke("solve", graph_file(CUT_PAIR), "--seed", 7, "--output", out)
    assert result.exit_code == 0, result.output
    document = json.loads(out.read_text())
    assert document["ising_energy"] == -1.0
    assert document["cut_value"] == 1.0
    assert document["metadata"]["seed"] == 7
    assert document["n_starts"] == 50


def test_solve_triangle_cut(graph_file, tmp_path):
    out = tmp_path / "solve.csv"
    result = invoke("solve", graph_file(UNIT_TRIANGLE), "--format", "csv", "--output", out)
    assert result.exit_code == 0, result.output
    row = next(csv.DictReader(out.open()))
    assert row["cut_value"] == "2"
    assert row["ising_energy"] == "-1"


def test_solve_basins(graph_file, tmp_path):
    out = tmp_path / "basins.json"
    result = invoke("solve", graph_file(ALIGNED_PAIR), "--ks", 0.5, "--starts", 20, "--seed", 7, "--basins",
                    "--output", out)
    assert result.exit_code == 0, result.output
    document = json.loads(out.read_text())
    assert document["ground_state_hit_rate"] == 1.0
    assert document["metadata"]["n_samples"] == 20


def test_solve_rejects_zero_starts(graph_file):
    assert invoke("solve", graph_file(CUT_PAIR), "--starts", 0).exit_code == 2


def test_solve_rejects_bad_parameters(graph_file):
    result = invoke("solve", graph_file(CUT_PAIR), "--k", 0)
    assert result.exit_code == 2
    assert "error:" in result.output


def test_verify_passes(graph_file):
    result = invoke("verify", graph_file(UNIT_TRIANGLE), "--tmax", 5)
    assert result.exit_code == 0, result.output
    assert result.output.count("PASS") == 8


def test_verify_negative_control(graph_file):
    result = invoke("verify", graph_file(UNIT_TRIANGLE), "--tmax", 5, "--asymmetrize")
    assert result.exit_code == 1
    assert "FAIL jacobian-hessian-equivalence" in result.output


def test_simulate_trajectory_csv(graph_file, tmp_path):
    out = tmp_path / "traj.csv"
    result = invoke("simulate-trajectory", graph_file(ALIGNED_PAIR), "--init", "0.3,-0.2", "--tmax", 0.1,
                    "--stride", 1, "--output", out)
    assert result.exit_code == 0, result.output
    lines = out.read_text().splitlines()
    assert lines[0] == "t,theta_0,theta_1,energy"
    assert len(lines) == 12


def test_simulate_trajectory_json(graph_file, tmp_path):
    out = tmp_path / "traj.json"
    result = invoke("simulate-trajectory", graph_file(ALIGNED_PAIR), "--init", "0.3,-0.2", "--format", "json",
                    "--output", out)
    assert result.exit_code == 0, result.output
    document = json.loads(out.read_text())
    assert document["converged"]
    energies = document["energies"]
    assert all(b <= a + 1e-9 for a, b in zip(energies, energies[1:]))


def test_simulate_trajectory_rejects_wrong_init(graph_file):
    result = invoke("simulate-trajectory", graph_file(ALIGNED_PAIR), "--init", "0.1,0.2,0.3")
    assert result.exit_code == 2


def test_undecodable_graph_is_parse_error(tmp_path):
    path = tmp_path / "graph.bin"
    path.write_bytes(b"\x89PNG\r\n\x1a\n\xff\xff")
    result = invoke("info", path)
    assert result.exit_code == 2
    assert "line 1" in result.output
    assert "UTF-8" in result.output


def test_unknown_log_level_is_usage_error(graph_file):
    result = runner.invoke(app, ["--log-level", "loud", "info", str(graph_file(CUT_PAIR))])
    assert result.exit_code == 2


def test_log_level_is_case_insensitive(graph_file):
    result = runner.invoke(app, ["--log-level", "debug", "info", str(graph_file(CUT_PAIR))])
    assert result.exit_code == 0, result.output


def test_solve_without_binary_endpoint(monkeypatch, graph_file, tmp_path):
    def no_binary(self, inst, params, n_starts, seed, cfg=None):
        return SolveResult(n_starts=n_starts, n_binary=0, seed=seed)

    monkeypatch.setattr(ExperimentService, "solve", no_binary)
    out = tmp_path / "solve.json"
    result = invoke("solve", graph_file(CUT_PAIR), "--starts", 3, "--output", out)
    assert result.exit_code == 0, result.output
    document = json.loads(out.read_text())
    assert document["spins"] is None
    assert document["cut_value"] is None
    assert "no start out of 3" in result.output


def test_analyze_help_points_to_lapack():
    result = invoke("analyze", "--help")
    assert result.exit_code == 0
    assert "OIMLAB_EIGEN_METHOD=lapack" in result.output
