"""Command-line surface: files, exit codes, determinism."""

import csv
import json
from importlib.resources import files

import pytest
from click.testing import CliRunner

from qbranch import SetPartitioningInstance
from qbranch.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def toy_network_text():
    return files("qbranch.data").joinpath("toy6.json").read_text()


def one_qubit_instance(path):
    inst = SetPartitioningInstance(1, ((0,),), (3,))
    path.write_text(inst.to_json())
    return path


class TestGenerate:
    def test_writes_files_deterministically(self, runner, tmp_path):
        args = ["generate", "--routes", "6", "--solutions", "2",
                "--seed", "7", "--out", str(tmp_path / "inst.json")]
        assert runner.invoke(main, args).exit_code == 0
        first = (tmp_path / "inst.json").read_bytes()
        first_stats = (tmp_path / "inst.stats.json").read_bytes()
        assert runner.invoke(main, args).exit_code == 0
        assert (tmp_path / "inst.json").read_bytes() == first
        assert (tmp_path / "inst.stats.json").read_bytes() == first_stats
        stats = json.loads(first_stats)
        assert stats["n_feasible"] == 2
        assert stats["gf2_bound"] >= 2

    def test_rejects_excess_solutions(self, runner, tmp_path):
        result = runner.invoke(
            main,
            ["generate", "--routes", "6", "--solutions", "9",
             "--out", str(tmp_path / "x.json")],
        )
        assert result.exit_code == 2


class TestQaoa:
    def test_one_qubit_ladder(self, runner, tmp_path):
        inst_path = one_qubit_instance(tmp_path / "toy.json")
        out = tmp_path / "ladder.csv"
        result = runner.invoke(
            main,
            ["qaoa", "--instance", str(inst_path), "--f", "inf",
             "--pmax", "3", "--out", str(out)],
        )
        assert result.exit_code == 0
        rows = list(csv.DictReader(out.open()))
        assert len(rows) == 3
        # a single qubit reaches certainty at depth 1 already
        assert float(rows[0]["p_exact_cover"]) == pytest.approx(1.0, abs=1e-6)

    def test_rejects_zero_factor(self, runner, tmp_path):
        inst_path = one_qubit_instance(tmp_path / "toy.json")
        result = runner.invoke(
            main, ["qaoa", "--instance", str(inst_path), "--f", "0"]
        )
        assert result.exit_code == 2

    def test_qubit_guard_exit_code(self, runner, tmp_path):
        n = 25
        inst = SetPartitioningInstance(
            n, tuple((f,) for f in range(n)), (1,) * n
        )
        path = tmp_path / "big.json"
        path.write_text(inst.to_json())
        result = runner.invoke(main, ["qaoa", "--instance", str(path)])
        assert result.exit_code == 3


class TestSweep:
    def test_table_shape_and_resume(self, runner, tmp_path):
        inst_path = one_qubit_instance(tmp_path / "toy.json")
        out = tmp_path / "sweep.csv"
        args = ["sweep", "--instance", str(inst_path), "--f", "inf",
                "--f", "2", "--pmax", "2", "--out", str(out)]
        assert runner.invoke(main, args).exit_code == 0
        rows = list(csv.DictReader(out.open()))
        assert [(r["instance"], r["f"]) for r in rows] == [
            (str(inst_path), "inf"), (str(inst_path), "2")
        ]
        # a second run finds every cell done and appends nothing
        before = out.read_bytes()
        assert runner.invoke(main, args).exit_code == 0
        assert out.read_bytes() == before


class TestBnp:
    def test_report_and_heuristic_pairing(self, runner, tmp_path):
        net_path = tmp_path / "net.json"
        net_path.write_text(toy_network_text())
        reports = {}
        for name in ("none", "mock-exact"):
            out = tmp_path / f"report_{name}.json"
            result = runner.invoke(
                main,
                ["bnp", "--network", str(net_path), "--heuristic", name,
                 "--out", str(out)],
            )
            assert result.exit_code == 0
            reports[name] = json.loads(out.read_text())
        assert reports["none"]["status"] == "optimal"
        assert reports["none"]["cost"] == reports["mock-exact"]["cost"]
        assert (
            reports["mock-exact"]["stats"]["nodes_created"]
            <= reports["none"]["stats"]["nodes_created"]
        )
        report = reports["mock-exact"]
        assert set(report) == {
            "status", "cost", "incumbent", "incumbent_origins", "stats"
        }
        covered = sorted(f for route in report["incumbent"] for f in route)
        assert covered == list(range(6))

    def test_infeasible_is_exit_zero(self, runner, tmp_path):
        net_path = tmp_path / "net.json"
        net_path.write_text(json.dumps({
            "flights": [
                {"id": "A", "dep": 0.0, "arr": 1.0, "cost": 2,
                 "resource_use": 9.0},
            ],
            "arcs": [],
            "min_turn": 0.0,
            "resource_limit": 1.0,
        }))
        out = tmp_path / "report.json"
        result = runner.invoke(
            main, ["bnp", "--network", str(net_path), "--out", str(out)]
        )
        assert result.exit_code == 0
        assert json.loads(out.read_text())["status"] == "infeasible"
