"""End-to-end tests for every subcommand through the CLI."""

import json
import math
import os
import subprocess
import sys
from pathlib import Path

import pytest

from src.runner import ExitCode


PROJECT_ROOT = Path(__file__).resolve().parent.parent
MAIN_PY = PROJECT_ROOT / "main.py"


def run_cli(args: list[str]) -> subprocess.CompletedProcess[str]:
    """Run the semifactor CLI and capture output."""
    env = os.environ.copy()
    existing_pythonpath = env.get("PYTHONPATH", "")
    env["PYTHONPATH"] = (
        f"{PROJECT_ROOT}:{existing_pythonpath}" if existing_pythonpath else str(PROJECT_ROOT)
    )
    return subprocess.run(
        [sys.executable, str(MAIN_PY), *args],
        cwd=PROJECT_ROOT,
        capture_output=True,
        text=True,
        env=env,
    )


def run_json(args: list[str]) -> dict:
    """Run a command expected to succeed and return its result object."""
    result = run_cli(args)
    assert result.returncode == ExitCode.SUCCESS, result.stdout + result.stderr
    payload = json.loads(result.stdout)
    assert payload["status"] == "ok"
    return payload["result"]


class TestCount:
    """Test the count subcommand."""

    @pytest.mark.parametrize(
        "m, n, degrees, expected",
        [
            ("2", "2", "1,1", "2"),
            ("4", "4", "2,2", "90"),
            ("3", "3", "1,1,1", "12"),
            ("4", "4", "2,1,1", "216"),
            ("2", "4", "2,2", "6"),
        ],
    )
    def test_spot_values(self, m, n, degrees, expected):
        result = run_json(["count", "--m", m, "--n", n, "--degrees", degrees])
        assert result["count"] == expected

    def test_oracle_agrees(self):
        result = run_json(["count", "--m", "3", "--n", "3", "--degrees", "1,1,1", "--oracle"])
        assert result["count"] == "12"
        assert result["method"] == "brute-force"

    def test_envelope(self):
        payload = json.loads(run_cli(["count", "--m", "2", "--n", "2", "--degrees", "1,1", "--seed", "9"]).stdout)
        assert payload["schema_version"] == "1.0"
        assert payload["command"] == "count"
        assert payload["meta"]["seed"] == 9
        assert set(payload["meta"]["budget"]) == {"max_states", "max_seconds"}

    def test_csv_output(self):
        result = run_cli(["count", "--m", "4", "--n", "4", "--degrees", "2,2", "--format", "csv"])
        assert result.returncode == ExitCode.SUCCESS
        header, row = result.stdout.strip().splitlines()
        assert header.split(",")[:4] == ["m", "n", "degrees", "count"]
        assert row.split(",")[3] == "90"

    def test_human_output(self):
        result = run_cli(["count", "--m", "4", "--n", "4", "--degrees", "2,2", "--format", "human"])
        assert result.returncode == ExitCode.SUCCESS
        assert "90" in result.stdout

    def test_output_file(self, tmp_path):
        out = tmp_path / "nested" / "count.json"
        result = run_cli(["count", "--m", "2", "--n", "2", "--degrees", "1,1", "-o", str(out)])
        assert result.returncode == ExitCode.SUCCESS
        assert result.stdout == ""
        assert json.loads(out.read_text())["result"]["count"] == "2"

    def test_reruns_are_byte_identical(self):
        args = ["count", "--m", "4", "--n", "4", "--degrees", "2,1,1", "--threads", "1"]
        assert run_cli(args).stdout == run_cli(args).stdout


class TestLatinAndFigure:
    """Test the latin and figure subcommands."""

    @pytest.mark.parametrize("method", ["dp", "row-extension"])
    def test_latin_squares(self, method):
        result = run_json(["latin", "--n", "5", "--k", "5", "--method", method])
        assert result["count"] == "161280"
        assert "asymptotic" not in result

    def test_latin_rectangle_has_estimate(self):
        result = run_json(["latin", "--n", "6", "--k", "2"])
        assert result["count"] == str(720 * 265)
        assert result["asymptotic"]["ln"] > 0

    def test_figure_rows(self):
        result = run_json(["figure", "--n", "5"])
        rows = result["rows"]
        assert [row["k"] for row in rows] == [0, 1, 2, 3, 4]
        assert all(row["status"] == "ok" for row in rows)
        assert rows[1]["ratio"] == pytest.approx(1.0, abs=0.05)

    def test_figure_csv(self):
        result = run_cli(["figure", "--n", "4", "--k-max", "2", "--format", "csv"])
        lines = result.stdout.strip().splitlines()
        assert len(lines) == 4
        assert "ratio" in lines[0].split(",")


class TestAsympt:
    """Test the asympt, regimes and clt subcommands."""

    def test_rprime(self):
        result = run_json(["asympt", "--quantity", "rprime", "--m", "2", "--n", "2", "--degrees", "1,1"])
        assert result["value"]["ln"] == pytest.approx(math.log(1.885618), abs=1e-6)
        assert result["exact"]["ratio"] == "8/3"

    def test_silver(self):
        args = ["--m", "5", "--n", "5", "--d-degree", "1", "--h-degree", "1"]
        assert run_json(["asympt", "--quantity", "silver", *args])["value"] == -1.0

    def test_falling(self):
        result = run_json(["asympt", "--quantity", "falling", "--N", "100", "--x", "10"])
        assert result["exact"]["ln"] == pytest.approx(45.5867, abs=1e-4)
        assert abs(result["difference"]) < 5e-3

    def test_overlap(self):
        args = ["--m", "10", "--n", "10", "--d-degree", "5", "--h-degree", "1"]
        result = run_json(["asympt", "--quantity", "overlap", *args])
        assert result["value"]["ln"] == pytest.approx(-6.43147, abs=1e-5)

    def test_unknown_variant(self):
        args = ["--m", "4", "--n", "4", "--degrees", "2,1,1", "--variant", "delta3"]
        result = run_cli(["asympt", "--quantity", "rapprox", *args])
        assert result.returncode == ExitCode.VALIDATION

    def test_missing_argument(self):
        result = run_cli(["asympt", "--quantity", "latin", "--n", "8"])
        assert result.returncode == ExitCode.VALIDATION

    def test_regimes(self):
        result = run_cli(["regimes", "--m", "10000", "--n", "10000", "--degrees", "9990,10", "--format", "csv"])
        assert result.returncode == ExitCode.SUCCESS
        lines = result.stdout.splitlines()
        assert lines[0].startswith("group,case,check")
        case_one = [line for line in lines[1:] if line.startswith("two-factor,1,")]
        assert case_one and case_one[0].endswith("heuristic-pass")

    def test_clt(self):
        result = run_json(["clt", "--m", "3", "--degrees", "2,1"])
        assert result["determinant"]["closed_form"] == "1/27"
        assert result["dimension"] == 2

    def test_clt_exact(self):
        result = run_json(["clt", "--m", "3", "--degrees", "4,4,4", "--exact"])
        assert int(result["count"]) > 0
        assert 0.5 < result["ratio"] < 2.0


class TestRelabelling:
    """Test the disjoint and switch subcommands."""

    def test_exact_matchings(self):
        result = run_json(["disjoint", "--graph", "matching:4", "--graph", "matching:4"])
        assert result["probability"] == "3/8"

    def test_graph_file(self, tmp_path):
        graph = tmp_path / "matching.json"
        graph.write_text(json.dumps({"m": 4, "n": 4, "edges": [[i, i] for i in range(4)]}))
        result = run_json(["disjoint", "--graph", str(graph), "--graph", "matching:4:1"])
        assert result["probability"] == "3/8"

    def test_monte_carlo_reproducible(self):
        args = ["disjoint", "--mode", "mc", "--graph", "matching:5", "--graph", "matching:5"]
        args += ["--trials", "4000", "--seed", "5"]
        first, second = run_cli(args), run_cli(args + ["--threads", "2"])
        assert json.loads(first.stdout)["result"]["successes"] == json.loads(second.stdout)["result"]["successes"]

    def test_extensions(self):
        result = run_json(["disjoint", "--mode", "extensions", "--graph", "matching:5", "--s-h", "1"])
        assert result["count"] == "44"
        assert result["silver_relative_error"] < 0.01

    def test_switch(self):
        result = run_json(["switch", "--d", "matching:4", "--h", "matching:4", "--balance"])
        assert result["labelings"] == "576"
        assert result["T_over_L0"] == "17/9"
        assert result["balanced"] is True
        assert result["notes"] == []

    def test_switch_with_empty_threshold_reports_null_log(self):
        """M = 0 empties T; its log is null with a note, never -inf."""
        result = run_cli(["switch", "--d", "empty:3x3", "--h", "matching:3"])
        assert result.returncode == ExitCode.SUCCESS
        assert "Infinity" not in result.stdout
        payload = json.loads(result.stdout)["result"]
        assert payload["M"] == 0
        assert payload["T_over_L0"] == "0"
        assert payload["ln_T_over_L0"] is None
        assert any("T = 0" in note for note in payload["notes"])


def test_verify_core_checks():
    result = run_cli(["verify", "--filter", "core", "--json"])

    assert result.returncode == ExitCode.SUCCESS
    payload = json.loads(result.stdout)
    assert payload["result"]["passed"] is True
    assert payload["result"]["failed"] == 0
    assert payload["result"]["total"] >= 2
