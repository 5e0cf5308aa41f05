"""CLI regression tests for failure handling and exit code contracts."""

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from src.runner import BUDGET_ENV, ExitCode


PROJECT_ROOT = Path(__file__).resolve().parent.parent
MAIN_PY = PROJECT_ROOT / "main.py"


def run_cli(
    args: list[str], extra_env: dict[str, str] | None = None
) -> subprocess.CompletedProcess[str]:
    """Run the semifactor CLI and capture output."""
    env = os.environ.copy()
    env.pop(BUDGET_ENV, None)
    env.update(extra_env or {})
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


def test_cli_degree_sum_mismatch_returns_validation_error():
    result = run_cli(["count", "--m", "2", "--n", "2", "--degrees", "1,2"])

    assert result.returncode == ExitCode.VALIDATION
    payload = json.loads(result.stdout)
    assert payload["schema_version"] == "1.0"
    assert payload["status"] == "error"
    assert payload["command"] == "count"
    assert payload["error"]["category"] == "validation"
    assert payload["error"]["type"] == "degree_sum_mismatch"
    assert "result" not in payload


def test_cli_integrality_violation_names_the_factor():
    result = run_cli(["count", "--m", "3", "--n", "2", "--degrees", "1,1"])

    assert result.returncode == ExitCode.VALIDATION
    payload = json.loads(result.stdout)
    assert payload["error"]["type"] == "integrality_violation"
    assert payload["error"]["details"]["factor"] == 0


def test_cli_strict_rejects_empty_factor():
    result = run_cli(["count", "--m", "2", "--n", "2", "--degrees", "2,0", "--strict"])

    assert result.returncode == ExitCode.VALIDATION
    assert json.loads(result.stdout)["error"]["type"] == "not_strict"


def test_cli_budget_exceeded_returns_budget_code():
    result = run_cli(
        ["count", "--m", "6", "--n", "6", "--degrees", "2,2,2", "--max-states", "2"]
    )

    assert result.returncode == ExitCode.BUDGET
    payload = json.loads(result.stdout)
    assert payload["status"] == "error"
    assert payload["error"]["category"] == "budget"
    assert payload["meta"]["budget"]["max_states"] == 2


def test_cli_too_many_labelings_returns_budget_code():
    result = run_cli(["switch", "--d", "matching:12", "--h", "matching:12"])

    assert result.returncode == ExitCode.BUDGET


def test_cli_human_mode_reports_errors_on_stderr():
    result = run_cli(["count", "--m", "2", "--n", "2", "--degrees", "1,2", "--format", "human"])

    assert result.returncode == ExitCode.VALIDATION
    assert result.stdout == ""
    assert "degree" in result.stderr.lower()


def test_cli_missing_graph_file_is_a_validation_error(tmp_path):
    missing = tmp_path / "missing.json"
    result = run_cli(["disjoint", "--graph", str(missing), "--graph", "matching:4"])

    assert result.returncode == ExitCode.VALIDATION
    assert json.loads(result.stdout)["error"]["type"] == "graph_file"


def test_cli_malformed_graph_file(tmp_path):
    graph = tmp_path / "graph.json"
    graph.write_text('{"m": 2, "n": 2, "edges": [[0, 0], [0, 0]]}')

    result = run_cli(["disjoint", "--graph", str(graph), "--graph", "matching:2"])

    assert result.returncode == ExitCode.VALIDATION
    assert json.loads(result.stdout)["error"]["type"] == "duplicate_edge"


def test_cli_exact_disjoint_needs_two_graphs():
    result = run_cli(
        ["disjoint", "--graph", "matching:3", "--graph", "matching:3", "--graph", "matching:3"]
    )

    assert result.returncode == ExitCode.VALIDATION
    assert json.loads(result.stdout)["error"]["type"] == "invalid_argument"


def test_cli_unknown_mode_is_rejected():
    result = run_cli(["latin", "--n", "4", "--k", "2", "--method", "guess"])

    assert result.returncode == ExitCode.VALIDATION


def test_cli_rejects_non_positive_budget():
    result = run_cli(["count", "--m", "2", "--n", "2", "--degrees", "1,1", "--max-states", "0"])

    assert result.returncode == 2
    assert "--max-states must be positive" in result.stderr


@pytest.mark.parametrize("value", ["abc", "0", "-5", "nan", "inf"])
def test_cli_bad_budget_env_is_a_validation_error(value):
    result = run_cli(["count", "--m", "2", "--n", "2", "--degrees", "1,1"], {BUDGET_ENV: value})

    assert result.returncode == ExitCode.VALIDATION
    payload = json.loads(result.stdout)
    assert payload["status"] == "error"
    assert payload["command"] == "count"
    assert payload["error"]["type"] == "invalid_argument"
    assert BUDGET_ENV in payload["error"]["message"]
    assert "Traceback" not in result.stderr


def test_cli_bad_budget_env_in_human_mode_goes_to_stderr():
    result = run_cli(
        ["count", "--m", "2", "--n", "2", "--degrees", "1,1", "--format", "human"],
        {BUDGET_ENV: "soon"},
    )

    assert result.returncode == ExitCode.VALIDATION
    assert result.stdout == ""
    assert BUDGET_ENV in result.stderr


def test_cli_budget_env_sets_the_time_budget():
    result = run_cli(["count", "--m", "2", "--n", "2", "--degrees", "1,1"], {BUDGET_ENV: "12.5"})

    assert result.returncode == ExitCode.SUCCESS
    assert json.loads(result.stdout)["meta"]["budget"]["max_seconds"] == 12.5


def test_cli_seconds_flag_overrides_budget_env():
    result = run_cli(
        ["count", "--m", "2", "--n", "2", "--degrees", "1,1", "--seconds", "3"], {BUDGET_ENV: "abc"}
    )

    assert result.returncode == ExitCode.SUCCESS
    assert json.loads(result.stdout)["meta"]["budget"]["max_seconds"] == 3.0


def test_cli_requires_a_command():
    result = run_cli([])

    assert result.returncode == 2
    assert result.stdout == ""


def test_cli_io_error_when_output_parent_is_a_file(tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("")

    result = run_cli(
        ["count", "--m", "2", "--n", "2", "--degrees", "1,1", "-o", str(blocker / "out.json")]
    )

    assert result.returncode == ExitCode.IO
    assert json.loads(result.stdout)["error"]["category"] == "io"

