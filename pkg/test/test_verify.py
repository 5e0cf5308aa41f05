"""Tests for the acceptance harness."""

import io

import pytest
from rich.console import Console

from src import verify
from src.errors import ValidationError, ValidationErrorType
from src.switching import MC_BLOCK
from src.verify import CHECKS, CheckTag, Outcome, check, run_verification


class TestRegistry:
    """Test the check registry."""

    def test_names_unique(self):
        names = [name for name, _, _ in CHECKS]
        assert len(names) == len(set(names))

    def test_every_tag_has_checks(self):
        tags = {tag for _, tag, _ in CHECKS}
        assert tags == set(CheckTag)


class TestRunVerification:
    """Test running filtered subsets."""

    def test_core_checks_pass(self):
        report = run_verification("core")
        assert report.passed
        assert {c.tag for c in report.checks} == {CheckTag.CORE}
        assert report.to_dict()["failed"] == 0

    def test_asympt_checks_pass(self):
        report = run_verification("asympt")
        assert report.passed, [c.name for c in report.failures]

    def test_unknown_filter(self):
        with pytest.raises(ValidationError) as info:
            run_verification("everything")
        assert info.value.error_type == ValidationErrorType.INVALID_ARGUMENT

    def test_progress_lines(self):
        buffer = io.StringIO()
        run_verification("core", console=Console(file=buffer, width=120))
        assert "spec-validation" in buffer.getvalue()

    def test_raising_check_is_recorded_as_failed(self):
        @check("always-raises", CheckTag.CORE)
        def _raises(ctx) -> Outcome:
            raise RuntimeError("boom")

        try:
            report = run_verification("core")
        finally:
            CHECKS.pop()
        failed = {c.name: c for c in report.failures}
        assert "always-raises" in failed
        assert "boom" in failed["always-raises"].actual
        assert report.rows()[-1]["passed"] is False


class TestMonteCarloSeeds:
    """The multi-seed Monte Carlo check runs the full criterion."""

    def test_full_trial_count_and_seed_range(self):
        assert verify.SEED_RUN_TRIALS == 10**6
        assert verify.SEED_RUNS == 100

    def test_reports_every_seed(self, monkeypatch):
        monkeypatch.setattr(verify, "SEED_RUNS", 3)
        monkeypatch.setattr(verify, "SEED_RUN_TRIALS", 2 * MC_BLOCK)
        outcome = verify._monte_carlo_seeds(verify.CheckContext(seed=11))
        assert outcome.inputs == {"n": 5, "seeds": [11, 13], "trials": 2 * MC_BLOCK}
        assert outcome.actual["hits"] + len(outcome.actual["missed_seeds"]) == 3
        assert outcome.passed == (outcome.actual["hits"] == 3)
