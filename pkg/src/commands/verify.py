"""
The verify subcommand: run the acceptance suite.
"""

from __future__ import annotations

import argparse
from typing import TYPE_CHECKING

from ..verify import CheckTag, run_verification
from .base import Command, CommandOutput

if TYPE_CHECKING:
    from ..runner import RunConfig


class VerifyCommand(Command):
    name = "verify"
    help = "Run every acceptance check and report pass/fail per check"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument(
            "--filter",
            choices=[tag.value for tag in CheckTag],
            help="Only run checks with this tag",
        )
        parser.add_argument(
            "--json", action="store_true", help="Shorthand for --format json"
        )

    def run(self, config: "RunConfig") -> CommandOutput:
        report = run_verification(
            filter=config.option("filter"),
            seed=config.seed,
            workers=config.threads,
            budget=config.budget,
            console=config.progress,
        )
        title = f"Verification: {len(report.checks) - len(report.failures)}/{len(report.checks)} passed"
        return CommandOutput(report.to_dict(), report.rows(), ok=report.passed, title=title)
