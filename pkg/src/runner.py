"""
Command runner

Builds the run configuration, dispatches to a subcommand and renders its
result or failure as JSON, CSV or rich tables. Exit codes are stable for CI.
"""

from __future__ import annotations

import math
import os
import sys
import traceback
from argparse import Namespace
from dataclasses import dataclass, field
from enum import IntEnum, StrEnum
from pathlib import Path
from typing import Any, Mapping, Optional

from rich.console import Console

from .commands import CommandOutput, get_command
from .errors import (
    LimitError,
    SemifactorError,
    ValidationError,
    ValidationErrorType,
    display_error,
)
from .exact import CountBudget
from .formatters import ConsoleFormatter, CSVFormatter, JSONFormatter

console = Console()
err_console = Console(stderr=True)

BUDGET_ENV = "SEMIFACTOR_BUDGET_SECS"
SCHEMA_VERSION = "1.0"


class OutputFormat(StrEnum):
    JSON = "json"
    CSV = "csv"
    HUMAN = "human"


class ExitCode(IntEnum):
    SUCCESS = 0
    VALIDATION = 2
    BUDGET = 3
    VERIFICATION = 4
    IO = 5
    INTERNAL = 8


def _env_seconds(environ: Mapping[str, str]) -> float:
    raw = environ.get(BUDGET_ENV)
    if raw is None:
        return CountBudget.max_seconds
    try:
        seconds = float(raw)
    except ValueError:
        seconds = math.nan
    if not math.isfinite(seconds) or seconds <= 0:
        raise ValidationError.from_type(
            ValidationErrorType.INVALID_ARGUMENT,
            f"{BUDGET_ENV}={raw!r} is not a positive number of seconds",
        )
    return seconds


@dataclass(frozen=True)
class RunConfig:
    """Everything a run depends on. Two runs with equal configs print equal results."""

    command: str
    options: Mapping[str, Any] = field(default_factory=dict)
    seed: int = 0
    threads: int = 1
    budget: CountBudget = field(default_factory=CountBudget)
    output_format: OutputFormat = OutputFormat.JSON
    output_path: Optional[str] = None
    verbose: bool = False

    @classmethod
    def from_namespace(
        cls, args: Namespace, environ: Optional[Mapping[str, str]] = None
    ) -> "RunConfig":
        environ = os.environ if environ is None else environ
        seconds = args.seconds
        if seconds is None:
            seconds = _env_seconds(environ)
        common = {"command", "seed", "threads", "max_states", "seconds", "format", "output", "verbose"}
        options = {key: value for key, value in vars(args).items() if key not in common}
        return cls(
            command=args.command,
            options=options,
            seed=args.seed,
            threads=max(1, args.threads or 1),
            budget=CountBudget(max_states=args.max_states, max_seconds=seconds),
            output_format=OutputFormat(args.format),
            output_path=args.output,
            verbose=args.verbose,
        )

    def option(self, name: str, default: Any = None) -> Any:
        return self.options.get(name, default)

    @property
    def progress(self) -> Optional[Console]:
        """Console for progress lines, only when verbose."""
        return err_console if self.verbose else None

    def meta(self) -> dict[str, Any]:
        return {
            "seed": self.seed,
            "threads": self.threads,
            "budget": {
                "max_states": self.budget.max_states,
                "max_seconds": self.budget.max_seconds,
            },
        }


@dataclass
class FailureInfo:
    category: str
    message: str
    error_type: Optional[str] = None
    hint: Optional[str] = None
    details: dict[str, Any] = field(default_factory=dict)
    exception_type: Optional[str] = None


@dataclass
class RunResult:
    ok: bool
    exit_code: int
    command: str
    output: Optional[CommandOutput] = None
    failure: Optional[FailureInfo] = None


class Runner:
    """Runs one subcommand and reports it in the configured format."""

    def __init__(self, config: RunConfig):
        self.config = config
        self.json_formatter = JSONFormatter()
        self.csv_formatter = CSVFormatter()
        self.console_formatter = ConsoleFormatter(console)

    def run(self) -> RunResult:
        result = RunResult(ok=False, exit_code=ExitCode.INTERNAL, command=self.config.command)
        try:
            command = get_command(self.config.command)
            if self.config.verbose:
                err_console.print(
                    f"[dim]{command.name}[/dim] threads={self.config.threads} "
                    f"seed={self.config.seed} max_states={self.config.budget.max_states}"
                )
            output = command.run(self.config)
        except ValidationError as e:
            return self._finish_with_failure(result, ExitCode.VALIDATION, error=e)
        except LimitError as e:
            return self._finish_with_failure(result, ExitCode.BUDGET, error=e)
        except SemifactorError as e:
            return self._finish_with_failure(result, ExitCode.INTERNAL, error=e)
        except Exception as e:
            if self.config.verbose:
                traceback.print_exc()
            return self._finish_with_failure(
                result, ExitCode.INTERNAL, category="internal", message=str(e), exception=e
            )

        result.output = output
        result.ok = output.ok
        result.exit_code = ExitCode.SUCCESS if output.ok else ExitCode.VERIFICATION
        try:
            self._emit(result)
        except OSError as e:
            return self._finish_with_failure(
                result, ExitCode.IO, category="io", message=f"Failed to write output: {e}", exception=e
            )
        return result

    def _emit(self, result: RunResult) -> None:
        output = result.output
        assert output is not None
        if self.config.output_format == OutputFormat.HUMAN:
            self.console_formatter.display(result.command, output)
            if self.config.output_path:
                self._write(self.json_formatter.format(self._to_json_payload(result)))
            return
        if self.config.output_format == OutputFormat.CSV:
            text = self.csv_formatter.format(output.table())
        else:
            text = self.json_formatter.format(self._to_json_payload(result))
        if self.config.output_path:
            self._write(text)
        else:
            sys.stdout.write(text)

    def _write(self, text: str) -> None:
        path = Path(self.config.output_path)
        if path.parent != Path("."):
            path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        if self.config.output_format == OutputFormat.HUMAN or self.config.verbose:
            err_console.print(f"[blue]wrote[/blue] {path}")

    def _finish_with_failure(
        self,
        result: RunResult,
        exit_code: ExitCode,
        *,
        error: Optional[SemifactorError] = None,
        category: str = "internal",
        message: str = "",
        exception: Optional[Exception] = None,
    ) -> RunResult:
        if error is not None:
            info = error.to_dict()
            result.failure = FailureInfo(
                category=info["category"],
                message=info["message"],
                error_type=info["type"],
                hint=info["hint"],
                details=info["details"],
                exception_type=type(error).__name__,
            )
        else:
            result.failure = FailureInfo(
                category=category,
                message=message,
                exception_type=type(exception).__name__ if exception else None,
            )
        result.ok = False
        result.exit_code = exit_code

        if self.config.output_format == OutputFormat.HUMAN:
            if error is not None:
                display_error(error, err_console)
            else:
                err_console.print(f"[red]✗[/red] {result.failure.message}")
        else:
            # machine formats always get the error object on stdout
            sys.stdout.write(self.json_formatter.format(self._to_json_payload(result)))
        return result

    def _to_json_payload(self, result: RunResult) -> dict[str, Any]:
        if result.failure is not None:
            status = "error"
        else:
            status = "ok" if result.ok else "fail"
        payload: dict[str, Any] = {
            "schema_version": SCHEMA_VERSION,
            "command": result.command,
            "status": status,
            "meta": self.config.meta(),
        }
        if result.output is not None:
            payload["result"] = result.output.payload
        if result.failure is not None:
            payload["error"] = {
                "category": result.failure.category,
                "type": result.failure.error_type,
                "message": result.failure.message,
                "hint": result.failure.hint,
                "details": result.failure.details,
                "exception_type": result.failure.exception_type,
            }
        return payload


def run(config: RunConfig) -> RunResult:
    """Convenience wrapper around Runner."""
    return Runner(config).run()


def run_namespace(args: Namespace, environ: Optional[Mapping[str, str]] = None) -> RunResult:
    """Builds the config from parsed arguments and runs it; a bad config is a validation failure."""
    try:
        config = RunConfig.from_namespace(args, environ)
    except ValidationError as e:
        fallback = RunConfig(
            command=args.command,
            seed=args.seed,
            output_format=OutputFormat(args.format),
            verbose=args.verbose,
        )
        runner = Runner(fallback)
        result = RunResult(ok=False, exit_code=ExitCode.VALIDATION, command=args.command)
        return runner._finish_with_failure(result, ExitCode.VALIDATION, error=e)
    return run(config)
