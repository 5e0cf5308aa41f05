"""
Exact counting subcommands: count, latin, figure.
"""

from __future__ import annotations

import argparse
from enum import StrEnum
from typing import TYPE_CHECKING

from ..asympt import latin_asymptotic
from ..core import make_spec
from ..errors import ValidationError, ValidationErrorType
from ..exact import (
    brute_force_count,
    count_factorisations_detailed,
    count_latin_by_row_extension,
    count_latin_rectangles,
)
from ..figure import figure_rows
from .base import Command, CommandOutput, choose, parse_int_list, require

if TYPE_CHECKING:
    from ..runner import RunConfig


class CountCommand(Command):
    name = "count"
    help = "Exact number of factorisations R(m, n; s)"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--m", type=int, required=True, help="Size of V1")
        parser.add_argument("--n", type=int, required=True, help="Size of V2")
        parser.add_argument(
            "--degrees", required=True, help="Comma-separated V1-side degrees s0,s1,...,sk"
        )
        parser.add_argument(
            "--oracle", action="store_true", help="Count by brute-force enumeration instead"
        )
        parser.add_argument(
            "--strict", action="store_true", help="Reject empty non-complement factors"
        )

    def run(self, config: "RunConfig") -> CommandOutput:
        spec = make_spec(
            config.option("m"),
            config.option("n"),
            parse_int_list(config.option("degrees")),
            strict=config.option("strict", False),
        )
        payload = {"spec": spec.to_dict()}
        if config.option("oracle", False):
            payload["count"] = str(brute_force_count(spec, workers=config.threads))
            payload["method"] = "brute-force"
        else:
            result = count_factorisations_detailed(
                spec, config.budget, config.threads, config.progress
            )
            payload["count"] = str(result.count)
            payload["method"] = result.method
            payload["states_explored"] = result.states_explored
        row = {"m": spec.m, "n": spec.n, "degrees": " ".join(map(str, spec.s))}
        row.update(count=payload["count"], method=payload["method"])
        return CommandOutput(payload, [row], title=f"R({spec.m}, {spec.n}; {list(spec.s)})")


class LatinMethod(StrEnum):
    DP = "dp"
    ROW_EXTENSION = "row-extension"


class LatinCommand(Command):
    name = "latin"
    help = "Exact number of k x n Latin rectangles F(n, k)"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--n", type=int, required=True, help="Number of symbols and columns")
        parser.add_argument("--k", type=int, required=True, help="Number of rows")
        parser.add_argument(
            "--method",
            default=LatinMethod.DP.value,
            help="dp (column DP) or row-extension (independent oracle)",
        )

    def run(self, config: "RunConfig") -> CommandOutput:
        n, k = require(config.option("n"), "--n"), require(config.option("k"), "--k")
        method = choose(LatinMethod, config.option("method", LatinMethod.DP.value), "--method")
        if method == LatinMethod.DP:
            count = count_latin_rectangles(n, k, config.budget, config.progress)
        else:
            count = count_latin_by_row_extension(n, k)
        payload = {"n": n, "k": k, "method": str(method), "count": str(count)}
        if 1 <= k < n:
            payload["asymptotic"] = latin_asymptotic(n, k).to_json()
        return CommandOutput(payload, title=f"F({n}, {k})")


class FigureCommand(Command):
    name = "figure"
    help = "Data for F(n, k) / R'(n, n; 1-k/n, 1/n, ..., 1/n) against 1 + x/12"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--n", type=int, required=True, help="Latin rectangle width")
        parser.add_argument("--k-max", type=int, help="Largest k (default n-1)")

    def run(self, config: "RunConfig") -> CommandOutput:
        n = require(config.option("n"), "--n")
        k_max = config.option("k_max")
        k_max = n - 1 if k_max is None else k_max
        if n < 1:
            raise ValidationError.from_type(ValidationErrorType.NON_POSITIVE_SIZE, f"n={n}")
        rows = figure_rows(n, k_max, config.budget, config.progress)
        payload = {"n": n, "k_max": k_max, "rows": rows}
        return CommandOutput(payload, rows, title=f"Latin rectangle ratios, n={n}")
