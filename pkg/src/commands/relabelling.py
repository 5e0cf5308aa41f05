"""
Relabelling subcommands: disjoint and switch.
"""

from __future__ import annotations

import argparse
import math
from enum import StrEnum
from fractions import Fraction
from typing import TYPE_CHECKING, Any

from ..asympt import disjoint_probability_estimate, mw_prediction, silver_prediction
from ..core import BipartiteGraph
from ..errors import ValidationError, ValidationErrorType
from ..exact import count_disjoint_extensions, exact_disjoint_probability
from ..numeric import LogValue
from ..switching import classify_labelings, monte_carlo_disjoint, switching_balance
from .base import Command, CommandOutput, choose, require, resolve_graph

if TYPE_CHECKING:
    from ..runner import RunConfig

GRAPH_HELP = (
    "Graph file (JSON) or builtin: matching:N[:SHIFT], circulant:N:S1,S2, "
    "complete:MxN, empty:MxN"
)


class DisjointMode(StrEnum):
    EXACT = "exact"
    MC = "mc"
    ESTIMATE = "estimate"
    EXTENSIONS = "extensions"


def _graphs(config: "RunConfig", at_least: int) -> list[BipartiteGraph]:
    refs = config.option("graphs") or []
    if len(refs) < at_least:
        raise ValidationError.from_type(
            ValidationErrorType.INVALID_ARGUMENT,
            f"need at least {at_least} --graph, got {len(refs)}",
        )
    return [resolve_graph(ref) for ref in refs]


def _densities(graphs: list[BipartiteGraph]) -> list[Fraction]:
    return [g.density() for g in graphs]


def _relative_error(actual: Any, predicted: Any) -> float | None:
    actual, predicted = float(actual), float(predicted)
    return None if actual == 0 else abs(predicted - actual) / actual


class DisjointCommand(Command):
    name = "disjoint"
    help = "Probability that randomly relabelled graphs are edge-disjoint"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument(
            "--mode",
            default=DisjointMode.EXACT.value,
            help="exact | mc | estimate | extensions (default exact)",
        )
        parser.add_argument(
            "--graph", dest="graphs", action="append", metavar="REF", help=GRAPH_HELP
        )
        parser.add_argument("--trials", type=int, default=100_000, help="Monte Carlo trials")
        parser.add_argument("--s-h", type=int, help="V1 degree of H for --mode extensions")

    def run(self, config: "RunConfig") -> CommandOutput:
        mode = choose(DisjointMode, config.option("mode", "exact"), "--mode")
        if mode == DisjointMode.EXTENSIONS:
            return self._extensions(config)
        graphs = _graphs(config, 2)
        m, n = graphs[0].shape
        estimate = disjoint_probability_estimate(m, n, _densities(graphs))
        payload: dict[str, Any] = {
            "mode": str(mode),
            "m": m,
            "n": n,
            "densities": [str(lam) for lam in _densities(graphs)],
            "estimate": float(estimate),
        }
        if mode == DisjointMode.EXACT:
            if len(graphs) != 2:
                raise ValidationError.from_type(
                    ValidationErrorType.INVALID_ARGUMENT, "--mode exact takes exactly 2 graphs"
                )
            probability = exact_disjoint_probability(graphs[0], graphs[1], config.threads)
            payload["probability"] = str(probability)
            payload["probability_float"] = float(probability)
            payload["difference"] = abs(float(probability) - float(estimate))
        elif mode == DisjointMode.MC:
            result = monte_carlo_disjoint(
                graphs, config.option("trials", 100_000), config.seed, config.threads
            )
            payload.update(result.to_dict())
        return CommandOutput(payload, title=f"Disjoint relabellings ({mode})")

    def _extensions(self, config: "RunConfig") -> CommandOutput:
        d = _graphs(config, 1)[0]
        s_h = require(config.option("s_h"), "--s-h")
        count = count_disjoint_extensions(d, s_h, config.budget, config.progress)
        m, n = d.shape
        lam_d, lam_h = d.density(), Fraction(s_h, n)
        silver = silver_prediction(m, n, lam_d, lam_h)
        mw = mw_prediction(m, n, lam_d, lam_h)
        payload = {
            "mode": str(DisjointMode.EXTENSIONS),
            "m": m,
            "n": n,
            "lambda_d": str(lam_d),
            "lambda_h": str(lam_h),
            "count": str(count),
            "silver_prediction": silver.to_json(),
            "silver_relative_error": _relative_error(count, silver.value()),
            "mw_prediction": mw.to_json(),
            "mw_relative_error": _relative_error(count, mw.value()),
        }
        return CommandOutput(payload, title="Semiregular graphs avoiding D")


class SwitchCommand(Command):
    name = "switch"
    help = "Exact labeling class sizes L(t) and their ratios under switchings"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--d", required=True, metavar="REF", help=f"Graph D. {GRAPH_HELP}")
        parser.add_argument("--h", required=True, metavar="REF", help="Graph H, same format")
        parser.add_argument("--t-max", type=int, help="Largest t tabulated (default min(M, |D|, |H|))")
        parser.add_argument(
            "--no-enforce",
            action="store_true",
            help="Keep labelings that share a 2-path with D in their classes",
        )
        parser.add_argument(
            "--balance", action="store_true", help="Also double count forward and reverse switchings"
        )

    def run(self, config: "RunConfig") -> CommandOutput:
        d, h = resolve_graph(config.option("d")), resolve_graph(config.option("h"))
        table = classify_labelings(
            d,
            h,
            t_max=config.option("t_max"),
            enforce_no_two_path=not config.option("no_enforce", False),
            workers=config.threads,
        )
        m, n = d.shape
        rows = table.ratios()
        payload: dict[str, Any] = {
            **table.to_dict(),
            "labelings": str(math.factorial(m) * math.factorial(n)),
            "ratios": rows,
            "T_over_L0_predicted": table.predicted_t_over_l0(),
        }
        ok = table.total == math.factorial(m) * math.factorial(n)
        notes: list[str] = []
        if table.L(0):
            t_over_l0 = table.t_over_l0()
            payload["T_over_L0"] = str(t_over_l0)
            payload["ln_T_over_L0"] = LogValue.from_number(t_over_l0).ln_float()
            if not t_over_l0:
                notes.append(f"T = 0 because M = {table.m_threshold}; ln(T/L0) is null")
        else:
            payload["T_over_L0"] = payload["ln_T_over_L0"] = None
            notes.append("L(0) = 0; T/L0 is undefined")
        if any(row["ratio_exact"] is None for row in rows):
            notes.append("ratio_exact is null where L(t-1) = 0")
        payload["notes"] = notes
        if config.option("balance", False):
            balance = switching_balance(d, h)
            payload["balance"] = balance.to_dict()
            payload["balanced"] = balance.balanced()
            ok = ok and balance.balanced()
        return CommandOutput(payload, rows, ok=ok, title=f"Labeling classes of H against D ({m}x{n})")
