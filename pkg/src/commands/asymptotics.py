"""
Asymptotic subcommands: asympt, regimes, clt.

Densities come in as integer degrees over --n, never as decimals.
"""

from __future__ import annotations

import argparse
from enum import StrEnum
from fractions import Fraction
from typing import TYPE_CHECKING, Any, Callable

from ..asympt import (
    ExponentVariant,
    RapproxVariant,
    aggregate_exponent,
    clt_determinant,
    clt_estimate,
    clt_final_display,
    clt_model,
    dense_overlap_P,
    disjoint_probability_estimate,
    falling_factorial_expansion,
    gbar,
    latin_asymptotic,
    mw_exponent,
    ransplit_prediction,
    ranx_ratio,
    rapprox,
    regime_classify,
    rprime,
    rprime_exact,
    silver_exponent,
    stirling_correction,
)
from ..core import make_spec
from ..exact import count_factorisations
from ..numeric import LogValue
from .base import Command, CommandOutput, choose, density, parse_int_list, require

if TYPE_CHECKING:
    from ..runner import RunConfig

EXACT_RPRIME_MAX_EDGES = 400


class Quantity(StrEnum):
    RPRIME = "rprime"
    RAPPROX = "rapprox"
    FALLING = "falling"
    SILVER = "silver"
    MW = "mw"
    AGGREGATE = "aggregate"
    ESTIMATE = "estimate"
    OVERLAP = "overlap"
    STIRLING = "stirling"
    GBAR = "gbar"
    LATIN = "latin"
    RANSPLIT = "ransplit"
    RANX = "ranx"


def _degrees(config: "RunConfig") -> list[int]:
    return parse_int_list(require(config.option("degrees"), "--degrees"))


def _size(config: "RunConfig", flag: str) -> int:
    return require(config.option(flag), f"--{flag}")


def _sub_densities(config: "RunConfig") -> list[Fraction]:
    n = _size(config, "n")
    return [density(s, n, "--degrees") for s in _degrees(config)]


def _pair(config: "RunConfig") -> tuple[Fraction, Fraction]:
    n = config.option("n")
    return (
        density(config.option("d_degree"), n, "--d-degree"),
        density(config.option("h_degree"), n, "--h-degree"),
    )


def _rprime(config: "RunConfig") -> dict[str, Any]:
    spec = make_spec(_size(config, "m"), _size(config, "n"), _degrees(config))
    result: dict[str, Any] = {"spec": spec.to_dict(), "value": rprime(spec).to_json()}
    if spec.m * spec.n <= EXACT_RPRIME_MAX_EDGES:
        exact = rprime_exact(spec)
        result["exact"] = {
            "ratio": str(exact.ratio),
            "base": str(exact.base),
            "exponent": str(exact.exponent),
            "ln": float(exact.ln()),
        }
    return result


def _rapprox(config: "RunConfig") -> dict[str, Any]:
    variant = choose(RapproxVariant, config.option("variant") or "delta1", "--variant")
    value = rapprox(_size(config, "m"), _size(config, "n"), _degrees(config), variant)
    return {"variant": str(variant), "value": value.to_json()}


def _falling(config: "RunConfig") -> dict[str, Any]:
    N = _size(config, "N")
    x = require(config.option("x"), "--x")
    report = falling_factorial_expansion(N, Fraction(x, N))
    return {
        "exact": report.exact.to_json(),
        "expansion": report.expansion.to_json(),
        "difference": report.difference,
    }


def _exponent(function: Callable) -> Callable[["RunConfig"], dict[str, Any]]:
    def evaluate(config: "RunConfig") -> dict[str, Any]:
        lam_d, lam_h = _pair(config)
        value = function(_size(config, "m"), _size(config, "n"), lam_d, lam_h)
        return {"lambda_d": str(lam_d), "lambda_h": str(lam_h), "value": value}

    return evaluate


def _aggregate(config: "RunConfig") -> dict[str, Any]:
    variant = choose(ExponentVariant, config.option("variant") or "silver", "--variant")
    result = aggregate_exponent(_size(config, "m"), _size(config, "n"), _sub_densities(config), variant)
    return {
        "variant": str(result.variant),
        "telescoped": result.telescoped,
        "closed_form": result.closed_form,
        "relative_difference": result.relative_difference,
    }


def _estimate(config: "RunConfig") -> dict[str, Any]:
    value = disjoint_probability_estimate(_size(config, "m"), _size(config, "n"), _sub_densities(config))
    return {"value": value.to_json()}


def _overlap(config: "RunConfig") -> dict[str, Any]:
    lam1, lamhat = _pair(config)
    value = dense_overlap_P(_size(config, "m"), _size(config, "n"), lam1, lamhat)
    return {"lambda_1": str(lam1), "lambda_hat": str(lamhat), "value": value.to_json()}


def _stirling(config: "RunConfig") -> dict[str, Any]:
    N = _size(config, "N")
    return {"N": N, "value": stirling_correction(N), "leading_term": 1 / (12 * N)}


def _gbar(config: "RunConfig") -> dict[str, Any]:
    lam1, lamhat = _pair(config)
    return {"N": _size(config, "N"), "value": gbar(_size(config, "N"), lamhat, lam1)}


def _latin(config: "RunConfig") -> dict[str, Any]:
    return {"value": latin_asymptotic(_size(config, "n"), _size(config, "k")).to_json()}


def _ransplit(config: "RunConfig") -> dict[str, Any]:
    value = ransplit_prediction(_size(config, "m"), _size(config, "n"), _degrees(config))
    return {"value": value.to_json()}


def _ranx(config: "RunConfig") -> dict[str, Any]:
    lam1, lamhat = _pair(config)
    return ranx_ratio(_size(config, "m"), _size(config, "n"), lam1, lamhat).to_dict()


QUANTITIES: dict[Quantity, Callable[["RunConfig"], dict[str, Any]]] = {
    Quantity.RPRIME: _rprime,
    Quantity.RAPPROX: _rapprox,
    Quantity.FALLING: _falling,
    Quantity.SILVER: _exponent(silver_exponent),
    Quantity.MW: _exponent(mw_exponent),
    Quantity.AGGREGATE: _aggregate,
    Quantity.ESTIMATE: _estimate,
    Quantity.OVERLAP: _overlap,
    Quantity.STIRLING: _stirling,
    Quantity.GBAR: _gbar,
    Quantity.LATIN: _latin,
    Quantity.RANSPLIT: _ransplit,
    Quantity.RANX: _ranx,
}


class AsymptCommand(Command):
    name = "asympt"
    help = "Evaluate one closed-form or asymptotic quantity"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument(
            "--quantity",
            required=True,
            choices=[q.value for q in Quantity],
            help="Quantity to evaluate",
        )
        parser.add_argument("--m", type=int, help="Size of V1")
        parser.add_argument("--n", type=int, help="Size of V2 (and the density denominator)")
        parser.add_argument("--k", type=int, help="Number of rows (latin)")
        parser.add_argument("--N", type=int, help="Argument of falling/stirling/gbar")
        parser.add_argument("--x", type=int, help="lambda*N for falling")
        parser.add_argument("--degrees", help="Comma-separated integer degrees")
        parser.add_argument("--d-degree", type=int, help="V1 degree of D (lambda_d = d/n)")
        parser.add_argument("--h-degree", type=int, help="V1 degree of H (lambda_h = h/n)")
        parser.add_argument("--variant", help="delta1|delta2 for rapprox, silver|mw for aggregate")

    def run(self, config: "RunConfig") -> CommandOutput:
        quantity = choose(Quantity, config.option("quantity"), "--quantity")
        payload = {"quantity": str(quantity), **QUANTITIES[quantity](config)}
        return CommandOutput(payload, title=str(quantity))


def _regime_rows(report) -> list[dict[str, Any]]:
    rows = []
    for group, cases in (("two-factor", report.two_factor), ("many-factor", report.many_factor)):
        for case in cases:
            for check in case.checks:
                rows.append(
                    {
                        "group": group,
                        "case": case.case,
                        "check": check.name,
                        "kind": str(check.kind),
                        "lhs": check.lhs,
                        "rhs": check.rhs,
                        "satisfied": check.satisfied,
                        "verdict": str(case.verdict),
                    }
                )
    return rows


class RegimesCommand(Command):
    name = "regimes"
    help = "Report which proven regimes (m, n, lambda) falls into"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--m", type=int, required=True, help="Size of V1")
        parser.add_argument("--n", type=int, required=True, help="Size of V2")
        parser.add_argument(
            "--degrees",
            required=True,
            help="Degrees s0,s1,...,sk; lambda is (n - s0)/n and lambda_i = s_i/n",
        )
        parser.add_argument("--eps", type=float, default=0.1, help="Epsilon (default 0.1)")
        parser.add_argument("--c", type=float, default=0.05, help="Small constant c (default 0.05)")
        parser.add_argument("--K", type=float, default=2.0, help="Log power K (default 2)")
        parser.add_argument("--margin", type=float, default=0.5, help="o(.) margin (default 0.5)")

    def run(self, config: "RunConfig") -> CommandOutput:
        m, n = config.option("m"), config.option("n")
        spec = make_spec(m, n, parse_int_list(config.option("degrees")))
        lams = list(spec.densities[1:]) or [Fraction(0)]
        report = regime_classify(
            m,
            n,
            sum(lams, Fraction(0)),
            eps=config.option("eps", 0.1),
            c=config.option("c", 0.05),
            K=config.option("K", 2.0),
            margin=config.option("margin", 0.5),
            lams=lams,
        )
        return CommandOutput(report.to_dict(), _regime_rows(report), title="Regime report")


class CLTCommand(Command):
    name = "clt"
    help = "Covariance model, determinant and local CLT estimate for small m"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--m", type=int, required=True, help="Size of V1 (small)")
        parser.add_argument(
            "--degrees", required=True, help="Degrees s0,...,sk; n is their sum"
        )
        parser.add_argument(
            "--exact", action="store_true", help="Also count factorisations exactly and compare"
        )

    def run(self, config: "RunConfig") -> CommandOutput:
        m = config.option("m")
        s = parse_int_list(config.option("degrees"))
        n = sum(s)
        model = clt_model(m, s)
        payload: dict[str, Any] = {
            "m": m,
            "n": n,
            "degrees": s,
            "dimension": model.dimension,
            "table_deviation": model.table_deviation,
            "determinant": clt_determinant(model).to_dict(),
        }
        spec = make_spec(m, n, s)
        estimate = clt_estimate(m, n, s)
        payload["estimate"] = estimate.to_json()
        display = clt_final_display(m, n, s)
        payload["final_display"] = {
            "exact": display.exact.to_json(),
            "asymptotic": display.asymptotic.to_json(),
            "difference": display.difference,
        }
        if config.option("exact", False):
            count = count_factorisations(spec, config.budget, config.threads, config.progress)
            payload["count"] = str(count)
            payload["ratio"] = float((estimate / LogValue.from_number(count)).value())
        return CommandOutput(payload, title=f"CLT model m={m}, s={s}")
