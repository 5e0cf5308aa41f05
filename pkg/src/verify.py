"""
Verification harness

Runs the acceptance suite as a list of named checks. Each check records its
inputs, the expected and actual values, the tolerance and its runtime; a
check that raises is recorded as failed, never propagated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction
from itertools import product
from time import perf_counter
from typing import Any, Callable, Iterable, Optional

import numpy as np
from mpmath import mp
from rich.console import Console

from .asympt import (
    aggregate_exponent,
    clt_determinant,
    clt_estimate,
    clt_model,
    ransplit_prediction,
    rprime,
    silver_prediction,
    stirling_correction,
    summation_bounds,
)
from .asympt.clt import closed_form_determinant
from .core import BipartiteGraph, make_spec, transpose_spec
from .errors import ValidationError, ValidationErrorType
from .exact import (
    CountBudget,
    brute_force_count,
    count_disjoint_extensions,
    count_factorisations,
    count_latin_by_row_extension,
    count_latin_rectangles,
    derangements,
    exact_disjoint_probability,
    exact_lattice_count,
)
from .figure import figure_row
from .numeric import LogValue
from .switching import classify_labelings, monte_carlo_disjoint, switching_balance


class CheckTag(StrEnum):
    CORE = "core"
    EXACT = "exact"
    ASYMPT = "asympt"
    SWITCHING = "switching"
    CLI = "cli"


@dataclass
class Outcome:
    """What a check function returns."""

    passed: bool
    expected: Any
    actual: Any
    inputs: dict[str, Any] = field(default_factory=dict)
    tolerance: Optional[float] = None


@dataclass
class VerificationCheck:
    name: str
    tag: CheckTag
    inputs: dict[str, Any]
    expected: Any
    actual: Any
    tolerance: Optional[float]
    passed: bool
    runtime: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "tag": str(self.tag),
            "inputs": self.inputs,
            "expected": self.expected,
            "actual": self.actual,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "runtime": self.runtime,
        }


@dataclass
class VerificationReport:
    checks: list[VerificationCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> list[VerificationCheck]:
        return [check for check in self.checks if not check.passed]

    def to_dict(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "total": len(self.checks),
            "failed": len(self.failures),
            "checks": [check.to_dict() for check in self.checks],
        }

    def rows(self) -> list[dict[str, Any]]:
        return [
            {
                "name": check.name,
                "tag": str(check.tag),
                "passed": check.passed,
                "runtime": check.runtime,
                "tolerance": check.tolerance,
            }
            for check in self.checks
        ]


@dataclass(frozen=True)
class CheckContext:
    seed: int = 0
    workers: int = 1
    budget: CountBudget = field(default_factory=CountBudget)
    console: Optional[Console] = None


CheckFunction = Callable[[CheckContext], Outcome]
CHECKS: list[tuple[str, CheckTag, CheckFunction]] = []


def check(name: str, tag: CheckTag) -> Callable[[CheckFunction], CheckFunction]:
    def register(function: CheckFunction) -> CheckFunction:
        CHECKS.append((name, tag, function))
        return function

    return register


def _raises(error_type: ValidationErrorType, function: Callable[[], Any]) -> str:
    try:
        function()
    except ValidationError as e:
        return e.error_type.value if e.error_type == error_type else f"wrong type {e.error_type.value}"
    return "no error"


# core


@check("spec-validation", CheckTag.CORE)
def _spec_validation(ctx: CheckContext) -> Outcome:
    cases = {
        "degree_sum_mismatch": (ValidationErrorType.DEGREE_SUM_MISMATCH, lambda: make_spec(4, 4, [2, 1])),
        "integrality_violation": (ValidationErrorType.INTEGRALITY_VIOLATION, lambda: make_spec(3, 2, [1, 1])),
        "negative_degree": (ValidationErrorType.NEGATIVE_DEGREE, lambda: make_spec(2, 2, [3, -1])),
        "empty_degrees": (ValidationErrorType.EMPTY_DEGREES, lambda: make_spec(2, 2, [])),
        "not_strict": (ValidationErrorType.NOT_STRICT, lambda: make_spec(2, 2, [2, 0], strict=True)),
    }
    actual = {name: _raises(kind, function) for name, (kind, function) in cases.items()}
    expected = {name: name for name in cases}
    return Outcome(actual == expected, expected, actual)


@check("transpose", CheckTag.CORE)
def _transpose(ctx: CheckContext) -> Outcome:
    spec = make_spec(2, 4, [2, 2])
    flipped = transpose_spec(spec)
    actual = [flipped.m, flipped.n, list(flipped.s)]
    return Outcome(actual == [4, 2, [1, 1]] and transpose_spec(flipped) == spec, [4, 2, [1, 1]], actual)


# exact


def _small_specs() -> Iterable:
    for m, n in product(range(1, 4), repeat=2):
        for k in (1, 2):
            for s in product(range(n + 1), repeat=k + 1):
                if sum(s) != n or any((si * m) % n for si in s):
                    continue
                yield make_spec(m, n, s)


@check("oracle-equivalence", CheckTag.EXACT)
def _oracle_equivalence(ctx: CheckContext) -> Outcome:
    specs = list(_small_specs()) + [
        make_spec(4, 4, [2, 2]),
        make_spec(4, 4, [2, 1, 1]),
        make_spec(4, 4, [1, 1, 1, 1]),
    ]
    mismatches = []
    for spec in specs:
        dp = count_factorisations(spec, ctx.budget, ctx.workers)
        oracle = brute_force_count(spec, workers=ctx.workers)
        if dp != oracle:
            mismatches.append({"m": spec.m, "n": spec.n, "s": list(spec.s), "dp": dp, "oracle": oracle})
    return Outcome(not mismatches, [], mismatches, {"specs": len(specs)})


@check("spot-counts", CheckTag.EXACT)
def _spot_counts(ctx: CheckContext) -> Outcome:
    expected = {"R(2,2;1,1)": 2, "R(4,4;2,2)": 90, "R(3,3;1,1,1)": 12}
    actual = {
        "R(2,2;1,1)": count_factorisations(make_spec(2, 2, [1, 1]), ctx.budget),
        "R(4,4;2,2)": count_factorisations(make_spec(4, 4, [2, 2]), ctx.budget),
        "R(3,3;1,1,1)": count_factorisations(make_spec(3, 3, [1, 1, 1]), ctx.budget),
    }
    return Outcome(actual == expected, expected, actual)


@check("latin-single-row", CheckTag.EXACT)
def _latin_single_row(ctx: CheckContext) -> Outcome:
    expected = {n: math.factorial(n) for n in range(1, 9)}
    actual = {n: count_latin_rectangles(n, 1, ctx.budget) for n in range(1, 9)}
    return Outcome(actual == expected, expected, actual)


@check("latin-two-rows", CheckTag.EXACT)
def _latin_two_rows(ctx: CheckContext) -> Outcome:
    expected = {n: math.factorial(n) * derangements(n) for n in range(2, 8)}
    actual = {n: count_latin_rectangles(n, 2, ctx.budget) for n in range(2, 8)}
    return Outcome(actual == expected, expected, actual)


@check("latin-squares-4", CheckTag.EXACT)
def _latin_squares_4(ctx: CheckContext) -> Outcome:
    actual = [count_latin_rectangles(4, 3, ctx.budget), count_latin_rectangles(4, 4, ctx.budget)]
    return Outcome(actual == [576, 576], [576, 576], actual)


@check("latin-vs-factorisations", CheckTag.EXACT)
def _latin_vs_factorisations(ctx: CheckContext) -> Outcome:
    mismatches = []
    for n in range(2, 6):
        for k in range(1, min(3, n) + 1):
            latin = count_latin_rectangles(n, k, ctx.budget)
            factorisations = count_factorisations(make_spec(n, n, [n - k] + [1] * k), ctx.budget)
            if latin != factorisations:
                mismatches.append({"n": n, "k": k, "latin": latin, "factorisations": factorisations})
    return Outcome(not mismatches, [], mismatches)


@check("lattice-identity", CheckTag.EXACT)
def _lattice_identity(ctx: CheckContext) -> Outcome:
    expected, actual = {}, {}
    for n in (3, 6, 9, 12):
        s = [n // 3] * 3
        expected[n] = exact_lattice_count(3, n, s, ctx.budget)
        actual[n] = count_factorisations(make_spec(3, n, s), ctx.budget, ctx.workers)
    return Outcome(actual == expected, expected, actual, {"m": 3})


@check("matching-disjointness", CheckTag.EXACT)
def _matching_disjointness(ctx: CheckContext) -> Outcome:
    matching = BipartiteGraph.perfect_matching(7)
    probability = exact_disjoint_probability(matching, matching, ctx.workers)
    gap = abs(float(probability) - math.exp(-1))
    passed = probability == Fraction(1854, 5040) and gap <= 1e-3
    return Outcome(passed, "1854/5040", str(probability), {"n": 7, "gap_to_exp_-1": gap}, 1e-3)


@check("extensions-vs-prediction", CheckTag.EXACT)
def _extensions(ctx: CheckContext) -> Outcome:
    count = count_disjoint_extensions(BipartiteGraph.perfect_matching(5), 1, ctx.budget)
    prediction = float(silver_prediction(5, 5, Fraction(1, 5), Fraction(1, 5)).value())
    error = abs(prediction - count) / count
    return Outcome(
        count == 44 and error <= 0.01, 44, count, {"prediction": prediction, "relative_error": error}, 0.01
    )


# asympt


@check("rprime-convergence", CheckTag.ASYMPT)
def _rprime_convergence(ctx: CheckContext) -> Outcome:
    def gap(n: int) -> float:
        ln_r = LogValue.from_number(math.factorial(n)).ln
        return abs(float(mp.exp(ln_r - rprime(make_spec(n, n, [n - 1, 1])).ln)) - 1)

    gaps = {n: gap(n) for n in (6, 10, 12)}
    passed = gaps[10] <= 0.021 and gaps[12] < gaps[6]
    return Outcome(passed, "|R/R'-1| <= 0.021 at n=10, shrinking", gaps, tolerance=0.021)


@check("covariance-determinant", CheckTag.ASYMPT)
def _covariance(ctx: CheckContext) -> Outcome:
    worst = 0.0
    for m in range(2, 7):
        for k in range(1, 4):
            if k > m - 1:
                continue
            for base in (2, 3, 5):
                grids = (
                    [Fraction(1, k + base)] * k,
                    [Fraction(c, (k + 1) * (k + base)) for c in range(1, k + 1)],
                )
                for lams in grids:
                    n = math.lcm(*(lam.denominator for lam in lams))
                    s = [int(lam * n) for lam in lams]
                    determinant = clt_determinant(clt_model(m, [n - sum(s), *s]))
                    worst = max(worst, determinant.relative_difference)
    exact = closed_form_determinant(3, [Fraction(2, 3), Fraction(1, 3)])
    passed = worst <= 1e-9 and exact == Fraction(1, 27)
    expected = {"relative": 0.0, "m3_k1": "1/27"}
    actual = {"relative": worst, "m3_k1": str(exact)}
    return Outcome(passed, expected, actual, tolerance=1e-9)


@check("clt-estimate", CheckTag.ASYMPT)
def _clt_estimate(ctx: CheckContext) -> Outcome:
    ratios = {}
    for n in (12, 60):
        s = [n // 3] * 3
        exact = count_factorisations(make_spec(3, n, s), ctx.budget, ctx.workers)
        ratios[n] = float(mp.exp(clt_estimate(3, n, s).ln - LogValue.from_number(exact).ln))
    passed = 0.9 <= ratios[60] <= 1.1 and abs(ratios[60] - 1) < abs(ratios[12] - 1)
    return Outcome(passed, "ratio in [0.9, 1.1] at n=60, closer than n=12", ratios, {"m": 3})


def _random_summation_input(rng: np.random.Generator) -> tuple[list[float], list[float], int, float]:
    Z = int(rng.integers(2, 31))
    chat = float(rng.uniform(0.01, 0.33))
    A = list(rng.uniform(0.0, chat * Z, size=Z))
    B = []
    for i, a in enumerate(A, start=1):
        upper = 0.999 * chat / a if a > 0 else 1.0
        if i > 1:
            upper = min(upper, 1 / (i - 1))
        lower = -(0.999 * chat / a if a > 0 else 1.0)
        B.append(float(rng.uniform(lower, upper)))
    return A, B, Z, chat


@check("summation-bracket", CheckTag.ASYMPT)
def _summation(ctx: CheckContext) -> Outcome:
    base = summation_bounds([1.0] * 4, [0.0] * 4, 4, 0.3)
    rng = np.random.default_rng(ctx.seed)
    outside = 0
    for _ in range(1000):
        if not summation_bounds(*_random_summation_input(rng)).bracket_holds:
            outside += 1
    passed = base.bracket_holds and abs(base.total - 2.708333) < 1e-6 and outside == 0
    actual = {"partial_sum": base.total, "outside_bracket": outside}
    expected = {"partial_sum": 2.708333, "outside_bracket": 0}
    return Outcome(passed, expected, actual, {"random_inputs": 1000}, 1e-6)


def _random_spec(rng: np.random.Generator) -> tuple[int, int, list[int]]:
    """m is a multiple of n, so every spec drawn here is integral."""
    n = int(rng.integers(4, 40))
    m = n * int(rng.integers(1, 3))
    k = int(rng.integers(1, 4))
    cuts = sorted(rng.choice(np.arange(1, n), size=min(k, n - 1), replace=False).tolist())
    parts = [b - a for a, b in zip([0, *cuts], [*cuts, n])]
    return m, n, parts[1:]


@check("ransplit-identity", CheckTag.ASYMPT)
def _ransplit(ctx: CheckContext) -> Outcome:
    rng = np.random.default_rng(ctx.seed)
    worst = 0.0
    for _ in range(50):
        m, n, sub = _random_spec(rng)
        total = sum(sub)
        split = rprime(make_spec(m, n, [n - total, *sub]))
        whole = rprime(make_spec(m, n, [n - total, total]))
        worst = max(worst, abs(float(ransplit_prediction(m, n, sub).ln - (split.ln - whole.ln))))
    return Outcome(worst <= 1e-9, 0.0, worst, {"random_specs": 50}, 1e-9)


@check("aggregate-identity", CheckTag.ASYMPT)
def _aggregate(ctx: CheckContext) -> Outcome:
    rng = np.random.default_rng(ctx.seed)
    worst = 0.0
    for trial in range(100):
        m, n, sub = _random_spec(rng)
        lams = [Fraction(si, n) for si in sub]
        result = aggregate_exponent(m, n, lams, "silver" if trial % 2 else "mw")
        worst = max(worst, result.relative_difference)
    return Outcome(worst <= 1e-9, 0.0, worst, {"random_inputs": 100}, 1e-9)


@check("stirling-correction", CheckTag.ASYMPT)
def _stirling(ctx: CheckContext) -> Outcome:
    worst = max(
        abs(stirling_correction(N) - 1 / (12 * N)) * 360 * N**3 for N in range(1, 1001)
    )
    g10 = stirling_correction(10)
    passed = worst <= 1.0 and abs(g10 - 0.0083306) < 1e-6
    expected = {"scaled_gap": "<= 1", "g(10)": 0.0083306}
    actual = {"scaled_gap": worst, "g(10)": g10}
    return Outcome(passed, expected, actual, tolerance=1e-6)


# switching


@check("switching-balance", CheckTag.SWITCHING)
def _switching_balance(ctx: CheckContext) -> Outcome:
    graphs = {
        "matching": BipartiteGraph.perfect_matching(4),
        "2-regular": BipartiteGraph.circulant(4, [0, 1]),
    }
    results = {}
    passed = True
    for (d_name, d), (h_name, h) in product(graphs.items(), repeat=2):
        balance = switching_balance(d, h)
        table = classify_labelings(d, h, t_max=min(d.edge_count, h.edge_count), workers=ctx.workers)
        conserved = table.total == 576 and table.beyond == 0
        results[f"{d_name}/{h_name}"] = {"balanced": balance.balanced(), "mass": table.total}
        passed = passed and balance.balanced() and conserved
    return Outcome(passed, {"balanced": True, "mass": 576}, results)


@check("monte-carlo-matchings", CheckTag.SWITCHING)
def _monte_carlo(ctx: CheckContext) -> Outcome:
    matching = BipartiteGraph.perfect_matching(7)
    exact = Fraction(derangements(7), math.factorial(7))
    result = monte_carlo_disjoint([matching, matching], 10**6, ctx.seed, ctx.workers)
    within = abs(result.estimate - float(exact)) <= 3 * result.stderr
    inputs = {"trials": 10**6, "seed": ctx.seed}
    return Outcome(within, float(exact), result.estimate, inputs, 3 * result.stderr)


# matching disjointness over many seeds: 10^6 trials each, at most 1 in 100 outside 3 stderr
SEED_RUNS = 100
SEED_RUN_TRIALS = 10**6


@check("monte-carlo-seeds", CheckTag.SWITCHING)
def _monte_carlo_seeds(ctx: CheckContext) -> Outcome:
    matching = BipartiteGraph.perfect_matching(5)
    exact = float(Fraction(derangements(5), math.factorial(5)))
    seeds = range(ctx.seed, ctx.seed + SEED_RUNS)
    misses = []
    for seed in seeds:
        result = monte_carlo_disjoint([matching, matching], SEED_RUN_TRIALS, seed, ctx.workers)
        if abs(result.estimate - exact) > 3 * result.stderr:
            misses.append(seed)
    hits = SEED_RUNS - len(misses)
    required = SEED_RUNS - SEED_RUNS // 100
    inputs = {"n": 5, "seeds": [seeds.start, seeds.stop - 1], "trials": SEED_RUN_TRIALS}
    return Outcome(
        hits >= required,
        f">= {required} of {SEED_RUNS} within 3 stderr",
        {"hits": hits, "missed_seeds": misses},
        inputs,
    )


# figure data


@check("figure-rows", CheckTag.CLI)
def _figure(ctx: CheckContext) -> Outcome:
    rows = [figure_row(6, k, ctx.budget) for k in range(0, 6)]
    ratios = [row["ratio"] for row in rows]
    squares = count_latin_by_row_extension(6, 6)
    finite = all(r is not None and math.isfinite(r) and r >= 0.99 for r in ratios)
    passed = (
        finite
        and abs(ratios[1] - 1) <= 0.02
        and count_latin_rectangles(6, 5, ctx.budget) == squares
        and rows[-1]["x"] == 1.0
        and rows[0]["reference"] == 1.0
    )
    expected = {"k1_ratio": "within 2% of 1", "min_ratio": 0.99}
    return Outcome(passed, expected, {"ratios": ratios, "latin_squares": squares})


def run_verification(
    filter: Optional[str] = None,
    seed: int = 0,
    workers: int = 1,
    budget: Optional[CountBudget] = None,
    console: Optional[Console] = None,
) -> VerificationReport:
    """
    Run every check, or only those tagged ``filter``.

    Args:
        filter: A CheckTag value, or None for all checks
        seed: Base seed for the randomised checks
        workers: Worker processes handed to parallel-capable checks
        budget: Limits for the exact counts
        console: Where a line per finished check goes

    Returns:
        VerificationReport; a check that raises is recorded as failed
    """
    if filter is not None:
        try:
            CheckTag(filter)
        except ValueError:
            allowed = ", ".join(tag.value for tag in CheckTag)
            raise ValidationError.from_type(
                ValidationErrorType.INVALID_ARGUMENT, f"--filter={filter!r}; expected one of {allowed}"
            ) from None
    ctx = CheckContext(seed, workers, budget or CountBudget(), console)
    report = VerificationReport()
    for name, tag, function in CHECKS:
        if filter is not None and tag != filter:
            continue
        start = perf_counter()
        try:
            outcome = function(ctx)
        except Exception as e:
            outcome = Outcome(False, "no error", f"{type(e).__name__}: {e}")
        runtime = perf_counter() - start
        report.checks.append(
            VerificationCheck(
                name, tag, outcome.inputs, outcome.expected, outcome.actual,
                outcome.tolerance, bool(outcome.passed), runtime,
            )
        )
        if console is not None:
            mark = "[green]✓[/green]" if outcome.passed else "[red]✗[/red]"
            console.print(f"{mark} {name} [dim]({runtime:.2f}s)[/dim]")
    return report
