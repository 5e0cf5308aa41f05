"""
Which proven regimes does a given (m, n, lambda) fall into?

Asymptotic conditions are turned into finite checks: an O(.) bound is tested
with unit constant (quantity <= bound), an o(.) condition as
quantity <= margin. Every check carries both sides so the caller can judge
for themselves; verdicts are only ever heuristic.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from enum import StrEnum
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from ..errors import ValidationError, ValidationErrorType
from ..numeric import to_fraction

FractionLike = Fraction | int | str

UNPROVEN_NOTE = (
    "The two-factor estimate is conjectured to hold for all (m, n, lambda); "
    "parameters outside every case below are unproven territory, not a failure of the estimate."
)
SINGLE_K_NOTE = "lambda*m >= log^K n is required for every K; only the given K is checked."
BOUNDED_M_NOTE = "m = O(1) is tested as k(m-1)/n <= margin."


class CheckKind(StrEnum):
    EXACT = "exact"
    BIG_O = "O"
    LITTLE_O = "o"


class Verdict(StrEnum):
    PASS = "heuristic-pass"
    FAIL = "fail"


@dataclass(frozen=True)
class InequalityCheck:
    name: str
    lhs: float
    rhs: float
    kind: CheckKind

    @property
    def satisfied(self) -> bool:
        return self.lhs <= self.rhs

    def to_dict(self) -> dict:
        return {**asdict(self), "kind": str(self.kind), "satisfied": self.satisfied}


@dataclass(frozen=True)
class CaseReport:
    case: str
    checks: tuple[InequalityCheck, ...]
    note: Optional[str] = None

    @property
    def verdict(self) -> Verdict:
        return Verdict.PASS if all(check.satisfied for check in self.checks) else Verdict.FAIL

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "verdict": str(self.verdict),
            "checks": [check.to_dict() for check in self.checks],
            "note": self.note,
        }


@dataclass(frozen=True)
class RegimeReport:
    parameters: dict
    general: tuple[InequalityCheck, ...]
    two_factor: tuple[CaseReport, ...]
    many_factor: tuple[CaseReport, ...]
    notes: tuple[str, ...] = field(default=(UNPROVEN_NOTE,))

    def case(self, name: str) -> CaseReport:
        for report in (*self.two_factor, *self.many_factor):
            if report.case == name:
                return report
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "parameters": self.parameters,
            "general": [check.to_dict() for check in self.general],
            "two_factor": [report.to_dict() for report in self.two_factor],
            "many_factor": [report.to_dict() for report in self.many_factor],
            "notes": list(self.notes),
        }


def _ratio(numerator: float, denominator: float) -> float:
    return numerator / denominator if denominator > 0 else math.inf


def _dense_checks(m: int, n: int, lam: float, eps: float, margin: float) -> tuple[InequalityCheck, ...]:
    spread = lam * (1 - lam)
    return (
        InequalityCheck(
            "(1-2l)^2 (1 + 5m/6n + 5n/6m) <= (4-eps) l(1-l) ln n",
            (1 - 2 * lam) ** 2 * (1 + 5 * m / (6 * n) + 5 * n / (6 * m)),
            (4 - eps) * spread * math.log(n),
            CheckKind.EXACT,
        ),
        InequalityCheck(
            "n / (l(1-l) m^(1+eps)) <= margin",
            _ratio(n, spread * m ** (1 + eps)),
            margin,
            CheckKind.LITTLE_O,
        ),
    )


def _two_factor_cases(
    m: int, n: int, lam: float, eps: float, c: float, K: float, margin: float
) -> tuple[CaseReport, ...]:
    spread = lam * (1 - lam)
    return (
        CaseReport(
            "1",
            (InequalityCheck("l (mn)^(1/4) <= margin", lam * (m * n) ** 0.25, margin, CheckKind.LITTLE_O),),
        ),
        CaseReport("2", _dense_checks(m, n, lam, eps, margin)),
        CaseReport(
            "3",
            (
                InequalityCheck("2 <= m", 2, m, CheckKind.EXACT),
                InequalityCheck(
                    "m <= (l(1-l) n)^(1/2-eps)", m, (spread * n) ** (0.5 - eps), CheckKind.BIG_O
                ),
            ),
        ),
        CaseReport(
            "4",
            (
                InequalityCheck("l <= c", lam, c, CheckKind.EXACT),
                InequalityCheck(
                    "n <= l^(1/2-eps) m^(3/2-eps)",
                    n,
                    lam ** (0.5 - eps) * m ** (1.5 - eps),
                    CheckKind.BIG_O,
                ),
                InequalityCheck("log^K n <= l m", math.log(n) ** K, lam * m, CheckKind.EXACT),
            ),
            note=SINGLE_K_NOTE,
        ),
    )


def regime_classify(
    m: int,
    n: int,
    lam: FractionLike,
    eps: float = 0.1,
    c: float = 0.05,
    K: float = 2.0,
    margin: float = 0.5,
    lams: Optional[Sequence[FractionLike]] = None,
) -> RegimeReport:
    """
    Substitute the parameters into every case condition.

    Args:
        m: Size of V1
        n: Size of V2
        lam: Total density of the non-complement factors
        eps: Exponent slack in the case inequalities
        c: Density bound l <= c of the sparse case
        K: Exponent in log^K n <= l m, checked for this K only
        margin: Upper bound standing in for each o(1) quantity
        lams: Individual densities lambda_1..lambda_k summing to ``lam``;
            without it the many-factor cases are evaluated for k = 1

    Returns:
        RegimeReport with both sides of every condition, per-case verdicts and
        notes. Verdicts are heuristic.
    """
    if margin <= 0 or m < 1 or n < 1:
        raise ValidationError.from_type(
            ValidationErrorType.INVALID_ARGUMENT, f"m={m}, n={n}, margin={margin}"
        )
    lam_exact = to_fraction(lam)
    densities = [to_fraction(x) for x in lams] if lams is not None else [lam_exact]
    if sum(densities) != lam_exact:
        raise ValidationError.from_type(
            ValidationErrorType.INVALID_DENSITY,
            f"densities sum to {sum(densities)}, not {lam_exact}",
        )
    lam_f = float(lam_exact)
    k = len(densities)

    general = (
        InequalityCheck("2 <= m", 2, m, CheckKind.EXACT),
        InequalityCheck("m <= n", m, n, CheckKind.EXACT),
    )
    two_factor = _two_factor_cases(m, n, lam_f, eps, c, K, margin)
    passing = sum(report.verdict == Verdict.PASS for report in two_factor)

    first = float(densities[0])
    rest = float(sum(densities[1:], Fraction(0)))
    pair_sum = float(sum((a * b for a, b in combinations(densities, 2)), Fraction(0)))
    many_factor = (
        CaseReport(
            "a",
            (
                InequalityCheck("k = 1", k, 1, CheckKind.EXACT),
                InequalityCheck("some two-factor case holds", 1, passing, CheckKind.EXACT),
            ),
        ),
        CaseReport(
            "b",
            (
                InequalityCheck("2 <= k", 2, k, CheckKind.EXACT),
                InequalityCheck("m <= n", m, n, CheckKind.EXACT),
                InequalityCheck("n^3 l^3 / m <= margin", n**3 * lam_f**3 / m, margin, CheckKind.LITTLE_O),
            ),
        ),
        CaseReport(
            "c",
            (
                InequalityCheck("2 <= k", 2, k, CheckKind.EXACT),
                InequalityCheck("m <= n", m, n, CheckKind.EXACT),
                InequalityCheck(
                    "m^(1/2) n sum_{i<j} l_i l_j <= margin",
                    math.sqrt(m) * n * pair_sum,
                    margin,
                    CheckKind.LITTLE_O,
                ),
            ),
        ),
        CaseReport(
            "d",
            (
                InequalityCheck("|m - n| <= 0", abs(m - n), 0, CheckKind.EXACT),
                InequalityCheck(
                    "max |l_i - 1/n| <= 0",
                    max(abs(float(x) - 1 / n) for x in densities),
                    0,
                    CheckKind.EXACT,
                ),
                InequalityCheck("k / n^(6/7) <= margin", k / n ** (6 / 7), margin, CheckKind.LITTLE_O),
            ),
        ),
        CaseReport(
            "e",
            (
                *_dense_checks(m, n, first, eps, margin),
                InequalityCheck(
                    "l_2 + ... + l_k <= n^(-1+eps)", rest, n ** (-1 + eps), CheckKind.BIG_O
                ),
            ),
        ),
        CaseReport(
            "f",
            (
                InequalityCheck("1 <= k", 1, k, CheckKind.EXACT),
                InequalityCheck("k <= m - 1", k, m - 1, CheckKind.EXACT),
                InequalityCheck("k(m-1)/n <= margin", k * (m - 1) / n, margin, CheckKind.LITTLE_O),
            ),
            note=BOUNDED_M_NOTE,
        ),
    )

    parameters = {
        "m": m,
        "n": n,
        "lambda": str(lam_exact),
        "lambdas": [str(x) for x in densities],
        "eps": eps,
        "c": c,
        "K": K,
        "margin": margin,
    }
    return RegimeReport(parameters, general, two_factor, many_factor)
