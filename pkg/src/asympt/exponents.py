"""
Exponents for edge-disjoint semiregular graphs.

The exponents are polynomials in the densities, so they are evaluated in
Fraction arithmetic and only converted to float at the end.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from itertools import accumulate, combinations
from typing import Sequence

from ..numeric import LogValue, to_fraction, to_mpf
from .formulas import ln_factor_product

FractionLike = Fraction | int | str


class ExponentVariant(StrEnum):
    SILVER = "silver"
    MW = "mw"


def _silver(m: int, n: int, lam_d: Fraction, lam_h: Fraction) -> Fraction:
    return -Fraction(1, 2) * (lam_h * m - 1) * (lam_h * n - 1) - lam_h * lam_d * m * n


def _mw(m: int, n: int, lam_d: Fraction, lam_h: Fraction) -> Fraction:
    return _silver(m, n, lam_d, lam_h) - lam_h**3 * m * n / 6


def silver_exponent(m: int, n: int, lam_d: FractionLike, lam_h: FractionLike) -> float:
    """A(lam_d, lam_h) = -(lam_h m - 1)(lam_h n - 1)/2 - lam_h lam_d mn."""
    return float(_silver(m, n, to_fraction(lam_d), to_fraction(lam_h)))


def mw_exponent(m: int, n: int, lam_d: FractionLike, lam_h: FractionLike) -> float:
    """The silver exponent with the extra -lam_h^3 mn / 6 term."""
    return float(_mw(m, n, to_fraction(lam_d), to_fraction(lam_h)))


@dataclass(frozen=True)
class AggregateExponent:
    variant: ExponentVariant
    telescoped: float
    closed_form: float

    @property
    def relative_difference(self) -> float:
        scale = max(abs(self.closed_form), 1.0)
        return abs(self.telescoped - self.closed_form) / scale


def aggregate_exponent(
    m: int,
    n: int,
    lams: Sequence[FractionLike],
    variant: ExponentVariant | str = ExponentVariant.SILVER,
) -> AggregateExponent:
    """
    Sum of the single-factor exponents as factors are added one by one, each
    new factor avoiding the union of the previous ones, next to the closed
    form -k/2 + lam(m+n)/2 - lam^2 mn/2 (minus mn sum lam_i^3 / 6 for mw).
    """
    variant = ExponentVariant(variant)
    lams = [to_fraction(lam) for lam in lams]
    step = _silver if variant == ExponentVariant.SILVER else _mw
    covered = [Fraction(0), *accumulate(lams)]
    telescoped = sum((step(m, n, covered[i], lam) for i, lam in enumerate(lams)), Fraction(0))

    k = len(lams)
    total = covered[-1]
    closed = Fraction(-k, 2) + total * (m + n) / 2 - total**2 * m * n / 2
    if variant == ExponentVariant.MW:
        closed -= m * n * sum((lam**3 for lam in lams), Fraction(0)) / 6
    return AggregateExponent(variant, float(telescoped), float(closed))


def disjoint_probability_estimate(m: int, n: int, lams: Sequence[FractionLike]) -> LogValue:
    """
    ln P = -mn sum_{i<j} lam_i lam_j for randomly labelled factors to be edge-disjoint.

    Args:
        m: Size of V1
        n: Size of V2
        lams: Density of each factor

    Returns:
        The estimated probability as a LogValue
    """
    lams = [to_fraction(lam) for lam in lams]
    pairs = sum((a * b for a, b in combinations(lams, 2)), Fraction(0))
    return LogValue.from_ln(-m * n * pairs)


def silver_prediction(m: int, n: int, lam_d: FractionLike, lam_h: FractionLike) -> LogValue:
    """
    Predicted number of (m, n, lam_h)-semiregular graphs edge-disjoint from a
    fixed (m, n, lam_d)-semiregular D.
    """
    lam_d, lam_h = to_fraction(lam_d), to_fraction(lam_h)
    return LogValue.from_ln(ln_factor_product(m, n, lam_h) + to_mpf(_silver(m, n, lam_d, lam_h)))


def mw_prediction(m: int, n: int, lam_d: FractionLike, lam_h: FractionLike) -> LogValue:
    lam_d, lam_h = to_fraction(lam_d), to_fraction(lam_h)
    return LogValue.from_ln(ln_factor_product(m, n, lam_h) + to_mpf(_mw(m, n, lam_d, lam_h)))
