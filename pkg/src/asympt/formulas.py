"""
Closed-form estimates for the number of factorisations.

All values are natural logarithms carried as LogValue. Factorials go through
mpmath's log-gamma.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from typing import Sequence

from mpmath import mp, mpf

from ..core import FactorisationSpec, make_spec
from ..errors import ValidationError, ValidationErrorType
from ..numeric import (
    LogValue,
    integral,
    ln_factorial,
    ln_falling,
    ln_multinomial,
    multinomial,
    to_fraction,
    to_mpf,
)


class RapproxVariant(StrEnum):
    DELTA1 = "delta1"
    DELTA2 = "delta2"


def _finite_m_factor(exponent: Fraction, m: int) -> mpf:
    """exponent * ln(1 - 1/m), taken as 0 when the exponent vanishes."""
    if exponent == 0:
        return mpf(0)
    return to_mpf(exponent) * mp.log(1 - mpf(1) / m)


def rprime(spec: FactorisationSpec) -> LogValue:
    """
    ln R'(m, n; lambda_0..lambda_k): the multinomial ratio
    mult(n; s)^m mult(m; t)^n / mult(mn; lambda*mn) times (1-1/m)^(k(m-1)/2).

    Args:
        spec: Validated degree specification

    Returns:
        The estimate as a LogValue; never overflows
    """
    m, n = spec.m, spec.n
    ln = (
        m * ln_multinomial(spec.s)
        + n * ln_multinomial(spec.t)
        - ln_multinomial(spec.edge_counts)
        + _finite_m_factor(Fraction(spec.k * (m - 1), 2), m)
    )
    return LogValue.from_ln(ln)


@dataclass(frozen=True)
class ExactRPrime:
    """R' = ratio * base**exponent with every part exact."""

    ratio: Fraction
    base: Fraction
    exponent: Fraction

    def ln(self) -> mpf:
        value = LogValue.from_number(self.ratio).ln
        if self.exponent:
            value += to_mpf(self.exponent) * LogValue.from_number(self.base).ln
        return value


def rprime_exact(spec: FactorisationSpec) -> ExactRPrime:
    m, n = spec.m, spec.n
    ratio = Fraction(
        multinomial(spec.s) ** m * multinomial(spec.t) ** n, multinomial(spec.edge_counts)
    )
    return ExactRPrime(ratio, Fraction(m - 1, m), Fraction(spec.k * (m - 1), 2))


def two_factor_formula(m: int, n: int, s: int) -> LogValue:
    """The two-factor (k = 1) estimate for a factor of V1-degree s."""
    return rprime(make_spec(m, n, [n - s, s]))


def _delta1(m: int, n: int, lam: Fraction, k: int) -> Fraction:
    return (
        Fraction(-k, 2)
        + Fraction(k, 4 * m)
        - lam / 2
        + lam * (2 + lam) * (m + n) / 4
        - lam**2 * (3 + lam) * m * n / 6
        - lam * (Fraction(m, n) + Fraction(n, m)) / 12
    )


def _delta2(m: int, n: int, lam: Fraction, k: int) -> Fraction:
    return Fraction(-k, 2) + lam * (m + n) / 2 - lam**2 * m * n / 2


def delta1(m: int, n: int, lam: Fraction | int | str, k: int) -> float:
    return float(_delta1(m, n, to_fraction(lam), k))


def delta2(m: int, n: int, lam: Fraction | int | str, k: int) -> float:
    return float(_delta2(m, n, to_fraction(lam), k))


def ln_factor_product(m: int, n: int, lam: Fraction) -> mpf:
    """ln (lam*mn)! / ((lam*m)!^n (lam*n)!^m), the count of ordered degree sequences."""
    edges, v2_degree, v1_degree = (integral(lam * x) for x in (m * n, m, n))
    if edges is None or v2_degree is None or v1_degree is None:
        raise ValidationError.from_type(
            ValidationErrorType.NON_INTEGRAL, f"lambda={lam} with m={m}, n={n}"
        )
    return ln_factorial(edges) - n * ln_factorial(v2_degree) - m * ln_factorial(v1_degree)


def rapprox(
    m: int, n: int, s: Sequence[int], variant: RapproxVariant | str = RapproxVariant.DELTA1
) -> LogValue:
    """
    The small-density approximation to R': the factorial product over the
    non-complement factors times exp(Delta_1) or exp(Delta_2).

    Args:
        m: Size of V1
        n: Size of V2
        s: Degrees s_0..s_k, every factor and the complement nonempty
        variant: Which correction, delta1 (default) or delta2

    Returns:
        The approximation as a LogValue
    """
    spec = make_spec(m, n, s, strict=True)
    if spec.s[0] == 0:
        raise ValidationError.from_type(
            ValidationErrorType.DEGENERATE_DENSITY, "the complement factor must be nonempty"
        )
    lam = sum(spec.densities[1:], Fraction(0))
    product = mp.fsum(ln_factor_product(m, n, density) for density in spec.densities[1:])
    delta = _delta1 if RapproxVariant(variant) == RapproxVariant.DELTA1 else _delta2
    return LogValue.from_ln(product + to_mpf(delta(m, n, lam, spec.k)))


@dataclass(frozen=True)
class FallingFactorialReport:
    exact: LogValue
    expansion: LogValue

    @property
    def difference(self) -> float:
        return float(self.expansion.ln - self.exact.ln)


def falling_factorial_expansion(N: int, lam: Fraction | int | str) -> FallingFactorialReport:
    """ln (N)_{lam N} exactly and by its three-term expansion in lam."""
    lam = to_fraction(lam)
    x = integral(lam * N)
    if x is None:
        raise ValidationError.from_type(ValidationErrorType.NON_INTEGRAL, f"lambda*N = {lam * N}")
    if N < 1 or not 0 <= x <= N:
        raise ValidationError.from_type(ValidationErrorType.INVALID_DENSITY, f"lambda={lam}, N={N}")

    lam_mp = to_mpf(lam)
    expansion = (
        x * mp.log(N)
        - lam_mp**2 * (3 + lam_mp) * N / 6
        + lam_mp * (2 + lam_mp) / 4
        - lam_mp / (12 * N)
    )
    return FallingFactorialReport(
        exact=LogValue.from_ln(ln_falling(N, x)),
        expansion=LogValue.from_ln(expansion),
    )


def latin_asymptotic(n: int, k: int) -> LogValue:
    """ln of (n!)^k (n!/((n-k)! n^k))^n (1-k/n)^(-n/2) e^(-k/2)."""
    if not 1 <= k < n:
        raise ValidationError.from_type(ValidationErrorType.K_OUT_OF_RANGE, f"k={k}, n={n}")
    ln_n_fact = ln_factorial(n)
    ln = (
        k * ln_n_fact
        + n * (ln_n_fact - ln_factorial(n - k) - k * mp.log(n))
        - mpf(n) / 2 * mp.log(1 - mpf(k) / n)
        - mpf(k) / 2
    )
    return LogValue.from_ln(ln)


def ransplit_prediction(m: int, n: int, sub_degrees: Sequence[int]) -> LogValue:
    """
    Predicted average number of splittings of an (m, n, lambda)-semiregular
    graph into factors of degrees ``sub_degrees`` (lambda = sum / n).
    """
    sub_degrees = list(sub_degrees)
    if not sub_degrees:
        raise ValidationError.from_type(ValidationErrorType.EMPTY_DEGREES)
    total = sum(sub_degrees)
    spec = make_spec(m, n, [n - total, *sub_degrees])
    sub_t = spec.t[1:]
    k = len(sub_degrees)
    ln = (
        m * ln_multinomial(sub_degrees)
        + n * ln_multinomial(sub_t)
        - ln_multinomial([si * m for si in sub_degrees])
        + _finite_m_factor(Fraction((k - 1) * (m - 1), 2), m)
    )
    return LogValue.from_ln(ln)
