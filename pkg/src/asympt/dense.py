"""
Two dense factors: the overlap probability and the Stirling bookkeeping that
turns the multinomial ratio into a closed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from ..errors import ValidationError, ValidationErrorType
from ..numeric import LogValue, integral, ln_factorial, to_fraction, to_mpf

FractionLike = Fraction | int | str


def _check_densities(lam1: Fraction, lamhat: Fraction) -> None:
    if not 0 < lam1 < 1:
        raise ValidationError.from_type(ValidationErrorType.DEGENERATE_DENSITY, f"lambda_1={lam1}")
    if lamhat < 0 or lam1 + lamhat > 1:
        raise ValidationError.from_type(
            ValidationErrorType.INVALID_DENSITY, f"lambda_1={lam1}, lambda_hat={lamhat}"
        )


def _overlap_ln(m: int, n: int, lam1: Fraction, lamhat: Fraction) -> mpf:
    edges = lamhat * m * n
    if edges == 0:
        return mpf(0)
    return to_mpf(edges) * mp.log(1 - to_mpf(lam1)) - to_mpf(
        lam1 * lamhat * (edges - m - n) / (2 * (1 - lam1))
    )


def dense_overlap_P(m: int, n: int, lam1: FractionLike, lamhat: FractionLike) -> LogValue:
    """
    Probability that a random (m, n, lamhat)-semiregular graph avoids a fixed
    (m, n, lam1)-semiregular one:
    ln P = lamhat mn ln(1 - lam1) - lam1 lamhat (lamhat mn - m - n) / (2(1 - lam1)).
    """
    lam1, lamhat = to_fraction(lam1), to_fraction(lamhat)
    _check_densities(lam1, lamhat)
    return LogValue.from_ln(_overlap_ln(m, n, lam1, lamhat))


def _g(N: int) -> mpf:
    return ln_factorial(N) - mp.log(mp.sqrt(2 * mp.pi)) - (N + mpf(1) / 2) * mp.log(N) + N


def stirling_correction(N: int) -> float:
    """g(N) with N! = sqrt(2 pi) N^(N+1/2) e^(-N + g(N))."""
    if N < 1:
        raise ValidationError.from_type(ValidationErrorType.INVALID_ARGUMENT, f"N={N}")
    return float(_g(N))


def _gbar(N: int, lamhat: Fraction, lam1: Fraction) -> mpf:
    if lamhat == 0:
        return mpf(0)
    arguments = []
    for share in (1 - lamhat - lam1, 1 - lamhat, 1 - lam1):
        size = integral(share * N)
        if size is None:
            raise ValidationError.from_type(
                ValidationErrorType.NON_INTEGRAL, f"{share}*{N} is not an integer"
            )
        if size < 1:
            raise ValidationError.from_type(
                ValidationErrorType.INVALID_ARGUMENT, f"g needs N >= 1, got {share}*{N}"
            )
        arguments.append(size)
    both, without_hat, without_one = arguments
    return _g(N) + _g(both) - _g(without_hat) - _g(without_one)


def gbar(N: int, lamhat: FractionLike, lam1: FractionLike) -> float:
    """g(N) + g((1-lamhat-lam1)N) - g((1-lamhat)N) - g((1-lam1)N)."""
    if N < 1:
        raise ValidationError.from_type(ValidationErrorType.INVALID_ARGUMENT, f"N={N}")
    return float(_gbar(N, to_fraction(lamhat), to_fraction(lam1)))


@dataclass(frozen=True)
class RanxReport:
    """
    Both forms of ln[R'(lam0, lam1, lamhat) / (R'(1-lam1, lam1) R'(1-lamhat, lamhat) P)]
    once the overlap probability is split off. Each should be close to 0.
    """

    pre_stirling: float
    final_display: float
    overlap: LogValue
    gbar_term: float

    def to_dict(self) -> dict:
        return {
            "pre_stirling": self.pre_stirling,
            "final_display": self.final_display,
            "overlap": self.overlap.to_json(),
            "gbar_term": self.gbar_term,
        }


def _ln_q(N: int, lam1: Fraction, lamhat: Fraction) -> mpf:
    """ln N!(N-a-b)!/((N-a)!(N-b)!) with a = lam1 N, b = lamhat N."""
    a, b = lam1 * N, lamhat * N
    return ln_factorial(N) + ln_factorial(N - a - b) - ln_factorial(N - a) - ln_factorial(N - b)


def ranx_ratio(m: int, n: int, lam1: FractionLike, lamhat: FractionLike) -> RanxReport:
    lam1, lamhat = to_fraction(lam1), to_fraction(lamhat)
    _check_densities(lam1, lamhat)
    if lam1 + lamhat == 1:
        raise ValidationError.from_type(
            ValidationErrorType.DEGENERATE_DENSITY, "the complement factor must be nonempty"
        )
    for lam in (lam1, lamhat):
        if integral(lam * m) is None or integral(lam * n) is None:
            raise ValidationError.from_type(
                ValidationErrorType.NON_INTEGRAL, f"lambda={lam} with m={m}, n={n}"
            )

    overlap = _overlap_ln(m, n, lam1, lamhat)
    pre_stirling = (
        overlap
        + n * _ln_q(m, lam1, lamhat)
        + m * _ln_q(n, lam1, lamhat)
        - _ln_q(m * n, lam1, lamhat)
    )

    gbar_term = n * _gbar(m, lamhat, lam1) + m * _gbar(n, lamhat, lam1) - _gbar(m * n, lamhat, lam1)
    half_boundary = to_mpf(Fraction(m + n - 1, 2))
    final_display = (
        -(to_mpf((1 - lamhat) * m * n) + half_boundary) * mp.log(1 - to_mpf(lamhat))
        + (to_mpf((1 - lamhat - lam1) * m * n) + half_boundary)
        * mp.log(1 - to_mpf(lamhat / (1 - lam1)))
        - to_mpf(lam1 * lamhat * (lamhat * m * n - m - n) / (2 * (1 - lam1)))
        + gbar_term
    )
    return RanxReport(
        pre_stirling=float(pre_stirling),
        final_display=float(final_display),
        overlap=LogValue.from_ln(overlap),
        gbar_term=float(gbar_term),
    )
