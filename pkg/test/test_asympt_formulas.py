"""
Tests for the closed-form estimates: R', its small-density approximations,
the falling factorial expansion and the Latin rectangle formula.
"""

import math
from fractions import Fraction

import pytest
from mpmath import mp

from src.asympt import (
    delta1,
    delta2,
    falling_factorial_expansion,
    latin_asymptotic,
    ransplit_prediction,
    rapprox,
    rprime,
    rprime_exact,
    two_factor_formula,
)
from src.core import make_spec
from src.errors import ValidationError, ValidationErrorType
from src.exact import count_latin_rectangles


def ratio_to(exact: int, estimate) -> float:
    """exact / estimate for a LogValue estimate."""
    return float(mp.exp(mp.log(exact) - estimate.ln))


class TestRPrime:
    """Test the conjectured closed form R'."""

    def test_smallest_case(self):
        assert float(rprime(make_spec(2, 2, [1, 1]))) == pytest.approx(1.885618, rel=1e-6)

    def test_exact_parts(self):
        exact = rprime_exact(make_spec(2, 2, [1, 1]))
        assert exact.ratio == Fraction(8, 3)
        assert exact.base == Fraction(1, 2)
        assert exact.exponent == Fraction(1, 2)

    @pytest.mark.parametrize(
        "m, n, s", [(4, 4, [2, 1, 1]), (6, 3, [1, 1, 1]), (10, 10, [9, 1]), (8, 12, [6, 3, 3])]
    )
    def test_log_gamma_path_matches_exact(self, m, n, s):
        spec = make_spec(m, n, s)
        assert abs(rprime_exact(spec).ln() - rprime(spec).ln) < 1e-12

    def test_single_matching_ratio(self):
        ratio = ratio_to(math.factorial(10), rprime(make_spec(10, 10, [9, 1])))
        assert ratio == pytest.approx(1.0091, abs=1e-3)
        assert abs(ratio - 1) <= 0.021

    def test_single_matching_converges(self):
        gaps = {
            n: abs(ratio_to(math.factorial(n), rprime(make_spec(n, n, [n - 1, 1]))) - 1)
            for n in (6, 12)
        }
        assert gaps[12] < gaps[6]

    def test_two_factor_formula_is_rprime_with_complement(self):
        assert two_factor_formula(6, 9, 3).ln == rprime(make_spec(6, 9, [6, 3])).ln


class TestSmallDensity:
    """Test the Delta corrections and rapprox."""

    def test_delta2_vanishes(self):
        assert delta2(10, 10, "1/10", 1) == 0.0

    def test_delta1(self):
        assert delta1(10, 10, "1/10", 1) == pytest.approx(-1 / 120, abs=1e-12)

    def test_variants_differ_by_deltas(self):
        first = rapprox(20, 20, [18, 1, 1], "delta1")
        second = rapprox(20, 20, [18, 1, 1], "delta2")
        expected = delta1(20, 20, Fraction(1, 10), 2) - delta2(20, 20, Fraction(1, 10), 2)
        assert float(first.ln - second.ln) == pytest.approx(expected, abs=1e-12)

    def test_single_matching_factor_product(self):
        value = rapprox(10, 10, [9, 1], "delta2")
        expected = math.lgamma(11) + delta2(10, 10, Fraction(1, 10), 1)
        assert float(value.ln) == pytest.approx(expected, abs=1e-12)

    def test_empty_factor_rejected(self):
        with pytest.raises(ValidationError) as info:
            rapprox(4, 4, [4, 0])
        assert info.value.error_type == ValidationErrorType.NOT_STRICT

    def test_empty_complement_rejected(self):
        with pytest.raises(ValidationError) as info:
            rapprox(2, 2, [0, 2])
        assert info.value.error_type == ValidationErrorType.DEGENERATE_DENSITY


class TestFallingFactorial:
    """Test (N)_x and its expansion."""

    def test_values(self):
        report = falling_factorial_expansion(100, Fraction(1, 10))
        assert float(report.exact.ln) == pytest.approx(math.log(math.perm(100, 10)), rel=1e-12)
        assert abs(report.difference) < 5e-3

    def test_zero_length(self):
        report = falling_factorial_expansion(10, 0)
        assert float(report.exact.ln) == 0.0
        assert float(report.expansion.ln) == 0.0

    def test_non_integral(self):
        with pytest.raises(ValidationError) as info:
            falling_factorial_expansion(10, "1/3")
        assert info.value.error_type == ValidationErrorType.NON_INTEGRAL

    def test_out_of_range(self):
        with pytest.raises(ValidationError) as info:
            falling_factorial_expansion(10, 2)
        assert info.value.error_type == ValidationErrorType.INVALID_DENSITY


class TestLatinAsymptotic:
    """Test the Latin rectangle estimate."""

    def test_single_row(self):
        ratio = 1 / ratio_to(math.factorial(8), latin_asymptotic(8, 1))
        assert ratio == pytest.approx((7 / 8) ** -4 * math.exp(-0.5), rel=1e-9)

    def test_single_row_converges(self):
        gap8 = abs(ratio_to(math.factorial(8), latin_asymptotic(8, 1)) - 1)
        gap16 = abs(ratio_to(math.factorial(16), latin_asymptotic(16, 1)) - 1)
        assert gap16 < gap8 < 0.05

    def test_two_rows_close(self):
        ratio = ratio_to(count_latin_rectangles(8, 2), latin_asymptotic(8, 2))
        assert 0.85 < ratio < 1.15

    @pytest.mark.parametrize("n, k", [(3, 0), (3, 3), (3, 4)])
    def test_k_out_of_range(self, n, k):
        with pytest.raises(ValidationError) as info:
            latin_asymptotic(n, k)
        assert info.value.error_type == ValidationErrorType.K_OUT_OF_RANGE


class TestRansplit:
    """Test the average splitting prediction."""

    @pytest.mark.parametrize("m, n, sub", [(4, 4, [1, 1]), (12, 6, [1, 2, 1]), (20, 20, [3, 4])])
    def test_identity_with_rprime(self, m, n, sub):
        total = sum(sub)
        split = rprime(make_spec(m, n, [n - total, *sub]))
        whole = rprime(make_spec(m, n, [n - total, total]))
        assert abs(ransplit_prediction(m, n, sub).ln - (split.ln - whole.ln)) < 1e-9

    def test_single_factor_is_one(self):
        assert abs(ransplit_prediction(6, 6, [2]).ln) < 1e-30

    def test_empty(self):
        with pytest.raises(ValidationError) as info:
            ransplit_prediction(4, 4, [])
        assert info.value.error_type == ValidationErrorType.EMPTY_DEGREES
