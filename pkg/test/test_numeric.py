"""
Tests for exact combinatorics helpers and LogValue arithmetic.
"""

import math
from fractions import Fraction

import pytest
from mpmath import mpf

from src.numeric import (
    ZERO_NOTE,
    LogValue,
    integral,
    ln_binomial,
    ln_factorial,
    ln_falling,
    ln_multinomial,
    multinomial,
    multiset_permutations,
    to_fraction,
    to_mpf,
)


class TestExactHelpers:
    """Test exact integer and rational helpers."""

    def test_multinomial(self):
        assert multinomial([2, 1, 1]) == 12
        assert multinomial([3]) == 1
        assert multinomial([0, 0]) == 1
        assert multinomial([5, 5]) == 252

    def test_multiset_permutations(self):
        assert list(multiset_permutations([1, 2])) == [(0, 1, 1), (1, 0, 1), (1, 1, 0)]
        assert len(list(multiset_permutations([2, 1, 1]))) == 12

    def test_to_fraction(self):
        assert to_fraction("1/3") == Fraction(1, 3)
        assert to_fraction(2) == Fraction(2)
        third = Fraction(1, 3)
        assert to_fraction(third) is third

    def test_integral(self):
        assert integral(Fraction(6, 3)) == 2
        assert integral(Fraction(1, 2)) is None
        assert integral(5) == 5

    def test_to_mpf_keeps_fraction_precision(self):
        assert abs(to_mpf(Fraction(1, 3)) * 3 - 1) < mpf(10) ** -35


class TestLogSpace:
    """Test log-gamma based helpers against exact integers."""

    @pytest.mark.parametrize("n", [0, 1, 5, 20, 100])
    def test_ln_factorial(self, n):
        assert float(ln_factorial(n)) == pytest.approx(math.lgamma(n + 1), rel=1e-12, abs=1e-12)

    def test_ln_multinomial(self):
        assert float(ln_multinomial([2, 1, 1])) == pytest.approx(math.log(12), rel=1e-12)

    def test_ln_binomial(self):
        assert float(ln_binomial(10, 3)) == pytest.approx(math.log(120), rel=1e-12)

    def test_ln_falling(self):
        expected = math.log(math.perm(100, 10))
        assert float(ln_falling(100, 10)) == pytest.approx(expected, rel=1e-12)
        assert float(ln_falling(100, 10)) == pytest.approx(45.5867, abs=1e-4)


class TestLogValue:
    """Test signed log-space numbers."""

    def test_from_number_and_value(self):
        assert float(LogValue.from_number(12).value()) == pytest.approx(12)
        assert float(LogValue.from_number(Fraction(-3, 4))) == pytest.approx(-0.75)
        assert LogValue.from_number(0).is_zero

    def test_multiplication_and_division(self):
        six = LogValue.from_number(6)
        two = LogValue.from_number(2)
        assert float(six * two) == pytest.approx(12)
        assert float(six / two) == pytest.approx(3)
        assert (six * LogValue.zero()).is_zero

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            LogValue.one() / LogValue.zero()

    def test_addition_and_cancellation(self):
        two, three = LogValue.from_number(2), LogValue.from_number(3)
        assert float(two + three) == pytest.approx(5)
        assert float(two - three) == pytest.approx(-1)
        assert (three - three).is_zero

    def test_power(self):
        assert float(LogValue.from_number(4) ** Fraction(1, 2)) == pytest.approx(2)
        assert float(LogValue.from_number(-2) ** 3) == pytest.approx(-8)
        with pytest.raises(ValueError):
            LogValue.from_number(-2) ** Fraction(1, 2)

    @pytest.mark.parametrize("base", [0, 5, -3])
    def test_zeroth_power_is_one(self, base):
        result = LogValue.from_number(base) ** 0
        assert result.sign == 1
        assert float(result) == 1.0

    def test_zero_base(self):
        assert (LogValue.zero() ** 3).is_zero
        assert (LogValue.zero() ** Fraction(1, 2)).is_zero
        with pytest.raises(ZeroDivisionError):
            LogValue.zero() ** -1

    def test_huge_values_stay_finite(self):
        big = LogValue.from_ln(10**6)
        assert (big / big).ln == 0
        assert big.ln_float() == 10**6

    def test_to_json(self):
        payload = LogValue.from_number(2).to_json()
        assert payload["sign"] == 1
        assert payload["ln"] == pytest.approx(math.log(2))
        assert payload["decimal_approx"] == "2.0"
        zero = LogValue.zero().to_json()
        assert zero["ln"] is None
        assert zero["sign"] == 0
        assert zero["decimal_approx"] == "0.0"
        assert zero["note"] == ZERO_NOTE
        assert "note" not in payload

    def test_invalid_sign(self):
        with pytest.raises(ValueError):
            LogValue(2, mpf(0))
