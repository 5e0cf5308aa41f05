"""
Exact and log-space arithmetic shared by the counting and asymptotic modules.

Exact values are plain Python ``int`` (arbitrary precision) and
``fractions.Fraction`` (always in lowest terms). Asymptotic values are carried
as :class:`LogValue`, a sign plus an mpmath natural logarithm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Iterator, Sequence

from mpmath import mp, mpf

# 40 significant digits is far beyond the 1e-12 relative budget per operation.
mp.dps = 40

BigCount = int
Rational = Fraction
Number = int | Fraction | float | mpf

ZERO_NOTE = "value is exactly zero; ln is null"


def to_mpf(value: Number) -> mpf:
    """Convert an exact or float value to mpf without losing a Fraction's precision."""
    if isinstance(value, Fraction):
        return mpf(value.numerator) / mpf(value.denominator)
    return mpf(value)


def to_fraction(value: int | Fraction | str | float) -> Fraction:
    """Exact rational from an int, Fraction, 'p/q' string or float."""
    return value if isinstance(value, Fraction) else Fraction(value)


def integral(value: Fraction | int) -> int | None:
    """The value as an int when it is a whole number, else None."""
    value = Fraction(value)
    return value.numerator if value.denominator == 1 else None


def ln_factorial(n: int | Fraction) -> mpf:
    """ln(n!) via log-gamma."""
    return mp.loggamma(to_mpf(n) + 1)


def ln_multinomial(parts: Iterable[int | Fraction]) -> mpf:
    """ln of the multinomial coefficient (sum parts; parts)."""
    parts = list(parts)
    total = sum(parts)
    return ln_factorial(total) - mp.fsum(ln_factorial(p) for p in parts)


def ln_binomial(n: int, r: int) -> mpf:
    return ln_factorial(n) - ln_factorial(r) - ln_factorial(n - r)


def ln_falling(n: int, x: int) -> mpf:
    """ln((N)_x) = ln(N!/(N-x)!)."""
    return ln_factorial(n) - ln_factorial(n - x)


def multinomial(parts: Sequence[int]) -> int:
    """Exact multinomial coefficient as a product of binomials."""
    result = 1
    running = 0
    for part in parts:
        running += part
        result *= math.comb(running, part)
    return result


def multiset_permutations(counts: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """
    Yield every distinct arrangement of a multiset.

    ``counts[c]`` copies of symbol ``c``. Arrangements come out in
    lexicographic order.
    """
    remaining = list(counts)
    length = sum(remaining)
    current: list[int] = []

    def extend() -> Iterator[tuple[int, ...]]:
        if len(current) == length:
            yield tuple(current)
            return
        for symbol, left in enumerate(remaining):
            if left == 0:
                continue
            remaining[symbol] -= 1
            current.append(symbol)
            yield from extend()
            current.pop()
            remaining[symbol] += 1

    yield from extend()


@dataclass(frozen=True)
class LogValue:
    """
    A signed real number stored as (sign, ln|x|).

    ``sign`` is -1, 0 or +1. When ``sign`` is 0 the value is zero and ``ln``
    is ignored (it is normalised to 0 so equal values compare equal).
    """

    sign: int
    ln: mpf

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or 1, got {self.sign}")
        object.__setattr__(self, "ln", mpf(0) if self.sign == 0 else mpf(self.ln))

    @classmethod
    def zero(cls) -> "LogValue":
        return cls(0, mpf(0))

    @classmethod
    def one(cls) -> "LogValue":
        return cls(1, mpf(0))

    @classmethod
    def from_ln(cls, ln: Number, sign: int = 1) -> "LogValue":
        return cls(sign, to_mpf(ln))

    @classmethod
    def from_number(cls, value: Number) -> "LogValue":
        """Exact conversion for int and Fraction, mpf precision otherwise."""
        if value == 0:
            return cls.zero()
        sign = 1 if value > 0 else -1
        if isinstance(value, int):
            return cls(sign, mp.log(mpf(abs(value))))
        if isinstance(value, Fraction):
            magnitude = abs(value)
            return cls(sign, mp.log(mpf(magnitude.numerator)) - mp.log(mpf(magnitude.denominator)))
        return cls(sign, mp.log(abs(to_mpf(value))))

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def __mul__(self, other: "LogValue") -> "LogValue":
        if self.is_zero or other.is_zero:
            return LogValue.zero()
        return LogValue(self.sign * other.sign, self.ln + other.ln)

    def __truediv__(self, other: "LogValue") -> "LogValue":
        if other.is_zero:
            raise ZeroDivisionError("LogValue division by zero")
        if self.is_zero:
            return LogValue.zero()
        return LogValue(self.sign * other.sign, self.ln - other.ln)

    def __neg__(self) -> "LogValue":
        return LogValue(-self.sign, self.ln)

    def __add__(self, other: "LogValue") -> "LogValue":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        big, small = (self, other) if self.ln >= other.ln else (other, self)
        gap = small.ln - big.ln
        if big.sign == small.sign:
            return LogValue(big.sign, big.ln + mp.log1p(mp.exp(gap)))
        if gap == 0:
            return LogValue.zero()
        return LogValue(big.sign, big.ln + mp.log1p(-mp.exp(gap)))

    def __sub__(self, other: "LogValue") -> "LogValue":
        return self + (-other)

    def __pow__(self, exponent: Number) -> "LogValue":
        if exponent == 0:
            return LogValue.one()
        if self.is_zero:
            if exponent < 0:
                raise ZeroDivisionError("zero LogValue raised to a negative power")
            return LogValue.zero()
        if self.sign < 0:
            if not isinstance(exponent, int):
                raise ValueError("negative LogValue raised to a non-integer power")
            return LogValue(-1 if exponent % 2 else 1, self.ln * exponent)
        return LogValue(1, self.ln * to_mpf(exponent))

    def value(self) -> mpf:
        """The represented real as an mpf (may be astronomically large)."""
        if self.is_zero:
            return mpf(0)
        return self.sign * mp.exp(self.ln)

    def ln_float(self) -> float | None:
        """ln|x| as a float, None for zero."""
        return None if self.is_zero else float(self.ln)

    def decimal_approx(self, digits: int = 12) -> str:
        return mp.nstr(self.value(), digits)

    def to_json(self) -> dict[str, Any]:
        payload: dict[str, Any] = {
            "ln": self.ln_float(),
            "sign": self.sign,
            "decimal_approx": self.decimal_approx(),
        }
        if self.is_zero:
            payload["note"] = ZERO_NOTE
        return payload

    def __float__(self) -> float:
        return float(self.value())
