"""
Bounds on sums whose consecutive term ratios are nearly those of an
exponential series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from ..errors import ValidationError, ValidationErrorType


@dataclass(frozen=True)
class SummationBounds:
    sigma1: float
    sigma2: float
    total: float
    terms: tuple[float, ...]

    @property
    def bracket_holds(self) -> bool:
        return self.sigma1 <= self.total <= self.sigma2

    def to_dict(self) -> dict:
        return {
            "sigma1": self.sigma1,
            "sigma2": self.sigma2,
            "sum": self.total,
            "terms": list(self.terms),
            "bracket_holds": self.bracket_holds,
        }


def _violated(inequality: str, **details) -> ValidationError:
    return ValidationError.from_type(
        ValidationErrorType.HYPOTHESIS_VIOLATED, inequality, inequality=inequality, **details
    )


def summation_bounds(
    A: Sequence[float], B: Sequence[float], Z: int, chat: float
) -> SummationBounds:
    """
    n_0 = 1 and n_i / n_(i-1) = A(i)(1 - (i-1)B(i)) / i for 1 <= i <= Z, where
    ``A[i-1]`` holds A(i). A zero ratio zeroes every later term.

    Returns sum n_i together with
    sigma1 = exp(A1 - A1 C2 / 2) - (2 e chat)^Z and
    sigma2 = exp(A2 - A2 C1 / 2 + A2 C1^2 / 2) + (2 e chat)^Z,
    with A1, A2 the extremes of A and C1, C2 those of A(i)B(i).
    """
    if Z < 2:
        raise _violated("Z >= 2", Z=Z)
    if len(A) != Z or len(B) != Z:
        raise ValidationError.from_type(
            ValidationErrorType.LENGTH_MISMATCH, f"need {Z} values of A and B, got {len(A)} and {len(B)}"
        )
    if not 0 < chat < 1 / 3:
        raise _violated("0 < chat < 1/3", chat=chat)
    for i, (a, b) in enumerate(zip(A, B), start=1):
        if a < 0:
            raise _violated(f"A({i}) >= 0", value=a)
        if 1 - (i - 1) * b < 0:
            raise _violated(f"1 - ({i}-1)B({i}) >= 0", value=1 - (i - 1) * b)

    a1, a2 = min(A), max(A)
    products = [a * b for a, b in zip(A, B)]
    c1, c2 = min(products), max(products)
    if a2 / Z > chat:
        raise _violated("A2/Z <= chat", lhs=a2 / Z, rhs=chat)
    if max(abs(c1), abs(c2)) > chat:
        raise _violated("|C| <= chat", lhs=max(abs(c1), abs(c2)), rhs=chat)

    terms = [1.0]
    for i, (a, b) in enumerate(zip(A, B), start=1):
        terms.append(terms[-1] * a * (1 - (i - 1) * b) / i)

    tail = (2 * math.e * chat) ** Z
    return SummationBounds(
        sigma1=math.exp(a1 - a1 * c2 / 2) - tail,
        sigma2=math.exp(a2 - a2 * c1 / 2 + a2 * c1**2 / 2) + tail,
        total=math.fsum(terms),
        terms=tuple(terms),
    )
