"""
Local central limit estimate for a fixed number m of V1 vertices.

Colour the m edges at each V2 vertex uniformly among arrangements with t_c
edges of colour c and let X_{i,c} indicate that the edge to V1 vertex i got
colour c (i < m-1, c >= 1). The covariance of X is a Kronecker product
C (x) B, with coordinates ordered vertex-major: (0,1), (0,2), ..., (m-2,k).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from mpmath import mp

from ..core import make_spec
from ..errors import ValidationError, ValidationErrorType
from ..numeric import LogValue, ln_multinomial, to_mpf

TABLE_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class CLTModel:
    m: int
    densities: tuple[Fraction, ...]
    B: np.ndarray = field(repr=False)
    C: np.ndarray = field(repr=False)
    sigma: np.ndarray = field(repr=False)
    table_deviation: float = 0.0

    @property
    def k(self) -> int:
        return len(self.densities) - 1

    @property
    def dimension(self) -> int:
        return (self.m - 1) * self.k

    @property
    def matches_table(self) -> bool:
        return self.table_deviation <= TABLE_TOLERANCE


def covariance_table(m: int, densities: Sequence[Fraction]) -> np.ndarray:
    """Cov(X_{i,c}, X_{j,d}) written out case by case."""
    k = len(densities) - 1
    lam = [float(x) for x in densities]
    size = (m - 1) * k
    table = np.empty((size, size))
    for i in range(m - 1):
        for c in range(1, k + 1):
            row = i * k + c - 1
            for j in range(m - 1):
                for d in range(1, k + 1):
                    column = j * k + d - 1
                    if i == j and c == d:
                        value = lam[c] * (1 - lam[c])
                    elif i == j:
                        value = -lam[c] * lam[d]
                    elif c == d:
                        value = -lam[c] * (1 - lam[c]) / (m - 1)
                    else:
                        value = lam[c] * lam[d] / (m - 1)
                    table[row, column] = value
    return table


def clt_model(m: int, s: Sequence[int]) -> CLTModel:
    """
    Build B, C and Sigma for degrees ``s`` and check Sigma against the table.

    Args:
        m: Size of V1, at least 2
        s: Degrees s_0..s_k of one V2 vertex; n = sum(s) and every s_i > 0

    Returns:
        CLTModel holding B, C, their Kronecker product Sigma and the largest
        entrywise gap between Sigma and the case-by-case covariance table
    """
    s = list(s)
    if m < 2:
        raise ValidationError.from_type(ValidationErrorType.NON_POSITIVE_SIZE, f"m={m}, need m >= 2")
    if not s:
        raise ValidationError.from_type(ValidationErrorType.EMPTY_DEGREES)
    if any(si < 0 for si in s):
        raise ValidationError.from_type(ValidationErrorType.NEGATIVE_DEGREE, f"s={s}")
    n = sum(s)
    densities = tuple(Fraction(si, n) for si in s)
    if any(not 0 < lam < 1 for lam in densities):
        raise ValidationError.from_type(
            ValidationErrorType.DEGENERATE_DENSITY, "every density must lie strictly between 0 and 1"
        )
    k = len(s) - 1
    if k > m - 1:
        raise ValidationError.from_type(ValidationErrorType.K_OUT_OF_RANGE, f"k={k}, m={m}")

    lam = np.array([float(x) for x in densities[1:]])
    B = np.diag(lam) - np.outer(lam, lam)
    C = np.full((m - 1, m - 1), -1.0 / (m - 1))
    np.fill_diagonal(C, 1.0)
    sigma = np.kron(C, B)
    deviation = float(np.max(np.abs(sigma - covariance_table(m, densities))))
    return CLTModel(m, densities, B, C, sigma, deviation)


@dataclass(frozen=True)
class CLTDeterminant:
    closed_form: Fraction
    direct: float
    positive_definite: bool

    @property
    def relative_difference(self) -> float:
        closed = float(self.closed_form)
        return abs(self.direct - closed) / closed

    def to_dict(self) -> dict:
        return {
            "closed_form": str(self.closed_form),
            "closed_form_float": float(self.closed_form),
            "direct": self.direct,
            "relative_difference": self.relative_difference,
            "positive_definite": self.positive_definite,
        }


def closed_form_determinant(m: int, densities: Sequence[Fraction]) -> Fraction:
    """|Sigma| = m^-k (1 - 1/m)^(-k(m-1)) (prod lambda_i)^(m-1)."""
    k = len(densities) - 1
    product = math.prod(densities, start=Fraction(1))
    return Fraction(1, m**k) * Fraction(m, m - 1) ** (k * (m - 1)) * product ** (m - 1)


def clt_determinant(model: CLTModel) -> CLTDeterminant:
    """
    Args:
        model: Output of clt_model

    Returns:
        det(Sigma) by slogdet next to its closed form, and whether a Cholesky
        factorisation succeeds
    """
    sign, logdet = np.linalg.slogdet(model.sigma)
    direct = float(sign * np.exp(logdet))
    try:
        np.linalg.cholesky(model.sigma)
        positive_definite = True
    except np.linalg.LinAlgError:
        positive_definite = False
    return CLTDeterminant(
        closed_form=closed_form_determinant(model.m, model.densities),
        direct=direct,
        positive_definite=positive_definite,
    )


def clt_estimate(m: int, n: int, s: Sequence[int]) -> LogValue:
    """ln of mult(m; t)^n (2 pi n)^(-k(m-1)/2) |Sigma|^(-1/2)."""
    spec = make_spec(m, n, s)
    model = clt_model(m, spec.s)
    ln_det = LogValue.from_number(closed_form_determinant(m, model.densities)).ln
    ln = (
        n * ln_multinomial(spec.t)
        - to_mpf(Fraction(model.dimension, 2)) * mp.log(2 * mp.pi * n)
        - ln_det / 2
    )
    return LogValue.from_ln(ln)


@dataclass(frozen=True)
class FinalDisplay:
    """mult(n; s)^m / mult(mn; s m) exactly and by its Stirling limit."""

    exact: LogValue
    asymptotic: LogValue

    @property
    def difference(self) -> float:
        return float(self.asymptotic.ln - self.exact.ln)


def clt_final_display(m: int, n: int, s: Sequence[int]) -> FinalDisplay:
    spec = make_spec(m, n, s)
    if any(si == 0 for si in spec.s):
        raise ValidationError.from_type(
            ValidationErrorType.DEGENERATE_DENSITY, "every factor must be nonempty"
        )
    k = spec.k
    exact = m * ln_multinomial(spec.s) - ln_multinomial(spec.edge_counts)
    ln_product = mp.fsum(LogValue.from_number(lam).ln for lam in spec.densities)
    asymptotic = (
        -to_mpf(Fraction(k * (m - 1), 2)) * mp.log(2 * mp.pi * n)
        + to_mpf(Fraction(k, 2)) * mp.log(m)
        - to_mpf(Fraction(m - 1, 2)) * ln_product
    )
    return FinalDisplay(LogValue.from_ln(exact), LogValue.from_ln(asymptotic))
