"""
Log-space closed forms and asymptotic estimates, plus the regime classifier.
"""

from .clt import (
    CLTDeterminant,
    CLTModel,
    FinalDisplay,
    clt_determinant,
    clt_estimate,
    clt_final_display,
    clt_model,
    covariance_table,
)
from .dense import RanxReport, dense_overlap_P, gbar, ranx_ratio, stirling_correction
from .exponents import (
    AggregateExponent,
    ExponentVariant,
    aggregate_exponent,
    disjoint_probability_estimate,
    mw_exponent,
    mw_prediction,
    silver_exponent,
    silver_prediction,
)
from .formulas import (
    ExactRPrime,
    FallingFactorialReport,
    RapproxVariant,
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
from .regimes import CaseReport, InequalityCheck, RegimeReport, Verdict, regime_classify
from .summation import SummationBounds, summation_bounds

__all__ = [
    "AggregateExponent",
    "CLTDeterminant",
    "CLTModel",
    "CaseReport",
    "ExactRPrime",
    "ExponentVariant",
    "FallingFactorialReport",
    "FinalDisplay",
    "InequalityCheck",
    "RanxReport",
    "RapproxVariant",
    "RegimeReport",
    "SummationBounds",
    "Verdict",
    "aggregate_exponent",
    "clt_determinant",
    "clt_estimate",
    "clt_final_display",
    "clt_model",
    "covariance_table",
    "delta1",
    "delta2",
    "dense_overlap_P",
    "disjoint_probability_estimate",
    "falling_factorial_expansion",
    "gbar",
    "latin_asymptotic",
    "mw_exponent",
    "mw_prediction",
    "ransplit_prediction",
    "ranx_ratio",
    "rapprox",
    "regime_classify",
    "rprime",
    "rprime_exact",
    "silver_exponent",
    "silver_prediction",
    "stirling_correction",
    "summation_bounds",
    "two_factor_formula",
]
