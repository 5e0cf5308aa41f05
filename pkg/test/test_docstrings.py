"""Public entry points document their arguments and results."""

import inspect

import pytest

from src.asympt import (
    clt_determinant,
    clt_model,
    disjoint_probability_estimate,
    rapprox,
    regime_classify,
    rprime,
)
from src.core import make_spec
from src.exact import (
    count_disjoint_extensions,
    count_factorisations_detailed,
    count_latin_rectangles,
    exact_disjoint_probability,
)
from src.switching import classify_labelings, monte_carlo_disjoint
from src.verify import run_verification

ENTRY_POINTS = [
    make_spec,
    count_factorisations_detailed,
    count_latin_rectangles,
    count_disjoint_extensions,
    exact_disjoint_probability,
    rprime,
    rapprox,
    disjoint_probability_estimate,
    clt_model,
    clt_determinant,
    regime_classify,
    classify_labelings,
    monte_carlo_disjoint,
    run_verification,
]


@pytest.mark.parametrize("function", ENTRY_POINTS, ids=lambda f: f.__name__)
def test_args_and_returns_sections(function):
    doc = inspect.getdoc(function)
    assert doc is not None
    assert "Args:" in doc
    assert "Returns:" in doc
    for name in inspect.signature(function).parameters:
        assert f"{name}:" in doc, name
