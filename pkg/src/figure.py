"""
Figure data: exact Latin rectangle counts against the factorisation estimate.

For k x n Latin rectangles, F(n, k) = R(n, n; 1-k/n, 1/n, ..., 1/n), and the
ratio F / R' is expected to follow the line 1 + x/12 with x = k/(n-1).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from mpmath import mp
from rich.console import Console

from .asympt import rprime
from .core import make_spec
from .errors import LimitError
from .exact import CountBudget, count_latin_rectangles
from .numeric import LogValue


def figure_row(
    n: int, k: int, budget: Optional[CountBudget] = None, console: Optional[Console] = None
) -> dict:
    """One data point. A count that runs out of budget gives a "skipped" row."""
    x = Fraction(k, n - 1) if n > 1 else Fraction(0)
    row = {"n": n, "k": k, "x": float(x)}
    reference = float(1 + x / 12)
    try:
        count = count_latin_rectangles(n, k, budget, console)
    except LimitError:
        skipped = {"ln_F": None, "ln_Rprime": None, "ratio": None}
        return {**row, **skipped, "reference": reference, "status": "skipped"}
    ln_f = LogValue.from_number(count).ln
    ln_r = rprime(make_spec(n, n, [n - k] + [1] * k)).ln
    return {
        **row,
        "ln_F": float(ln_f),
        "ln_Rprime": float(ln_r),
        "ratio": float(mp.exp(ln_f - ln_r)),
        "reference": reference,
        "status": "ok",
    }


def figure_rows(
    n: int,
    k_max: Optional[int] = None,
    budget: Optional[CountBudget] = None,
    console: Optional[Console] = None,
) -> list[dict]:
    """Rows for k = 0..min(k_max, n-1)."""
    k_max = n - 1 if k_max is None else k_max
    return [figure_row(n, k, budget, console) for k in range(0, min(k_max, n - 1) + 1)]
