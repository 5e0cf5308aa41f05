"""
Counting semiregular graphs that avoid a fixed graph D, and the exact average
number of splittings of a semiregular graph.
"""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from rich.console import Console

from ..core import BipartiteGraph, make_spec
from ..errors import ValidationError, ValidationErrorType
from .budget import BudgetTracker, CountBudget
from .factorisations import count_factorisations

# (residual degree, bitmask of allowed columns still ahead) -> row count
RowClasses = tuple[tuple[tuple[int, int], int], ...]


def _choices(counts: Sequence[int], total: int) -> Iterator[list[int]]:
    """All y with sum(y) = total and 0 <= y_i <= counts[i]."""
    suffix = [0] * (len(counts) + 1)
    for i in range(len(counts) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + counts[i]

    def extend(i: int, left: int, acc: list[int]) -> Iterator[list[int]]:
        if i == len(counts):
            if left == 0:
                yield acc
            return
        for y in range(max(0, left - suffix[i + 1]), min(counts[i], left) + 1):
            yield from extend(i + 1, left - y, acc + [y])

    yield from extend(0, total, [])


def count_disjoint_extensions(
    d: BipartiteGraph,
    s_h: int,
    budget: Optional[CountBudget] = None,
    console: Optional[Console] = None,
) -> int:
    """
    Number of (m, n, s_h/n)-semiregular graphs H with no edge in common with D.

    Args:
        d: Semiregular graph whose edges H must avoid
        s_h: V1 degree of H; s_h*m/n must be an integer
        budget: Limits on memoised search states and time
        console: Progress console

    Returns:
        The exact number of such H

    Columns are filled left to right. Rows are grouped by their residual
    degree together with the set of columns ahead that D leaves free for
    them; two rows in the same group are interchangeable for the rest of the
    search, so the search is memoised on the multiset of groups.
    """
    m, n = d.m, d.n
    if d.semiregular_degree() is None:
        raise ValidationError.from_type(ValidationErrorType.NOT_SEMIREGULAR, "D")
    if not 0 <= s_h <= n:
        raise ValidationError.from_type(ValidationErrorType.INVALID_ARGUMENT, f"s_h={s_h}, n={n}")
    if (s_h * m) % n:
        raise ValidationError.from_type(
            ValidationErrorType.INTEGRALITY_VIOLATION, f"s_h*m/n = {s_h}*{m}/{n}"
        )
    t_h = s_h * m // n
    full = (1 << n) - 1
    tracker = BudgetTracker(budget or CountBudget(), f"extensions s_h={s_h}", console)

    def canonical(groups: Counter) -> RowClasses:
        return tuple(sorted((key, count) for key, count in groups.items() if count))

    memo: dict[tuple[int, RowClasses], int] = {}

    def search(column: int, classes: RowClasses) -> int:
        if column == n:
            return 1 if all(residual == 0 for (residual, _), _ in classes) else 0
        key = (column, classes)
        if key in memo:
            return memo[key]
        tracker.charge(1)

        bit = 1 << column
        ahead = full & ~((bit << 1) - 1)
        eligible = [i for i, ((residual, allowed), _) in enumerate(classes) if residual and allowed & bit]
        counts = [classes[i][1] for i in eligible]

        total = 0
        for picks in _choices(counts, t_h):
            tracker.tick()
            groups: Counter = Counter()
            weight = 1
            picked = dict(zip(eligible, picks))
            for i, ((residual, allowed), count) in enumerate(classes):
                y = picked.get(i, 0)
                groups[(residual, allowed & ahead)] += count - y
                if y:
                    groups[(residual - 1, allowed & ahead)] += y
                    weight *= math.comb(count, y)
            if any(
                count and residual > allowed.bit_count()
                for (residual, allowed), count in groups.items()
            ):
                continue
            total += weight * search(column + 1, canonical(groups))

        memo[key] = total
        return total

    start = Counter((s_h, full & ~row) for row in d.rows)
    if any(residual > allowed.bit_count() for residual, allowed in start):
        return 0
    return search(0, canonical(start))


def average_split_count(
    m: int,
    n: int,
    sub_degrees: Sequence[int],
    budget: Optional[CountBudget] = None,
    workers: int = 1,
) -> Fraction:
    """
    R(m,n; 1-lambda, lambda_1..lambda_k) / R(m,n; 1-lambda, lambda).

    The average, over (m, n, lambda)-semiregular graphs, of the number of ways
    to split the graph into factors of degrees ``sub_degrees``.
    """
    sub_degrees = list(sub_degrees)
    if not sub_degrees:
        raise ValidationError.from_type(ValidationErrorType.EMPTY_DEGREES)
    total = sum(sub_degrees)
    split_spec = make_spec(m, n, [n - total, *sub_degrees])
    whole_spec = make_spec(m, n, [n - total, total])

    denominator = count_factorisations(whole_spec, budget, workers)
    if denominator == 0:
        raise ValidationError.from_type(
            ValidationErrorType.ZERO_DENOMINATOR, f"R({m},{n};{list(whole_spec.s)}) = 0"
        )
    if len(sub_degrees) == 1:
        return Fraction(1)
    return Fraction(count_factorisations(split_spec, budget, workers), denominator)
