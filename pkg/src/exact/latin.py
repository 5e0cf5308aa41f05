"""
Latin rectangles: F(n, k) = number of k x n Latin rectangles, i.e. ordered
k-tuples of pairwise edge-disjoint perfect matchings of K_{n,n}.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from typing import Iterator, Optional

from rich.console import Console

from ..errors import ValidationError, ValidationErrorType
from .budget import CLOCK_STRIDE, BudgetTracker, CountBudget

# A row's residual is the bitmask of matchings 1..k it still needs; how many
# zero entries it still needs is implied by the number of columns left.
MaskState = tuple[tuple[int, int], ...]


def _check_range(n: int, k: int) -> None:
    if n < 1:
        raise ValidationError.from_type(ValidationErrorType.NON_POSITIVE_SIZE, f"n={n}")
    if not 0 <= k <= n:
        raise ValidationError.from_type(ValidationErrorType.K_OUT_OF_RANGE, f"k={k}, n={n}")


def _column_successors(state: MaskState, k: int, columns_after: int) -> Iterator[tuple[MaskState, int]]:
    """
    Place matchings 1..k into the current column, one row each.

    Matching c goes to an untouched row whose mask contains c. A row left
    untouched takes a zero entry, so it must have more columns left than
    matchings still needed.
    """
    untouched = Counter(dict(state))

    def place(c: int, touched: list[int], weight: int) -> Iterator[tuple[MaskState, int]]:
        if c == k:
            if any(mask.bit_count() > columns_after for mask in untouched if untouched[mask]):
                return
            result = Counter({mask: count for mask, count in untouched.items() if count})
            for mask in touched:
                result[mask] += 1
            yield tuple(sorted(result.items())), weight
            return
        bit = 1 << c
        for mask in list(untouched):
            count = untouched[mask]
            if not count or not mask & bit:
                continue
            untouched[mask] -= 1
            touched.append(mask ^ bit)
            yield from place(c + 1, touched, weight * count)
            touched.pop()
            untouched[mask] += 1

    yield from place(0, [], 1)


def count_latin_rectangles(
    n: int,
    k: int,
    budget: Optional[CountBudget] = None,
    console: Optional[Console] = None,
) -> int:
    """
    F(n, k) by a column DP over multisets of residual masks. F(n, 0) = 1.

    Args:
        n: Number of symbols and columns
        k: Number of rows, 0 <= k <= n
        budget: State and time limits
        console: Progress console

    Returns:
        The exact number of k x n Latin rectangles
    """
    _check_range(n, k)
    if k == 0:
        return 1
    tracker = BudgetTracker(budget or CountBudget(), f"latin n={n} k={k}", console)

    full = (1 << k) - 1
    frontier: dict[MaskState, int] = {((full, n),): 1}
    tracker.charge(1)
    for column in range(n):
        columns_after = n - column - 1
        successors: dict[MaskState, int] = defaultdict(int)
        guard = tracker.guard()
        steps = 0
        for state, ways in frontier.items():
            for nxt, weight in _column_successors(state, k, columns_after):
                successors[nxt] += ways * weight
                steps += 1
                if steps % CLOCK_STRIDE == 0 and guard.exhausted(len(successors)):
                    tracker.overrun(guard)
        frontier = successors
        tracker.charge(len(frontier))
        tracker.layer(column + 1, len(frontier))

    return frontier.get(((0, n),), 0)


def count_latin_by_row_extension(n: int, k: int) -> int:
    """
    F(n, k) by extending normalised rectangles one row at a time.

    A rectangle is normalised when its first row is 0..n-1 and its first
    column is 0..k-1. Symbol and column relabelling act freely on the rest,
    so F(n, k) = n! * (n-1)!/(n-k)! * (number of normalised rectangles).
    """
    _check_range(n, k)
    if k == 0:
        return 1

    full = (1 << n) - 1
    column_used = [1 << j for j in range(n)]

    def fill_row(row: int) -> int:
        if row == k:
            return 1
        # first column is fixed to symbol `row`
        if column_used[0] >> row & 1:
            return 0
        column_used[0] |= 1 << row
        total = fill_cell(row, 1, 1 << row)
        column_used[0] ^= 1 << row
        return total

    def fill_cell(row: int, column: int, row_used: int) -> int:
        if column == n:
            return fill_row(row + 1)
        total = 0
        free = full & ~row_used & ~column_used[column]
        while free:
            bit = free & -free
            free ^= bit
            column_used[column] |= bit
            total += fill_cell(row, column + 1, row_used | bit)
            column_used[column] ^= bit
        return total

    normalised = fill_row(1)
    return math.factorial(n) * math.factorial(n - 1) // math.factorial(n - k) * normalised
