"""
Independent brute-force oracles.

Nothing here shares an algorithm with the DP counters; the oracles only use
the core types and validators.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from itertools import combinations
from typing import Iterator

from ..core import BipartiteGraph, ColourMatrix, FactorisationSpec, validate_colouring
from ..errors import TooLargeError, ValidationError, ValidationErrorType
from ..numeric import multiset_permutations

BRUTE_FORCE_LIMIT = 10**8


def _count_from_prefix(spec: FactorisationSpec, prefix: tuple[tuple[int, ...], ...]) -> int:
    patterns = list(multiset_permutations(spec.s))
    t = spec.t
    column_counts = [[0] * (spec.k + 1) for _ in range(spec.n)]
    rows: list[tuple[int, ...]] = []
    found = 0

    def push(pattern: tuple[int, ...]) -> bool:
        for j, colour in enumerate(pattern):
            column_counts[j][colour] += 1
        rows.append(pattern)
        return all(column_counts[j][colour] <= t[colour] for j, colour in enumerate(pattern))

    def pop(pattern: tuple[int, ...]) -> None:
        for j, colour in enumerate(pattern):
            column_counts[j][colour] -= 1
        rows.pop()

    def extend() -> None:
        nonlocal found
        if len(rows) == spec.m:
            if validate_colouring(ColourMatrix(tuple(rows)), spec):
                found += 1
            return
        for pattern in patterns:
            if push(pattern):
                extend()
            pop(pattern)

    for pattern in prefix:
        if not push(pattern):
            return 0
    extend()
    return found


def brute_force_count(
    spec: FactorisationSpec, limit: int = BRUTE_FORCE_LIMIT, workers: int = 1
) -> int:
    """
    Count factorisations by listing colourings whose rows are valid and
    filtering them with validate_colouring.

    The guard is on the size of that list, multinomial(n; s)^m.
    """
    patterns = list(multiset_permutations(spec.s))
    size = len(patterns) ** spec.m
    if size > limit:
        raise TooLargeError(size, limit, f"brute force on {spec.m}x{spec.n} {list(spec.s)}")

    if workers <= 1:
        return _count_from_prefix(spec, ())
    with ProcessPoolExecutor(max_workers=workers) as pool:
        prefixes = [(pattern,) for pattern in patterns]
        return sum(pool.map(_count_from_prefix, [spec] * len(prefixes), prefixes))


def enumerate_semiregular(m: int, n: int, d1: int) -> Iterator[BipartiteGraph]:
    """Every (m, n)-bipartite graph with V1 degree d1 and V2 degree d1*m/n."""
    if d1 < 0 or d1 > n:
        raise ValidationError.from_type(ValidationErrorType.INVALID_ARGUMENT, f"d1={d1}, n={n}")
    if (d1 * m) % n:
        raise ValidationError.from_type(
            ValidationErrorType.INTEGRALITY_VIOLATION, f"d1*m/n = {d1}*{m}/{n}"
        )
    d2 = d1 * m // n
    choices = [sum(1 << j for j in combo) for combo in combinations(range(n), d1)]
    column_counts = [0] * n
    rows: list[int] = []

    def extend() -> Iterator[BipartiteGraph]:
        if len(rows) == m:
            yield BipartiteGraph(m, n, tuple(rows))
            return
        remaining_rows = m - len(rows) - 1
        for mask in choices:
            bits = [j for j in range(n) if mask >> j & 1]
            if any(column_counts[j] >= d2 for j in bits):
                continue
            for j in bits:
                column_counts[j] += 1
            # every column must still be completable by the rows left
            if all(d2 - column_counts[j] <= remaining_rows for j in range(n)):
                rows.append(mask)
                yield from extend()
                rows.pop()
            for j in bits:
                column_counts[j] -= 1

    yield from extend()


def derangements(n: int) -> int:
    """D_n by the recurrence D_n = (n - 1)(D_{n-1} + D_{n-2})."""
    if n < 0:
        raise ValidationError.from_type(ValidationErrorType.INVALID_ARGUMENT, f"n={n}")
    previous, current = 1, 0
    if n == 0:
        return previous
    for i in range(2, n + 1):
        previous, current = current, (i - 1) * (current + previous)
    return current
