"""
Exact probability that a uniformly relabelled H is edge-disjoint from D.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import permutations

from ..core import BipartiteGraph
from ..errors import TooLargeError, ValidationError, ValidationErrorType

MAX_SIDE = 7


def _permanent(allowed: tuple[int, ...], n: int) -> int:
    """Number of permutations tau with tau(v) in allowed[v], by a subset DP."""
    ways = [0] * (1 << n)
    ways[0] = 1
    for mask in range(1 << n):
        if not ways[mask]:
            continue
        v = mask.bit_count()
        if v == n:
            continue
        free = allowed[v] & ~mask
        while free:
            bit = free & -free
            free ^= bit
            ways[mask | bit] += ways[mask]
    return ways[-1]


def _count_for_sigmas(
    d_rows: tuple[int, ...], h_columns: tuple[int, ...], n: int, sigmas: list[tuple[int, ...]]
) -> int:
    full = (1 << n) - 1
    cache: dict[tuple[int, ...], int] = {}
    total = 0
    for sigma in sigmas:
        allowed = []
        for column in h_columns:
            forbidden = 0
            u = 0
            while column:
                if column & 1:
                    forbidden |= d_rows[sigma[u]]
                column >>= 1
                u += 1
            allowed.append(full & ~forbidden)
        # the permanent does not depend on the order of the rows
        key = tuple(sorted(allowed))
        if key not in cache:
            cache[key] = _permanent(key, n)
        total += cache[key]
    return total


def exact_disjoint_probability(d: BipartiteGraph, h: BipartiteGraph, workers: int = 1) -> Fraction:
    """
    Fraction of the m!·n! relabellings (sigma, tau) of H, edge (u, v) going
    to (sigma(u), tau(v)), that share no edge with D.

    Loops over every sigma and counts the admissible tau exactly.

    Args:
        d: The fixed graph
        h: The relabelled graph, same shape as d, both sides at most MAX_SIDE
        workers: Worker processes over chunks of sigma

    Returns:
        The probability as an exact Fraction
    """
    if d.shape != h.shape:
        raise ValidationError.from_type(
            ValidationErrorType.SHAPE_MISMATCH, f"D is {d.shape}, H is {h.shape}"
        )
    m, n = d.shape
    if m > MAX_SIDE or n > MAX_SIDE:
        limit = math.factorial(MAX_SIDE) ** 2
        raise TooLargeError(
            math.factorial(m) * math.factorial(n), limit, "relabelling enumeration"
        )

    sigmas = list(permutations(range(m)))
    if workers <= 1:
        favourable = _count_for_sigmas(d.rows, h.columns, n, sigmas)
    else:
        size = -(-len(sigmas) // workers)
        chunks = [sigmas[i : i + size] for i in range(0, len(sigmas), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            favourable = sum(
                pool.map(
                    _count_for_sigmas,
                    [d.rows] * len(chunks),
                    [h.columns] * len(chunks),
                    [n] * len(chunks),
                    chunks,
                )
            )
    return Fraction(favourable, math.factorial(m) * math.factorial(n))
