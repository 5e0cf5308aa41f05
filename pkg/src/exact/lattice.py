"""
The colouring count as a lattice-walk count.

Each V2 vertex chooses how its m edges are coloured (t_c edges of colour c).
Record this as the indicator vector X with coordinates (i, c) for
i < m-1 and c >= 1; a sequence of n choices is a factorisation exactly when
the walk X^(1) + ... + X^(n) ends at its mean (s_c at every coordinate).
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Optional, Sequence

from ..core import make_spec
from ..numeric import multinomial, multiset_permutations
from .budget import CLOCK_STRIDE, BudgetTracker, CountBudget


def column_steps(m: int, t: Sequence[int]) -> list[tuple[int, ...]]:
    """The indicator vector of every colouring of one V2 vertex's edges."""
    k = len(t) - 1
    steps = []
    for arrangement in multiset_permutations(t):
        vector = [0] * ((m - 1) * k)
        for i, colour in enumerate(arrangement[: m - 1]):
            if colour:
                vector[i * k + colour - 1] = 1
        steps.append(tuple(vector))
    return steps


def exact_lattice_count(
    m: int, n: int, s: Sequence[int], budget: Optional[CountBudget] = None
) -> int:
    """Number of n-step walks from 0 to the mean vector, by plain convolution."""
    spec = make_spec(m, n, s)
    k = spec.k
    target = tuple(spec.s[c] for _ in range(m - 1) for c in range(1, k + 1))
    steps = column_steps(m, spec.t)
    tracker = BudgetTracker(budget or CountBudget(), f"lattice {m}x{n}")

    walks: dict[tuple[int, ...], int] = {(0,) * len(target): 1}
    for column in range(n):
        left = n - column - 1
        after: dict[tuple[int, ...], int] = defaultdict(int)
        guard = tracker.guard()
        for index, (position, ways) in enumerate(walks.items()):
            if index % CLOCK_STRIDE == 0 and guard.exhausted(len(after)):
                tracker.overrun(guard)
            for step in steps:
                moved = tuple(p + x for p, x in zip(position, step))
                if all(0 <= goal - p <= left for p, goal in zip(moved, target)):
                    after[moved] += ways
        walks = after
        tracker.charge(len(walks))
    return walks.get(target, 0)


def lattice_point_probability(
    m: int, n: int, s: Sequence[int], budget: Optional[CountBudget] = None
) -> Fraction:
    """Prob(X^(n) = E X^(n)) for uniformly random column colourings."""
    spec = make_spec(m, n, s)
    return Fraction(exact_lattice_count(m, n, s, budget), multinomial(spec.t) ** n)
