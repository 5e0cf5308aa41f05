"""
Exact count of factorisations R(m, n; lambda_0, ..., lambda_k).

Rows (one side of K_{m,n}) are exchangeable, so the DP state after some
columns is the multiset of per-row residual demand vectors. Columns are
processed one at a time; a column hands each of its t_c colour-c slots to a
row that still needs colour c. Rows with equal residuals are grouped into a
class and a class of size mu receiving x_c slots of colour c contributes the
multinomial weight mu! / prod(x_c!).
"""

from __future__ import annotations

from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from contextlib import nullcontext
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from rich.console import Console

from ..core import FactorisationSpec
from ..numeric import multinomial
from .budget import CLOCK_STRIDE, BudgetTracker, CountBudget, LayerGuard

Vector = tuple[int, ...]


@dataclass(frozen=True)
class ResidualState:
    """
    Canonical multiset of residual demand vectors.

    ``classes`` is sorted by vector, so equal states hash equal.
    """

    classes: tuple[tuple[Vector, int], ...]
    columns_remaining: int

    @classmethod
    def from_counter(cls, counter: dict[Vector, int], columns_remaining: int) -> "ResidualState":
        return cls(
            tuple(sorted((vec, count) for vec, count in counter.items() if count)),
            columns_remaining,
        )

    @classmethod
    def initial(cls, row_degrees: Vector, rows: int, columns: int) -> "ResidualState":
        return cls(((tuple(row_degrees), rows),), columns)

    @property
    def rows(self) -> int:
        return sum(count for _, count in self.classes)

    def is_consistent(self, column_demand: Sequence[int]) -> bool:
        """Per colour, total residual equals t_c times the columns left."""
        for colour, demand in enumerate(column_demand):
            total = sum(vec[colour] * count for vec, count in self.classes)
            if total != demand * self.columns_remaining:
                return False
        return True

    def successors(self, column_demand: Sequence[int]) -> Iterator[tuple["ResidualState", int]]:
        """Every way to fill the next column, as (next state, weight)."""
        classes = self.classes
        colours = len(column_demand)

        # capacity[i][c]: rows in classes i.. still needing colour c
        capacity = [[0] * colours for _ in range(len(classes) + 1)]
        for i in range(len(classes) - 1, -1, -1):
            vec, count = classes[i]
            for c in range(colours):
                capacity[i][c] = capacity[i + 1][c] + (count if vec[c] else 0)

        next_columns = self.columns_remaining - 1

        def assign(i: int, remaining: list[int], parts: list[tuple[Vector, int]], weight: int):
            if i == len(classes):
                if not any(remaining):
                    merged: Counter[Vector] = Counter()
                    for vec, count in parts:
                        merged[vec] += count
                    yield ResidualState.from_counter(merged, next_columns), weight
                return

            vec, count = classes[i]
            for split in _splits(count, vec, remaining):
                left = [remaining[c] - split[c] for c in range(colours)]
                if any(left[c] > capacity[i + 1][c] for c in range(colours)):
                    continue
                new_parts = list(parts)
                for c, x in enumerate(split):
                    if x:
                        reduced = vec[:c] + (vec[c] - 1,) + vec[c + 1 :]
                        new_parts.append((reduced, x))
                yield from assign(i + 1, left, new_parts, weight * multinomial(split))

        yield from assign(0, list(column_demand), [], 1)


def _splits(total: int, vec: Vector, remaining: Sequence[int]) -> Iterator[list[int]]:
    """Compositions x of ``total`` with x_c <= remaining[c] and x_c = 0 where vec[c] = 0."""
    bounds = [min(remaining[c], total) if vec[c] else 0 for c in range(len(vec))]
    suffix = [0] * (len(bounds) + 1)
    for c in range(len(bounds) - 1, -1, -1):
        suffix[c] = suffix[c + 1] + bounds[c]

    def extend(c: int, left: int, acc: list[int]) -> Iterator[list[int]]:
        if c == len(bounds) - 1:
            if left <= bounds[c]:
                yield acc + [left]
            return
        low = max(0, left - suffix[c + 1])
        high = min(bounds[c], left)
        for x in range(low, high + 1):
            yield from extend(c + 1, left - x, acc + [x])

    if suffix[0] >= total:
        yield from extend(0, total, [])


def _advance_chunk(
    chunk: list[tuple[ResidualState, int]], column_demand: Vector, guard: LayerGuard
) -> Optional[dict[ResidualState, int]]:
    """Successor layer of ``chunk``, or None once ``guard`` runs out."""
    frontier: dict[ResidualState, int] = defaultdict(int)
    steps = 0
    for state, ways in chunk:
        for successor, weight in state.successors(column_demand):
            frontier[successor] += ways * weight
            steps += 1
            if steps % CLOCK_STRIDE == 0 and guard.exhausted(len(frontier)):
                return None
    return frontier


@dataclass(frozen=True)
class CountResult:
    count: int
    states_explored: int
    elapsed_seconds: float
    method: str = "dp"


def _orient(spec: FactorisationSpec) -> tuple[Vector, Vector, int, int]:
    """Drop empty factors and put the smaller side on the rows."""
    keep = [c for c, si in enumerate(spec.s) if si]
    s = tuple(spec.s[c] for c in keep)
    t = tuple(spec.t[c] for c in keep)
    if spec.m <= spec.n:
        return s, t, spec.m, spec.n
    return t, s, spec.n, spec.m


def count_factorisations_detailed(
    spec: FactorisationSpec,
    budget: Optional[CountBudget] = None,
    workers: int = 1,
    console: Optional[Console] = None,
) -> CountResult:
    """
    Count factorisations and report the DP effort.

    Args:
        spec: Validated degree specification
        budget: State and time limits (defaults to CountBudget())
        workers: Worker processes for wide layers; the count does not depend on it
        console: Where per-layer progress goes, if anywhere

    Returns:
        CountResult with the exact count, states explored and elapsed seconds

    Raises BudgetExceeded as soon as either limit runs out, including in the
    middle of a layer.
    """
    tracker = BudgetTracker(
        budget or CountBudget(), f"count {spec.m}x{spec.n} {list(spec.s)}", console
    )
    row_degrees, column_demand, rows, columns = _orient(spec)

    frontier: dict[ResidualState, int] = {ResidualState.initial(row_degrees, rows, columns): 1}
    tracker.charge(1)

    pool_context = ProcessPoolExecutor(max_workers=workers) if workers > 1 else nullcontext()
    with pool_context as pool:
        for layer in range(columns):
            items = list(frontier.items())
            guard = tracker.guard()
            if pool is None or len(items) < 2 * workers:
                advanced = _advance_chunk(items, column_demand, guard)
                if advanced is None:
                    tracker.overrun(guard)
                frontier = advanced
            else:
                size = -(-len(items) // (4 * workers))
                chunks = [items[i : i + size] for i in range(0, len(items), size)]
                merged: dict[ResidualState, int] = defaultdict(int)
                parts = pool.map(
                    _advance_chunk, chunks, [column_demand] * len(chunks), [guard] * len(chunks)
                )
                for part in parts:
                    if part is None:
                        tracker.overrun(guard)
                    for state, ways in part.items():
                        merged[state] += ways
                frontier = merged
            tracker.charge(len(frontier))
            tracker.layer(layer + 1, len(frontier))
            if not frontier:
                break

    final = ResidualState.from_counter({(0,) * len(row_degrees): rows}, 0)
    return CountResult(frontier.get(final, 0), tracker.states, tracker.elapsed)


def count_factorisations(
    spec: FactorisationSpec,
    budget: Optional[CountBudget] = None,
    workers: int = 1,
    console: Optional[Console] = None,
) -> int:
    """Exact R(m, n; lambda_0..lambda_k). Independent of ``workers``."""
    return count_factorisations_detailed(spec, budget, workers, console).count
