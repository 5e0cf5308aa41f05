"""
Resource budgets for exact computations.

Running out of budget raises :class:`BudgetExceeded`; an exact operation never
returns an approximation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from time import perf_counter, time
from typing import NoReturn, Optional

from rich.console import Console

from ..errors import BudgetExceeded, LimitErrorType, ValidationError, ValidationErrorType


@dataclass(frozen=True)
class CountBudget:
    max_states: int = 5_000_000
    max_seconds: float = 600.0

    def __post_init__(self):
        if self.max_states <= 0 or self.max_seconds <= 0:
            raise ValidationError.from_type(
                ValidationErrorType.INVALID_ARGUMENT,
                f"budget must be positive (states={self.max_states}, seconds={self.max_seconds})",
            )


# successors generated between clock checks inside a layer
CLOCK_STRIDE = 1024


@dataclass(frozen=True)
class LayerGuard:
    """
    Picklable budget snapshot for the inner loop of one DP layer.

    Worker processes cannot share a tracker, so they poll this instead and
    stop early; the parent then raises through :meth:`BudgetTracker.overrun`.
    """

    deadline: float = math.inf
    headroom: int = 2**63

    def exhausted(self, pending: int) -> bool:
        return pending > self.headroom or time() > self.deadline


class BudgetTracker:
    """Counts DP states against a CountBudget and reports progress."""

    def __init__(self, budget: CountBudget, label: str, console: Optional[Console] = None):
        self.budget = budget
        self.label = label
        self.console = console
        self.states = 0
        self.start = perf_counter()
        self._ticks = 0

    @property
    def elapsed(self) -> float:
        return perf_counter() - self.start

    def charge(self, new_states: int) -> None:
        self.states += new_states
        if self.states > self.budget.max_states:
            raise BudgetExceeded(LimitErrorType.STATE_BUDGET, self.states, self.elapsed, self.label)
        self.check_time()

    def check_time(self) -> None:
        if self.elapsed > self.budget.max_seconds:
            raise BudgetExceeded(LimitErrorType.TIME_BUDGET, self.states, self.elapsed, self.label)

    def tick(self) -> None:
        """Clock check for inner loops that create no states of their own."""
        self._ticks += 1
        if self._ticks % CLOCK_STRIDE == 0:
            self.check_time()

    def guard(self) -> LayerGuard:
        remaining = self.budget.max_seconds - self.elapsed
        return LayerGuard(deadline=time() + remaining, headroom=self.budget.max_states - self.states)

    def overrun(self, guard: LayerGuard) -> NoReturn:
        """Raise for a layer that stopped early under `guard`."""
        if time() > guard.deadline:
            raise BudgetExceeded(LimitErrorType.TIME_BUDGET, self.states, self.elapsed, self.label)
        raise BudgetExceeded(
            LimitErrorType.STATE_BUDGET, self.budget.max_states + 1, self.elapsed, self.label
        )

    def layer(self, index: int, size: int) -> None:
        if self.console is not None:
            self.console.print(
                f"[dim]{self.label}[/dim] layer {index}: "
                f"[cyan]{size}[/cyan] states, {self.states} total, {self.elapsed:.2f}s"
            )
