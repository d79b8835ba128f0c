"""Size budgets for exact linear algebra.

Every potentially large computation checks a budget before starting and,
for fill-in sensitive eliminations, while running.  Exceeding the budget
raises; nothing is ever silently truncated.
"""

from __future__ import annotations

from dataclasses import dataclass


class BudgetExceededError(Exception):
    """A computation would exceed the configured size budget.

    Carries an estimate of what the computation would have needed, so
    callers can report how far out of reach the cell was.
    """

    def __init__(self, what: str, needed: int, allowed: int):
        self.what = what
        self.needed = needed
        self.allowed = allowed
        super().__init__(f"size budget exceeded: {what} needs {needed}, budget allows {allowed}")


@dataclass(frozen=True)
class SizeBudget:
    """Caps for exact linear algebra.

    max_dim      -- largest ambient dimension of any vector space/lattice
                    a computation may work in.
    max_columns  -- largest number of matrix columns streamed through a
                    single elimination.
    max_entries  -- cap on stored nonzero entries of one elimination state
                    (guards integer fill-in).
    """

    max_dim: int = 200_000
    max_columns: int = 4_000_000
    max_entries: int = 60_000_000

    def check_dim(self, needed: int, what: str = "ambient dimension") -> None:
        if needed > self.max_dim:
            raise BudgetExceededError(what, needed, self.max_dim)

    def check_columns(self, needed: int, what: str = "matrix columns") -> None:
        if needed > self.max_columns:
            raise BudgetExceededError(what, needed, self.max_columns)

    def check_entries(self, needed: int, what: str = "stored entries") -> None:
        if needed > self.max_entries:
            raise BudgetExceededError(what, needed, self.max_entries)


DEFAULT_BUDGET = SizeBudget()
