"""Exception types and the work budget shared by the search layers."""

from __future__ import annotations

import os

DEFAULT_BUDGET = 50_000_000
BUDGET_ENV_VAR = "POLYA_ORACLE_BUDGET"


class InvalidInputError(ValueError):
    """Malformed argument: zero input, degenerate field, non-ideal lattice."""


class DomainError(ValueError):
    """Operation applied outside its mathematical domain (e.g. the
    fundamental unit of an imaginary field)."""


class BudgetExceededError(RuntimeError):
    """Search budget exhausted before the answer was decided.

    Deliberately distinct from a mathematical verdict: a search that runs
    out of budget never reports "nonprincipal".
    """


class InconsistencyError(RuntimeError):
    """Two independent routes to the same quantity disagreed, or a closed
    formula produced a non-integer.  Always indicates an internal bug."""


def default_budget_units() -> int:
    raw = os.environ.get(BUDGET_ENV_VAR)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        units = int(raw)
    except ValueError as exc:
        raise InvalidInputError(f"{BUDGET_ENV_VAR} must be an integer, got {raw!r}") from exc
    if units <= 0:
        raise InvalidInputError(f"{BUDGET_ENV_VAR} must be positive, got {units}")
    return units


class Budget:
    """Mutable counter of abstract work units (cycle steps, candidate tests,
    precision refinements).  charge() raises once the allowance is spent."""

    def __init__(self, units: int | None = None):
        self.limit = default_budget_units() if units is None else units
        self.spent = 0

    def charge(self, units: int = 1) -> None:
        self.spent += units
        if self.spent > self.limit:
            raise BudgetExceededError(
                f"work budget exhausted ({self.spent} > {self.limit} units)"
            )
