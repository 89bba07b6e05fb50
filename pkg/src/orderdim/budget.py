"""Search budgets.

Exhaustive enumerations (all linear extensions, all realizers, all
colorings) are exponential in the worst case.  Rather than hang, every
enumerator checks a step budget and raises LimitExceeded when it runs out.
The default budget can be overridden with the ORDERDIM_BUDGET environment
variable; a handful of expensive entry points also accept an explicit
`budget=` argument which takes precedence.
"""

from __future__ import annotations

import os

DEFAULT_EXTENSION_BUDGET = 1_000_000

# Hard cap on poset size for the orders that enumerate all linear
# extensions.  |P| = 10 already admits up to 10! = 3.6M extensions.
DEFAULT_MAX_ELEMENTS = 10

ENV_VAR = "ORDERDIM_BUDGET"


def effective_budget(explicit: int | None = None) -> int:
    """Budget to use: explicit argument, else env override, else default."""
    if explicit is not None:
        if explicit <= 0:
            raise ValueError("budget must be positive")
        return explicit
    raw = os.environ.get(ENV_VAR)
    if raw is not None:
        try:
            value = int(raw)
        except ValueError as exc:
            raise ValueError(f"{ENV_VAR} must be an integer, got {raw!r}") from exc
        if value <= 0:
            raise ValueError(f"{ENV_VAR} must be positive, got {value}")
        return value
    return DEFAULT_EXTENSION_BUDGET


class BudgetMeter:
    """Counts down enumeration steps; raises LimitExceeded at zero.

    Cheap enough to tick once per node in a backtracking search.
    """

    __slots__ = ("remaining", "what")

    def __init__(self, budget: int, what: str):
        self.remaining = budget
        self.what = what

    def tick(self, cost: int = 1) -> None:
        self.remaining -= cost
        if self.remaining < 0:
            from .errors import LimitExceeded

            raise LimitExceeded(
                f"{self.what}: step budget exhausted "
                f"(raise {ENV_VAR} or pass budget= to continue)"
            )
