import os
from dataclasses import dataclass

from .errors import BudgetExceeded

DEFAULT_MAX_CANDIDATES = 2**20
BUDGET_ENV = "NIJLIE_BUDGET"


@dataclass(frozen=True)
class EnumerationBudget:
    """Cap on the number of candidates any exhaustive search may visit."""

    max_candidates: int = DEFAULT_MAX_CANDIDATES

    def require(self, count):
        if count > self.max_candidates:
            raise BudgetExceeded(count, self.max_candidates)
        return count


def default_budget():
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        return EnumerationBudget(int(raw))
    return EnumerationBudget()


def as_budget(budget):
    if budget is None:
        return default_budget()
    if isinstance(budget, EnumerationBudget):
        return budget
    return EnumerationBudget(int(budget))
