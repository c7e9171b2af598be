"""
Search budgets shared by every exhaustive procedure.

A ``SearchBudget`` is a value; a ``BudgetTracker`` is the per-call counter
that enforces it. Searches call ``tracker.charge()`` once per node and let
``BudgetExhausted`` escape to the public entry point, which reports
``Outcome.UNKNOWN`` instead of a negative answer.
"""

import logging
import time
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from .config import get_settings
from .exceptions import BudgetExhausted

logger = logging.getLogger(__name__)


class Outcome(str, Enum):
    """Three-valued answer of a bounded search."""
    FOUND = "found"
    NONE = "none"
    UNKNOWN = "unknown"


class SearchBudget(BaseModel):
    """Resource limits for one solver call."""

    model_config = ConfigDict(frozen=True)

    max_p: Optional[int] = Field(default=None, ge=2)
    node_limit: int = Field(default=2_000_000, gt=0)
    time_limit: float = Field(default=600.0, gt=0)

    @classmethod
    def from_settings(cls, max_p: Optional[int] = None) -> "SearchBudget":
        settings = get_settings()
        return cls(max_p=max_p, node_limit=settings.node_limit, time_limit=settings.time_limit)

    def with_max_p(self, max_p: Optional[int]) -> "SearchBudget":
        return self.model_copy(update={"max_p": max_p})

    def tracker(self) -> "BudgetTracker":
        return BudgetTracker(self)


class BudgetTracker:
    """Counts search nodes against a budget and watches a wall-clock deadline."""

    # checking the clock on every node is measurable in tight loops
    _CLOCK_EVERY = 1024

    def __init__(self, budget: SearchBudget, deadline: Optional[float] = None):
        self.budget = budget
        self.nodes = 0
        self._node_cap = budget.node_limit
        self.deadline = deadline if deadline is not None else time.monotonic() + budget.time_limit

    def child(self) -> "BudgetTracker":
        """Fresh node count sharing this tracker's deadline."""
        return BudgetTracker(self.budget, deadline=self.deadline)

    def charge(self, amount: int = 1) -> None:
        self.nodes += amount
        if self.nodes > self._node_cap:
            logger.debug("node limit %d reached", self._node_cap)
            raise BudgetExhausted(f"node limit {self._node_cap} reached")
        if self.nodes % self._CLOCK_EVERY == 0:
            self.check_clock()

    def check_clock(self) -> None:
        if time.monotonic() > self.deadline:
            logger.debug("time limit %.1fs reached", self.budget.time_limit)
            raise BudgetExhausted(f"time limit {self.budget.time_limit}s reached")

    @property
    def expired(self) -> bool:
        return time.monotonic() > self.deadline
