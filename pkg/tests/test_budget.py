"""Tests for search budgets."""

import pytest

from signedflow.budget import SearchBudget
from signedflow.exceptions import BudgetExhausted


def test_node_cap_raises():
    tracker = SearchBudget(node_limit=3).tracker()
    tracker.charge(3)
    with pytest.raises(BudgetExhausted):
        tracker.charge()


def test_child_counts_nodes_afresh_under_the_same_deadline():
    parent = SearchBudget(node_limit=2).tracker()
    parent.charge(2)
    child = parent.child()
    assert child.nodes == 0
    assert child.deadline == parent.deadline
    child.charge(2)


def test_budget_values_are_validated():
    with pytest.raises(ValueError):
        SearchBudget(node_limit=0)
    with pytest.raises(ValueError):
        SearchBudget(max_p=1)


def test_with_max_p_copies():
    budget = SearchBudget(node_limit=10)
    capped = budget.with_max_p(6)
    assert capped.max_p == 6
    assert capped.node_limit == 10
    assert budget.max_p is None
