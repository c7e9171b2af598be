"""Tests for flow kinds, flow verification, lifting and tight cuts."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from signedflow.catalog import cycle, digon
from signedflow.exceptions import ValidationError
from signedflow.flows import (
    FlowAssignment,
    FlowKind,
    NegativePartition,
    TightCutReport,
    boundary,
    even_lift,
    find_tight_cut,
    hoffman_feasible,
    hoffman_feasible_by_cuts,
    modulo_to_integer,
    negate_edge,
    nonnegative,
    pq_to_circular,
    scale_flow,
    tight_cut_index,
    verify_flow,
)
from signedflow.graph import NEGATIVE, POSITIVE, Orientation, SignedGraph, cut
from signedflow.solver import decide_pq_flow

from strategies import signed_graphs


def test_pq_parameters_are_checked():
    with pytest.raises(ValidationError):
        FlowKind.pq(5, 2)
    with pytest.raises(ValidationError):
        FlowKind.pq(4, 3)
    with pytest.raises(ValidationError):
        FlowKind.circular(Fraction(3, 2))


def test_allowed_values_for_circular_four():
    """Positive edges avoid 0; negative edges avoid the band around r/2."""
    kind = FlowKind.circular(4)
    assert [kind.allows(POSITIVE, v) for v in (0, 1, 3, 4)] == [False, True, True, False]
    assert [kind.allows(NEGATIVE, v) for v in (0, 1, 2, 3, -3, 4)] == [True, True, False, True, True, False]


def test_allowed_values_for_modulo_kind():
    kind = FlowKind.mod_pq(6, 2)
    assert [v for v in range(6) if kind.allows(POSITIVE, v)] == [2, 3, 4]
    assert [v for v in range(6) if kind.allows(NEGATIVE, v)] == [0, 1, 5]
    assert not kind.allows(NEGATIVE, -1)


def test_even_lift():
    assert even_lift(Fraction(5, 2)) == (10, 4)
    assert even_lift(4) == (4, 1)
    assert even_lift(3) == (6, 2)


def test_modulo_values_must_lie_in_range():
    with pytest.raises(ValidationError):
        FlowAssignment((0, 4), FlowKind.mod_pq(4, 1))
    with pytest.raises(ValidationError):
        FlowAssignment((Fraction(1, 2),), FlowKind.pq(4, 1))


def test_digon_carries_a_four_flow():
    """The +/- digon balances with 1 on the positive and -1 on the negative edge."""
    g = digon()
    D = Orientation.reference(g)
    assert verify_flow(g, D, FlowAssignment((1, -1), FlowKind.circular(4)))
    assert verify_flow(g, D, FlowAssignment((1, -1), FlowKind.pq(4, 1)))


def test_edge_violation_is_reported_first():
    g = digon()
    check = verify_flow(g, Orientation.reference(g), FlowAssignment((1, -1), FlowKind.circular(2)))
    assert not check
    assert check.violation.where == "edge"
    assert check.violation.index == 1


def test_vertex_violation_names_the_vertex():
    g = cycle(3)
    check = verify_flow(g, Orientation.reference(g), FlowAssignment((1, 1, 2), FlowKind.circular(3)))
    assert not check.ok
    assert check.violation.where == "vertex"
    assert check.violation.index == 0


def test_flow_must_cover_every_edge():
    g = cycle(3)
    with pytest.raises(ValidationError):
        verify_flow(g, Orientation.reference(g), FlowAssignment((1, 1), FlowKind.circular(2)))


def test_modulo_flow_balances_modulo_p():
    g = digon()
    D = Orientation.reference(g)
    f = FlowAssignment((1, 3), FlowKind.mod_pq(4, 1))
    assert verify_flow(g, D, f)
    assert boundary(g, D, f, {0}) == 4


def test_modulo_to_integer_lifts_the_digon():
    """The lifted flow is congruent to the modulo flow and verifies exactly."""
    g = digon()
    D = Orientation.reference(g)
    f = FlowAssignment((1, 3), FlowKind.mod_pq(4, 1))
    lifted = modulo_to_integer(g, D, f)
    assert lifted.kind == FlowKind.pq(4, 1)
    assert verify_flow(g, D, lifted)
    assert all((a - b) % 4 == 0 for a, b in zip(lifted.values, f.values))


def test_modulo_to_integer_rejects_non_flows():
    g = digon()
    with pytest.raises(ValidationError):
        modulo_to_integer(g, Orientation.reference(g), FlowAssignment((1, 1), FlowKind.mod_pq(4, 1)))


def test_negating_edges_keeps_the_flow_valid():
    g = digon()
    D, f = Orientation.reference(g), FlowAssignment((1, -1), FlowKind.circular(4))
    D2, f2 = negate_edge(D, f, 0)
    assert f2[0] == -1
    assert verify_flow(g, D2, f2)
    D3, f3 = nonnegative(D, f)
    assert all(v >= 0 for v in f3.values)
    assert verify_flow(g, D3, f3)


@settings(max_examples=30, deadline=None)
@given(signed_graphs(max_vertices=4, max_edges=5), st.data())
def test_negation_and_scaling_keep_random_flows_valid(g, data):
    decision = decide_pq_flow(g, 6, 1)
    if not decision.found:
        return
    D, f = decision.witness
    for e in data.draw(st.lists(st.integers(0, g.m - 1), max_size=4) if g.m else st.just([])):
        D, f = negate_edge(D, f, e)
    assert verify_flow(g, D, f)
    circular = pq_to_circular(f)
    assert verify_flow(g, D, scale_flow(circular, data.draw(st.sampled_from([6, Fraction(13, 2), 8]))))


def test_negate_edge_needs_signed_values():
    g = digon()
    with pytest.raises(ValidationError):
        negate_edge(Orientation.reference(g), FlowAssignment((1, 3), FlowKind.mod_pq(4, 1)), 0)


def test_scaling_up_preserves_validity():
    g = digon()
    D = Orientation.reference(g)
    scaled = scale_flow(FlowAssignment((1, -1), FlowKind.circular(4)), 8)
    assert scaled.values == (Fraction(2), Fraction(-2))
    assert verify_flow(g, D, scaled)


def test_pq_to_circular_divides_by_q():
    f = pq_to_circular(FlowAssignment((2, -4), FlowKind.pq(10, 2)))
    assert f.kind == FlowKind.circular(5)
    assert f.values == (Fraction(1), Fraction(-2))


@settings(max_examples=60)
@given(signed_graphs(max_vertices=6, max_edges=8), st.data())
def test_hoffman_max_flow_agrees_with_all_cuts(g, data):
    """One max-flow answers the same question as every cut in both directions."""
    D = Orientation.from_choices(g, data.draw(st.sets(st.integers(0, max(g.m - 1, 0)))) if g.m else [])
    low = data.draw(st.sets(st.sampled_from(g.negative_edges))) if g.negative_edges else set()
    pi = NegativePartition(low, set(g.negative_edges) - low)
    r = data.draw(st.sampled_from([Fraction(2), Fraction(5, 2), Fraction(3), Fraction(7, 2), Fraction(4), Fraction(6)]))
    assert hoffman_feasible(g, D, pi, r) == hoffman_feasible_by_cuts(g, D, pi, r)


def test_negative_partition_must_cover_negative_edges():
    g = digon()
    with pytest.raises(ValidationError):
        hoffman_feasible(g, Orientation.reference(g), NegativePartition(set(), set()), 4)


def test_tight_cut_index_formula():
    report = TightCutReport(cut(cycle(3), {0}), 1, 1, 0, 0, None)
    assert tight_cut_index(report) == 2
    with pytest.raises(ValidationError):
        tight_cut_index(TightCutReport(cut(cycle(3), {0}), 0, 1, 0, 1, None))


def test_optimal_digon_flow_has_a_tight_cut():
    """At r = 4 the digon is tight around vertex 1; the cut certifies 4."""
    g = digon()
    D, f = nonnegative(Orientation.reference(g), FlowAssignment((1, -1), FlowKind.circular(4)))
    report = find_tight_cut(g, D, f)
    assert report is not None
    assert report.cut.side == frozenset({1})
    assert (report.s1, report.s2, report.t1, report.t2) == (0, 1, 1, 0)
    assert report.implied_r == 4


def test_scaled_flow_has_no_tight_cut():
    g = digon()
    D, f = nonnegative(Orientation.reference(g), FlowAssignment((1, -1), FlowKind.circular(4)))
    assert find_tight_cut(g, D, scale_flow(f, 5)) is None


def test_zero_on_a_negative_edge_is_tight_at_two():
    g = SignedGraph.from_edges(2, [(0, 1, "-")])
    report = find_tight_cut(g, Orientation.reference(g), FlowAssignment((0,), FlowKind.circular(2)))
    assert report is not None
    assert report.implied_r == 2


def test_tight_cut_needs_nonnegative_values():
    g = digon()
    with pytest.raises(ValidationError):
        find_tight_cut(g, Orientation.reference(g), FlowAssignment((1, -1), FlowKind.circular(4)))
