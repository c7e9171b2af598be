"""Tests for signed graphs, switching and inversing."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from signedflow.catalog import bond_graph, complete, cycle, digon
from signedflow.exceptions import GraphMismatchError, ValidationError
from signedflow.graph import (
    NEGATIVE,
    POSITIVE,
    UNBOUNDED,
    Edge,
    Orientation,
    SignedGraph,
    closing_order,
    count_inversing_classes,
    cut,
    cut_type_minima,
    edge_connectivity,
    fundamental_cycles,
    inversing_class_representatives,
    invert_on,
    is_inversing_equivalent,
    is_switching_equivalent,
    multiply_edges,
    negative_cut_vertices,
    normalize_to_tree,
    parse_sign,
    positive_bridges,
    spanning_forest,
    switch,
    switching_witness,
    t2_construction,
)

from strategies import signed_graphs


def test_from_edges_parses_signs():
    """Sign tokens map onto +1 and -1 in file order."""
    g = SignedGraph.from_edges(3, [(0, 1, "+"), (1, 2, "-"), (2, 0, "−")])
    assert g.signs == (POSITIVE, NEGATIVE, NEGATIVE)
    assert g.positive_edges == (0,)
    assert g.negative_edges == (1, 2)
    assert g.negative_degree(2) == 2


def test_parse_sign_rejects_unknown_tokens():
    with pytest.raises(ValidationError):
        parse_sign("0")


def test_loops_are_rejected():
    """A loop names the offending edge and vertex."""
    with pytest.raises(ValidationError) as info:
        SignedGraph.from_edges(2, [(0, 1, "+"), (1, 1, "-")])
    assert info.value.edge == 1
    assert info.value.vertex == 1


def test_vertex_out_of_range_is_rejected():
    with pytest.raises(ValidationError):
        SignedGraph.from_edges(2, [(0, 2, "+")])


def test_edge_ids_must_be_dense():
    with pytest.raises(ValidationError):
        SignedGraph(2, (Edge(1, 0, 1, POSITIVE),))


def test_parallel_edges_stay_distinct():
    """Multiplicity survives in the simple-graph view."""
    g = bond_graph(3, 2)
    assert g.m == 3
    assert g.to_simple_graph()[0][1]["multiplicity"] == 3
    assert g.to_multigraph().number_of_edges() == 3
    assert g.degree(0) == 3


def test_negated_flips_every_sign():
    g = digon()
    assert g.negated().signs == (NEGATIVE, POSITIVE)
    assert g.all_positive().negative_edges == ()


@given(signed_graphs(), st.data())
def test_switching_twice_is_identity(g, data):
    """Switching is an involution and keeps the switching class."""
    S = data.draw(st.sets(st.integers(0, g.vertex_count - 1)))
    switched = switch(g, S)
    assert switch(switched, S) == g
    assert is_switching_equivalent(g, switched)


@given(signed_graphs(), st.data())
def test_switching_witness_reproduces_target(g, data):
    S = data.draw(st.sets(st.integers(0, g.vertex_count - 1)))
    target = switch(g, S)
    witness = switching_witness(g, target)
    assert witness is not None
    assert switch(g, witness) == target


def test_switching_distinguishes_cycle_signs():
    """A balanced and an unbalanced triangle are not switching equivalent."""
    assert not is_switching_equivalent(cycle(3), cycle(3, [0]))
    assert switching_witness(cycle(3), cycle(3, [0])) is None


def test_mismatched_graphs_are_refused():
    with pytest.raises(GraphMismatchError):
        is_switching_equivalent(cycle(3), cycle(4))


def test_invert_on_cycle_keeps_inversing_class():
    """Flipping an even subgraph leaves the odd negative-degree set alone."""
    g = complete(4, [0])
    inverted = invert_on(g, [0, 3, 1])
    assert inverted.sign(0) == POSITIVE
    assert is_inversing_equivalent(g, inverted)


def test_invert_on_rejects_odd_edge_sets():
    with pytest.raises(ValidationError) as info:
        invert_on(cycle(4), [0])
    assert info.value.vertex == 0


def test_negative_cut_vertices_of_digon():
    assert negative_cut_vertices(digon()) == frozenset({0, 1})
    assert negative_cut_vertices(cycle(3)) == frozenset()


@given(signed_graphs(max_vertices=5, max_edges=6))
def test_inversing_representatives_match_count(g):
    """One representative per class, each with a distinct odd negative-degree set."""
    representatives = list(inversing_class_representatives(g))
    assert len(representatives) == count_inversing_classes(g)
    assert len({negative_cut_vertices(r) for r in representatives}) == len(representatives)


def test_count_inversing_classes_of_complete_graph():
    assert count_inversing_classes(complete(4)) == 8


@given(signed_graphs(connected=True))
def test_normalize_to_tree_moves_negatives_into_tree(g):
    tree = spanning_forest(g)
    normalized = normalize_to_tree(g, tree)
    assert set(normalized.negative_edges) <= set(tree)
    assert is_inversing_equivalent(normalized, g)


def test_normalize_to_tree_rejects_non_trees():
    with pytest.raises(ValidationError):
        normalize_to_tree(cycle(3), [0])


@given(signed_graphs())
def test_fundamental_cycles_are_closed_walks(g):
    """Each walk returns to its start and there is one per non-forest edge."""
    cycles = fundamental_cycles(g)
    assert len(cycles) == g.m - len(spanning_forest(g))
    for walk in cycles:
        start = g.edges[walk[0][0]].u
        v = start
        for e, direction in walk:
            edge = g.edges[e]
            if direction == 1:
                assert v == edge.u
                v = edge.w
            else:
                assert v == edge.w
                v = edge.u
        assert v == start


@given(signed_graphs())
def test_closing_order_is_a_permutation(g):
    assert sorted(closing_order(g)) == list(range(g.m))


def test_orientation_imbalance_sums_to_zero():
    g = complete(4)
    D = Orientation.from_choices(g, [1, 4])
    D.check(g)
    assert sum(D.imbalance(g.vertex_count)) == 0
    assert not D.agrees_with(g, 1)
    assert D.flipped(1).agrees_with(g, 1)


def test_orientation_check_rejects_wrong_arcs():
    g = cycle(3)
    with pytest.raises(ValidationError):
        Orientation(((0, 1), (1, 2), (1, 0))).check(g)
    with pytest.raises(ValidationError):
        Orientation(((0, 1),)).check(g)


def test_cut_edges_and_sign():
    g = cycle(4, [0])
    c = cut(g, {0})
    assert c.edge_ids == (0, 3)
    assert c.sign(g) == NEGATIVE
    with pytest.raises(ValidationError):
        cut(g, range(4))


def test_cut_type_minima_of_digon():
    """The only cut of a +/- digon is negative and even."""
    profile = cut_type_minima(digon())
    assert profile.c10 == 2
    assert profile.c01 is UNBOUNDED
    assert profile.c11 is UNBOUNDED
    assert profile.c00 == 0


def test_edge_connectivity():
    assert edge_connectivity(cycle(4)) == 2
    assert edge_connectivity(complete(4)) == 3
    assert edge_connectivity(bond_graph(4, 4)) == 4
    assert edge_connectivity(SignedGraph.from_edges(3, [(0, 1, "+")])) == 0


def test_positive_bridges_ignore_negative_and_parallel_edges():
    path = SignedGraph.from_edges(3, [(0, 1, "+"), (1, 2, "-")])
    assert positive_bridges(path) == (0,)
    assert positive_bridges(digon()) == ()


def test_t2_construction_layout():
    """Edge 2e is the negative half next to the first endpoint."""
    g = t2_construction(cycle(3))
    assert g.vertex_count == 6
    assert g.m == 6
    assert g.edges[0] == Edge(0, 0, 3, NEGATIVE)
    assert g.edges[1] == Edge(1, 3, 1, POSITIVE)
    with pytest.raises(ValidationError):
        t2_construction(digon())


def test_multiply_edges_records_provenance():
    g, provenance = multiply_edges(cycle(3, [1]), 2)
    assert g.m == 6
    assert provenance[:3] == ((0, 0), (0, 1), (1, 0))
    assert g.signs == (POSITIVE, POSITIVE, NEGATIVE, NEGATIVE, POSITIVE, POSITIVE)
