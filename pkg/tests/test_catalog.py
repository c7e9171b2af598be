"""Tests for the graph catalog, isomorphism and enumeration helpers."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from signedflow.catalog import (
    bond_graph,
    canonical_form,
    complete,
    cycle,
    enumerate_eulerian_multigraphs,
    enumerate_multigraphs,
    is_isomorphic,
    negative_cycle,
    petersen,
    random_signed_graph,
    spanning_tree_packing,
    switching_class_representatives,
    theta,
    theta_embedding,
    wheel,
    wheel_embedding,
)
from signedflow.exceptions import GuardError, ValidationError
from signedflow.graph import NEGATIVE, POSITIVE, is_switching_equivalent
from signedflow.planar import validate_embedding

from strategies import signed_graphs


def test_named_graph_shapes():
    assert (petersen().vertex_count, petersen().m) == (10, 15)
    assert (theta((1, 2, 2)).vertex_count, theta((1, 2, 2)).m) == (4, 5)
    assert (wheel(4).vertex_count, wheel(4).m) == (5, 8)
    assert negative_cycle(3).negative_edges == (2,)
    assert bond_graph(3, 1).signs == (POSITIVE, NEGATIVE, NEGATIVE)


def test_bad_parameters_are_rejected():
    with pytest.raises(ValidationError):
        cycle(1)
    with pytest.raises(ValidationError):
        cycle(3, [5])
    with pytest.raises(ValidationError):
        theta((1,))


def test_catalog_embeddings_are_valid():
    validate_embedding(wheel(4), wheel_embedding(4))
    validate_embedding(theta((1, 2, 2)), theta_embedding((1, 2, 2)))


def test_isomorphism_respects_signs():
    assert is_isomorphic(cycle(3, [0]), cycle(3, [2]))
    assert not is_isomorphic(cycle(3, [0]), cycle(3))


@settings(max_examples=50)
@given(signed_graphs(max_vertices=5, max_edges=6), st.randoms(use_true_random=False))
def test_canonical_form_ignores_labels(g, rng):
    permutation = list(range(g.vertex_count))
    rng.shuffle(permutation)
    assert canonical_form(g.relabeled(permutation)) == canonical_form(g)


def test_enumeration_is_up_to_isomorphism():
    """Three vertices and at most three edges: the path, the triangle and the doubled path."""
    assert len(list(enumerate_multigraphs(3, 3))) == 3
    assert [g.m for g in enumerate_multigraphs(2, 3)] == [1, 2, 3]
    assert len(list(enumerate_multigraphs(2, 3, max_multiplicity=2))) == 2


def test_enumeration_guard():
    with pytest.raises(GuardError):
        list(enumerate_multigraphs(3, 3, limit=10))


def test_eulerian_enumeration():
    """Digon, triangle, then 4K_2, the doubled path and C_4."""
    graphs = list(enumerate_eulerian_multigraphs(4))
    assert [g.m for g in graphs] == [2, 3, 4, 4, 4]
    assert all(g.is_even() and g.is_connected() for g in graphs)
    assert sorted(g.vertex_count for g in graphs if g.m == 4) == [2, 3, 4]
    assert len(list(enumerate_eulerian_multigraphs(4, max_vertices=3))) == 4


def test_eulerian_enumeration_reaches_long_cycles():
    graphs = list(enumerate_eulerian_multigraphs(8, min_edges=6))
    assert any(is_isomorphic(g, cycle(8)) for g in graphs)
    assert any(g.vertex_count == 5 and g.m == 6 for g in graphs)
    assert len({canonical_form(g) for g in graphs}) == len(graphs)


def test_switching_representatives():
    reps = list(switching_class_representatives(complete(4)))
    assert len(reps) == 8
    for i, a in enumerate(reps):
        assert not any(is_switching_equivalent(a, b) for b in reps[i + 1:])


def test_spanning_tree_packing():
    assert spanning_tree_packing(complete(4)) == 2
    assert spanning_tree_packing(bond_graph(3, 3)) == 3
    assert spanning_tree_packing(cycle(4)) == 1
    with pytest.raises(GuardError):
        spanning_tree_packing(petersen(), vertex_limit=5)


def test_random_graphs_are_reproducible():
    a = random_signed_graph(random.Random(7), 5, 8)
    b = random_signed_graph(random.Random(7), 5, 8)
    assert a == b
    assert a.m == 8
