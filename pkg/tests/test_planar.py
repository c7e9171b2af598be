"""Tests for plane embeddings, duals, negative girth, homomorphisms and folding."""

import pytest

from signedflow.budget import Outcome
from signedflow.catalog import (
    cycle,
    cycle_embedding,
    digon,
    is_isomorphic,
    theta,
    theta_embedding,
    wheel,
    wheel_embedding,
)
from signedflow.exceptions import ValidationError
from signedflow.graph import NEGATIVE, UNBOUNDED, SignedGraph, t2_construction
from signedflow.planar import (
    PlaneEmbedding,
    check_duality,
    dual,
    fold_once,
    fold_to_saturation,
    hom_partition,
    hom_to_negative_cycle,
    is_saturated,
    negative_cycle_target,
    negative_girth,
    subdivide_embedding,
    validate_embedding,
    verify_hom_partition,
    verify_homomorphism,
    winding_numbers,
)
from signedflow.suites import folding_example


def test_cycle_embedding_is_valid():
    g = cycle(3, [0])
    emb = cycle_embedding(3)
    validate_embedding(g, emb)
    assert emb.face_count == 2
    assert emb.face_vertices(g, 0) == [0, 1, 2]
    assert emb.face_sign(g, 0) == NEGATIVE


def test_missing_face_is_rejected():
    emb = PlaneEmbedding((cycle_embedding(3).faces[0],))
    with pytest.raises(ValidationError):
        validate_embedding(cycle(3), emb)


def test_dual_of_triangle_is_triple_bond():
    g = cycle(3, [1])
    d, d_emb = dual(g, cycle_embedding(3))
    assert d.vertex_count == 2
    assert [(e.u, e.w) for e in d.edges] == [(0, 1)] * 3
    assert d.signs == g.signs
    validate_embedding(d, d_emb)
    assert d_emb.face_count == 3


@pytest.mark.parametrize(
    "g, emb",
    [
        (cycle(4, [1]), cycle_embedding(4)),
        (theta([1, 2, 3], [0, 4]), theta_embedding([1, 2, 3])),
        (wheel(4, [0, 5]), wheel_embedding(4)),
    ],
)
def test_dual_of_dual_is_the_original(g, emb):
    d, d_emb = dual(g, emb)
    dd, _ = dual(d, d_emb)
    assert is_isomorphic(dd, g)
    assert dd.signs == g.signs


def test_dual_of_bridge_is_refused():
    g = SignedGraph.from_edges(2, [(0, 1, "+")])
    emb = PlaneEmbedding((((0, False), (0, True)),))
    with pytest.raises(ValidationError):
        dual(g, emb)


@pytest.mark.parametrize("g, n, value", [(cycle(2, [1]), 2, 4), (cycle(3), 3, 2)])
def test_duality_holds_on_cycles(g, n, value):
    """Flow index of the cycle equals the circular chromatic number of its dual."""
    result = check_duality(g, cycle_embedding(n))
    assert result.holds is True
    assert result.flow_index == value
    assert result.chromatic_number == value


def test_subdivided_embedding_is_valid():
    g = cycle(3)
    validate_embedding(t2_construction(g), subdivide_embedding(g, cycle_embedding(3)))


def test_negative_girth():
    assert negative_girth(cycle(4, [0])) == 4
    assert negative_girth(digon()) == 2
    assert negative_girth(cycle(4)) is UNBOUNDED
    assert negative_girth(folding_example()[0]) == 4


def test_negative_cycle_target():
    target = negative_cycle_target(3)
    assert target.negative_edges == (2,)
    assert negative_cycle_target(3, negated=True).negative_edges == (0, 1)
    with pytest.raises(ValidationError):
        negative_cycle_target(1)


def test_hom_of_negative_four_cycle():
    g = cycle(4, [0])
    for k in (2, 4):
        decision = hom_to_negative_cycle(g, k)
        assert decision.found
        assert verify_homomorphism(g, decision.mapping)
    assert hom_to_negative_cycle(g, 2, negated=True).found


def test_odd_cycle_has_no_map_to_a_digon():
    assert hom_to_negative_cycle(cycle(3), 2).outcome is Outcome.NONE


def test_hom_partition_is_balanced():
    """Preimages of the target edges partition E with equal winding on every cycle."""
    g = cycle(4, [0])
    mapping = hom_to_negative_cycle(g, 2).mapping
    parts, D = hom_partition(g, mapping)
    assert len(parts) == 2
    assert sorted(e for part in parts for e in part) == [0, 1, 2, 3]
    assert verify_hom_partition(g, parts, D)
    assert len(winding_numbers(g, mapping)) == 1


def test_fold_once_identifies_outer_face_vertices():
    g, emb = folding_example()
    assert not is_saturated(g, emb)
    result = fold_once(g, emb)
    assert result.vertex_map == (0, 1, 0, 2, 3)
    assert result.graph == SignedGraph.from_edges(4, [(0, 1, "-"), (0, 2, "+"), (1, 3, "+"), (3, 2, "+")])
    validate_embedding(result.graph, result.embedding)
    assert is_saturated(result.graph, result.embedding)


def test_fold_to_saturation_keeps_negative_girth():
    g, emb = folding_example()
    result = fold_to_saturation(g, emb)
    assert result.graph.vertex_count == 4
    assert negative_girth(result.graph) == 4
    assert is_saturated(result.graph, result.embedding)


def test_saturated_graph_cannot_fold():
    with pytest.raises(ValidationError):
        fold_once(cycle(4, [0]), cycle_embedding(4))


def test_folding_needs_bipartite_graph_with_negative_cycle():
    with pytest.raises(ValidationError):
        fold_once(cycle(3, [0]), cycle_embedding(3))
    with pytest.raises(ValidationError):
        fold_once(cycle(4), cycle_embedding(4))
