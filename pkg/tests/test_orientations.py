"""Tests for boundary orientations, modulo orientations, Eulerian certificates and transfer."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from signedflow.budget import Outcome
from signedflow.catalog import bond_graph, complete, cycle, digon
from signedflow.exceptions import ValidationError
from signedflow.flows import FlowKind, verify_flow
from signedflow.graph import Orientation, SignedGraph
from signedflow.orientations import (
    BoundaryFunction,
    EulerianCertificate,
    EulerianForm,
    PartitionCertificate,
    convert_eulerian_certificate,
    find_beta_orientation,
    find_eulerian_certificate,
    find_mod_orientation,
    flip_arc,
    flow_orientation_transfer,
    odd_orientation_agrees,
    orientation_to_partition,
    transfer_graph,
    verify_beta_orientation,
    verify_eulerian_certificate,
    verify_mod_orientation,
    verify_partition_certificate,
    zk_avoidance_holds,
    zk_connected,
)
from signedflow.solver import decide_pq_flow

from strategies import signed_graphs


class TestBoundaryFunction:
    def test_residues_must_sum_to_zero(self):
        with pytest.raises(ValidationError):
            BoundaryFunction(4, (1, 2))

    def test_residues_are_reduced(self):
        beta = BoundaryFunction(4, (-2, 6))
        assert beta.residues == (2, 2)
        assert beta.symmetric() == (2, 2)

    def test_eulerian_boundary(self):
        beta = BoundaryFunction.eulerian(digon(), 1)
        assert beta.modulus == 4
        assert beta.residues == (2, 2)

    def test_parity_is_checked_against_degrees(self):
        beta = BoundaryFunction(4, (1, 0, 3))
        assert beta.parity_violation(cycle(3)) == 0
        with pytest.raises(ValidationError):
            beta.check_parity(cycle(3))

    def test_flipping_an_arc_moves_the_boundary(self):
        g = cycle(3)
        D = Orientation.reference(g)
        beta = BoundaryFunction(4, (0, 0, 0))
        D2, beta2 = flip_arc(D, beta, 0)
        assert beta2.residues == (2, 2, 0)
        assert verify_beta_orientation(g, D2, beta2)

    @settings(max_examples=50)
    @given(signed_graphs(), st.sampled_from([4, 6, 8]), st.data())
    def test_random_flips_track_the_boundary(self, g, modulus, data):
        """Flipping arcs one at a time keeps the orientation a beta-orientation of the moved beta."""
        D = Orientation.reference(g)
        beta = BoundaryFunction(modulus, tuple(D.imbalance(g.vertex_count)))
        flips = data.draw(st.lists(st.integers(0, g.m - 1), max_size=6)) if g.m else []
        for e in flips:
            D, beta = flip_arc(D, beta, e)
        assert verify_beta_orientation(g, D, beta)


class TestBetaOrientation:
    def test_zero_boundary_on_triangle_is_a_directed_cycle(self):
        g = cycle(3)
        result = find_beta_orientation(g, BoundaryFunction(4, (0, 0, 0)))
        assert result.found
        assert result.orientation.imbalance(3) == [0, 0, 0]

    def test_source_and_sink(self):
        g = cycle(3)
        beta = BoundaryFunction(4, (2, 2, 0))
        result = find_beta_orientation(g, beta)
        assert result.found
        assert verify_beta_orientation(g, result.orientation, beta)

    def test_unreachable_boundary(self):
        """Every vertex would need out - in = 2 modulo 6, impossible on a triangle."""
        result = find_beta_orientation(cycle(3), BoundaryFunction(6, (2, 2, 2)))
        assert result.outcome is Outcome.NONE

    def test_pre_assigned_arcs_are_kept(self):
        g = cycle(3)
        result = find_beta_orientation(g, BoundaryFunction(4, (0, 0, 0)), partial={0: (1, 0)})
        assert result.found
        assert result.orientation.arcs == ((1, 0), (2, 1), (0, 2))

    def test_pre_assigned_arc_must_match_edge(self):
        with pytest.raises(ValidationError):
            find_beta_orientation(cycle(3), BoundaryFunction(4, (0, 0, 0)), partial={0: (2, 0)})


class TestModOrientation:
    def test_even_modulus_needs_even_degrees(self):
        decision = find_mod_orientation(complete(4), 2)
        assert decision.outcome is Outcome.NONE
        assert "odd degree" in decision.reason

    def test_odd_modulus_needs_positive_inversing_class(self):
        decision = find_mod_orientation(digon(), 3)
        assert decision.outcome is Outcome.NONE

    def test_triangle_has_modulo_three_orientation(self):
        g = cycle(3)
        decision = find_mod_orientation(g, 3)
        assert decision.found
        assert verify_mod_orientation(decision.certificate, g)

    @pytest.mark.parametrize("g, ell", [(cycle(3), 3), (bond_graph(4, 4), 2), (bond_graph(6, 6), 3), (cycle(4, [0, 1]), 2)])
    def test_partition_from_orientation(self, g, ell):
        """The constructed partition has ell parts and passes its own check."""
        decision = find_mod_orientation(g, ell)
        assert decision.found
        partition = orientation_to_partition(decision.certificate, g)
        assert partition.ell == ell
        assert verify_partition_certificate(partition, g)

    def test_unbalanced_partition_is_rejected(self):
        g = cycle(3)
        check = verify_partition_certificate(PartitionCertificate(Orientation.reference(g), ((0, 1), (2,))), g)
        assert not check
        assert check.part == 0
        assert check.vertex == 0

    def test_partition_must_cover_edges(self):
        g = cycle(3)
        with pytest.raises(ValidationError):
            verify_partition_certificate(PartitionCertificate(Orientation.reference(g), ((0,), (1,))), g)

    def test_odd_orientation_matches_flow_on_triangle(self):
        assert odd_orientation_agrees(cycle(3), 1) is True


class TestEulerian:
    @pytest.mark.parametrize("g", [cycle(3), digon(), bond_graph(4, 2)])
    def test_forms_convert_into_each_other(self, g):
        """Every found form converts to each of the other three, and each result verifies."""
        for form in EulerianForm:
            decision = find_eulerian_certificate(g, form, 1)
            assert decision.outcome is Outcome.FOUND
            for target in EulerianForm:
                converted = convert_eulerian_certificate(decision.certificate, target, g)
                assert converted.form is target
                assert verify_eulerian_certificate(converted, g)

    def test_flow_to_special_on_digon(self):
        g = digon()
        flow = EulerianCertificate(EulerianForm.FLOW_4K, 1, Orientation.reference(g), (1, -1))
        special = convert_eulerian_certificate(flow, EulerianForm.SPECIAL_MOD_FLOW, g)
        assert special.values == (1, -1)

    def test_non_eulerian_graph_is_rejected(self):
        with pytest.raises(ValidationError):
            find_eulerian_certificate(complete(4), EulerianForm.FLOW_4K, 1)

    def test_invalid_input_certificate_is_rejected(self):
        g = digon()
        bad = EulerianCertificate(EulerianForm.FLOW_4K, 1, Orientation.reference(g), (1, 1))
        with pytest.raises(ValidationError):
            convert_eulerian_certificate(bad, EulerianForm.BOUNDARY_ORIENTATION, g)


class TestTransfer:
    def test_transfer_graph_shape(self):
        transfer = transfer_graph(cycle(3, [0]), 3, 1)
        assert transfer.multiplicity == 4
        assert transfer.host.m == 12
        assert transfer.host.negative_edges == ()
        assert transfer.beta.modulus == 12
        assert transfer.beta.residues == (6, 6, 0)

    @pytest.mark.parametrize("g, p, q", [(cycle(3), 2, 1), (digon(), 2, 1), (cycle(3, [0]), 3, 1)])
    def test_flow_and_orientation_round_trip(self, g, p, q):
        decision = decide_pq_flow(g, 2 * p, q)
        assert decision.found
        transfer = transfer_graph(g, p, q)
        orientation = flow_orientation_transfer(g, p, q, flow=decision.witness)
        assert verify_beta_orientation(transfer.host, orientation, transfer.beta)
        D, flow = flow_orientation_transfer(g, p, q, orientation=orientation)
        assert flow.kind == FlowKind.pq(2 * p, q)
        assert verify_flow(g, D, flow)

    def test_exactly_one_input(self):
        with pytest.raises(ValidationError):
            flow_orientation_transfer(cycle(3), 2, 1)


class TestGroupConnectivity:
    def test_triple_bond_is_z3_connected(self):
        assert zk_connected(bond_graph(3, 3), 3) is True

    def test_single_edge_is_not_z2_connected(self):
        assert zk_connected(SignedGraph.from_edges(2, [(0, 1, "+")]), 2) is False

    def test_avoidance(self):
        assert zk_avoidance_holds(bond_graph(3, 3), 3) is True
        assert zk_avoidance_holds(SignedGraph.from_edges(2, [(0, 1, "+")]), 2) is False
