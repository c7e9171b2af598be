"""Tests for the suite registry and small runs of the verification suites."""

import pytest

from signedflow.catalog import bond_graph
from signedflow.exceptions import ValidationError
from signedflow.graph import count_inversing_classes
from signedflow.schemas import CaseOutcome
from signedflow.suites import (
    BaseSuite,
    ConnectivitySuite,
    EquivalencesSuite,
    EulerianSuite,
    HoffmanSuite,
    SuiteBounds,
    SuiteMetadata,
    SuiteRegistry,
    TransferSuite,
    default_searches,
    default_suites,
)


class EchoSuite(BaseSuite):
    """Suite yielding one case per sample, failing the last one when asked."""

    def __init__(self, fail_last=False):
        self.fail_last = fail_last
        super().__init__()

    def _get_metadata(self):
        return SuiteMetadata(name="echo", description="Echo suite", tags=["test"])

    def cases(self, bounds):
        for i in range(bounds.samples):
            failing = self.fail_last and i == bounds.samples - 1
            yield CaseOutcome(name=f"case{i}", outcome="fail" if failing else "pass")


def test_registry_register_and_get():
    registry = SuiteRegistry()
    suite = EchoSuite()
    registry.register(suite)
    assert registry.get("echo") is suite
    assert registry.names() == ["echo"]
    assert registry.list_entries()[0].description == "Echo suite"


def test_registry_rejects_duplicates_and_unknown_names():
    registry = SuiteRegistry()
    registry.register(EchoSuite())
    with pytest.raises(ValidationError):
        registry.register(EchoSuite())
    registry.unregister("echo")
    with pytest.raises(ValidationError):
        registry.get("echo")
    with pytest.raises(ValidationError):
        registry.unregister("echo")


def test_default_registries():
    assert set(default_suites().names()) == {
        "equivalences",
        "eulerian",
        "connectivity",
        "duality",
        "folding",
        "tightcuts",
        "hoffman",
        "transfer",
        "doubling",
    }
    assert default_searches().names() == ["phi-gt-5-3ec", "phi-eq-4-4ec"]


def test_suite_report_collects_cases():
    report = EchoSuite(fail_last=True)(SuiteBounds(samples=3))
    assert report.suite == "echo"
    assert report.counts() == {"pass": 2, "fail": 1}
    assert not report.passed
    assert EchoSuite()(SuiteBounds(samples=2)).passed


def test_suite_bounds_are_validated():
    with pytest.raises(ValueError):
        SuiteBounds(max_p=1)


@pytest.mark.parametrize(
    "suite, bounds",
    [
        (EquivalencesSuite(), SuiteBounds(max_vertices=3, max_edges=3, max_p=6)),
        (EulerianSuite(), SuiteBounds(max_vertices=3, max_edges=4)),
        (ConnectivitySuite(), SuiteBounds(max_vertices=3, max_edges=4)),
        (HoffmanSuite(), SuiteBounds(max_vertices=5, max_edges=7, samples=20, seed=1)),
        (TransferSuite(), SuiteBounds(max_vertices=3, max_edges=4, samples=10, seed=2)),
    ],
)
def test_small_suite_runs_pass(suite, bounds):
    report = suite(bounds)
    assert report.cases
    assert report.passed, [case.detail for case in report.cases if case.outcome == "fail"]
    assert not report.has_unknown


def test_corpus_visits_every_inversing_class():
    """Each connected graph contributes 2^(n-1) signatures, negative bridges included."""
    report = EquivalencesSuite()(SuiteBounds(max_vertices=3, max_edges=3, max_p=4))
    # three graphs on 2 vertices, three on 3
    assert len(report.cases) == 3 * 2 + 3 * 4
    assert report.passed


def test_search_examines_every_inversing_class():
    report = default_searches().get("phi-gt-5-3ec")(max_vertices=3, max_edges=4)
    assert report.graphs_examined == 2
    assert report.signatures_examined == sum(
        count_inversing_classes(g) for g in (bond_graph(3, 3), bond_graph(4, 4))
    )
    assert report.findings == []


def test_eulerian_defaults_reach_eight_vertices():
    bounds = EulerianSuite().default_bounds()
    assert (bounds.max_vertices, bounds.max_edges) == (8, 8)
