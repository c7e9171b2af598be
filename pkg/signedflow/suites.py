"""
Registries of verification suites and counterexample searches.

A suite replays one family of results on a generated or fixed corpus and
reports one ``CaseOutcome`` per instance. A search enumerates signed
multigraphs within explicit bounds and reports every instance that hits
its target. Absence of findings only ever means "none within bounds".
"""

import logging
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Tuple, Union

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field

from .budget import Outcome, SearchBudget
from .catalog import (
    cycle,
    cycle_embedding,
    enumerate_eulerian_multigraphs,
    enumerate_multigraphs,
    petersen,
    random_signed_graph,
    spanning_tree_packing,
    theta,
    theta_embedding,
    wheel,
    wheel_embedding,
)
from .exceptions import ContractViolation, ValidationError
from .flows import (
    NegativePartition,
    find_tight_cut,
    hoffman_feasible,
    hoffman_feasible_by_cuts,
    nonnegative,
    pq_to_circular,
    scale_flow,
    verify_flow,
)
from .formats import format_embedding, format_signed_graph
from .graph import (
    UNBOUNDED,
    Orientation,
    SignedGraph,
    edge_connectivity,
    inversing_class_representatives,
    switch,
    t2_construction,
)
from .orientations import (
    EulerianForm,
    convert_eulerian_certificate,
    find_beta_orientation,
    find_eulerian_certificate,
    flow_orientation_transfer,
    transfer_graph,
    verify_beta_orientation,
)
from .planar import (
    PlaneEmbedding,
    check_duality,
    fold_to_saturation,
    hom_to_negative_cycle,
    negative_girth,
    subdivide_embedding,
    validate_embedding,
)
from .schemas import CaseOutcome, SearchReport, SuiteReport
from .solver import IndexStatus, circular_flow_index, decide_pq_flow, index_candidates, notions_agree, oracle_pq_flow

logger = logging.getLogger(__name__)


class SuiteBounds(BaseModel):
    """Size bounds and budgets for one suite run."""

    model_config = ConfigDict(frozen=True)

    max_vertices: int = Field(default=4, ge=0)
    max_edges: int = Field(default=8, ge=0)
    max_p: int = Field(default=12, ge=2)
    samples: int = Field(default=200, ge=0)
    seed: int = 0
    node_limit: Optional[int] = Field(default=None, gt=0)
    time_limit: Optional[float] = Field(default=None, gt=0)
    stretch: bool = False

    def budget(self) -> SearchBudget:
        base = SearchBudget.from_settings()
        update = {}
        if self.node_limit is not None:
            update["node_limit"] = self.node_limit
        if self.time_limit is not None:
            update["time_limit"] = self.time_limit
        return base.model_copy(update=update) if update else base


@dataclass
class SuiteMetadata:
    """Metadata for a suite or search."""
    name: str
    description: str
    tags: List[str] = field(default_factory=list)


def _pass(name: str, detail: str = "") -> CaseOutcome:
    return CaseOutcome(name=name, outcome="pass", detail=detail)


def _fail(name: str, detail: str, g: Optional[SignedGraph] = None, emb: Optional[PlaneEmbedding] = None) -> CaseOutcome:
    instance = None
    if g is not None:
        instance = format_signed_graph(g) + (format_embedding(emb) if emb is not None else "")
    return CaseOutcome(name=name, outcome="fail", detail=detail, instance=instance)


def _unknown(name: str, detail: str = "budget exhausted") -> CaseOutcome:
    return CaseOutcome(name=name, outcome="unknown", detail=detail)


def _signed_corpus(bounds: SuiteBounds, min_vertices: int = 2) -> Iterator[Tuple[str, SignedGraph]]:
    """Connected multigraphs within the bounds, one signature per inversing class."""
    for n in range(min_vertices, bounds.max_vertices + 1):
        for index, g in enumerate(enumerate_multigraphs(n, bounds.max_edges, min_edges=1)):
            for s, signed in enumerate(inversing_class_representatives(g)):
                yield f"{n}v{g.m}e#{index}.{s}", signed


class BaseSuite(ABC):
    """Base class for all suites."""

    def __init__(self):
        self.metadata = self._get_metadata()

    @abstractmethod
    def _get_metadata(self) -> SuiteMetadata:
        pass

    def default_bounds(self) -> SuiteBounds:
        return SuiteBounds()

    @abstractmethod
    def cases(self, bounds: SuiteBounds) -> Iterator[CaseOutcome]:
        pass

    def __call__(self, bounds: Optional[SuiteBounds] = None) -> SuiteReport:
        bounds = bounds or self.default_bounds()
        report = SuiteReport(suite=self.metadata.name)
        for case in self.cases(bounds):
            if case.outcome == "fail":
                logger.warning("%s/%s failed: %s", self.metadata.name, case.name, case.detail)
            else:
                logger.info("%s/%s: %s", self.metadata.name, case.name, case.outcome)
            report.cases.append(case)
        return report


class EquivalencesSuite(BaseSuite):
    """The backtracking decider, the modular oracle and all four notions agree."""

    def _get_metadata(self) -> SuiteMetadata:
        return SuiteMetadata(
            name="equivalences",
            description="decide_pq_flow agrees with the exhaustive oracle and the four flow notions agree",
            tags=["flows", "oracle"],
        )

    def default_bounds(self) -> SuiteBounds:
        return SuiteBounds(max_vertices=5, max_edges=6, max_p=12)

    def cases(self, bounds: SuiteBounds) -> Iterator[CaseOutcome]:
        budget = bounds.budget()
        candidates = [c for c in index_candidates(bounds.max_p) if c.p <= bounds.max_p]
        for name, g in _signed_corpus(bounds):
            yield self._check(name, g, candidates, budget, bounds.max_edges)

    def _check(self, name, g, candidates, budget, edge_limit) -> CaseOutcome:
        undecided = False
        for c in candidates:
            decision = decide_pq_flow(g, c.p, c.q, budget)
            if decision.outcome is Outcome.UNKNOWN:
                undecided = True
                continue
            oracle = oracle_pq_flow(g, c.p, c.q, edge_limit=edge_limit)
            if decision.found != (oracle is not None):
                return _fail(name, f"decider and oracle disagree at {c.p}/{c.q}", g)
            outcomes = set(notions_agree(g, c.p, c.q, budget).values())
            outcomes.discard(Outcome.UNKNOWN)
            if len(outcomes) > 1:
                return _fail(name, f"flow notions disagree at {c.p}/{c.q}", g)
        return _unknown(name) if undecided else _pass(name)


class EulerianSuite(BaseSuite):
    """The four Eulerian forms at 4k/(2k-1) stand or fall together and convert into each other."""

    def _get_metadata(self) -> SuiteMetadata:
        return SuiteMetadata(
            name="eulerian",
            description="four equivalent certificates on signed Eulerian graphs for k = 1, 2",
            tags=["orientations", "eulerian"],
        )

    def default_bounds(self) -> SuiteBounds:
        return SuiteBounds(max_vertices=8, max_edges=8)

    def cases(self, bounds: SuiteBounds) -> Iterator[CaseOutcome]:
        budget = bounds.budget()
        graphs = enumerate_eulerian_multigraphs(bounds.max_edges, max_vertices=bounds.max_vertices)
        for index, g in enumerate(graphs):
            for s, signed in enumerate(inversing_class_representatives(g)):
                for k in (1, 2):
                    yield self._check(f"{g.vertex_count}v{g.m}e#{index}.{s}/k={k}", signed, k, budget)

    def _check(self, name: str, g: SignedGraph, k: int, budget: SearchBudget) -> CaseOutcome:
        decisions = {form: find_eulerian_certificate(g, form, k, budget) for form in EulerianForm}
        outcomes = {d.outcome for d in decisions.values()}
        if Outcome.UNKNOWN in outcomes:
            outcomes.discard(Outcome.UNKNOWN)
            if len(outcomes) > 1:
                return _fail(name, "forms disagree", g)
            return _unknown(name)
        if len(outcomes) > 1:
            found = sorted(f.value for f, d in decisions.items() if d.outcome is Outcome.FOUND)
            return _fail(name, f"only {', '.join(found)} satisfiable", g)
        if Outcome.NONE in outcomes:
            return _pass(name, "no form satisfiable")
        try:
            for form, decision in decisions.items():
                for target in EulerianForm:
                    if target is not form:
                        convert_eulerian_certificate(decision.certificate, target, g)
        except ContractViolation as exc:
            return _fail(name, str(exc), g)
        return _pass(name, "all forms satisfiable and convertible")


class ConnectivitySuite(BaseSuite):
    """Flow index bounds for 2-, 3- and 4-edge-connected graphs and three disjoint spanning trees."""

    # (predicate name, threshold, strict)
    _ROWS: Tuple[Tuple[str, Fraction, bool], ...] = (
        ("2-edge-connected", Fraction(12), False),
        ("3-edge-connected", Fraction(6), False),
        ("4-edge-connected", Fraction(4), False),
        ("3 disjoint spanning trees", Fraction(4), True),
    )

    def _get_metadata(self) -> SuiteMetadata:
        return SuiteMetadata(
            name="connectivity",
            description="edge connectivity and tree packing bound the circular flow index",
            tags=["connectivity", "index"],
        )

    def default_bounds(self) -> SuiteBounds:
        return SuiteBounds(max_vertices=4, max_edges=8)

    def cases(self, bounds: SuiteBounds) -> Iterator[CaseOutcome]:
        budget = bounds.budget()
        for n in range(2, bounds.max_vertices + 1):
            for index, g in enumerate(enumerate_multigraphs(n, bounds.max_edges, min_edges=2)):
                connectivity = edge_connectivity(g)
                if connectivity < 2:
                    continue
                trees = spanning_tree_packing(g)
                rows = [
                    row
                    for row, applies in zip(
                        self._ROWS, (True, connectivity >= 3, connectivity >= 4, trees >= 3)
                    )
                    if applies
                ]
                for s, signed in enumerate(inversing_class_representatives(g)):
                    yield self._check(f"{n}v{g.m}e#{index}.{s}", signed, rows, budget)

    def _check(self, name, g, rows, budget) -> CaseOutcome:
        result = circular_flow_index(g, budget)
        if result.status is IndexStatus.INFEASIBLE:
            return _fail(name, f"bridgeless graph reported infeasible: {result.reason}", g)
        bound = result.value if result.status is IndexStatus.EXACT else result.upper_bound
        for row, threshold, strict in rows:
            if bound is not None and (bound < threshold or (bound == threshold and not strict)):
                continue
            if result.status is IndexStatus.EXACT:
                return _fail(name, f"{row} but index {result.value}", g)
            return _unknown(name, f"{row}: index undecided, best bound {bound}")
        return _pass(name, f"index {bound}")


def _planar_corpus() -> List[Tuple[str, SignedGraph, PlaneEmbedding]]:
    corpus = []
    for negative in ((), (1,), (0, 1)):
        corpus.append((f"digon-{len(negative)}neg", cycle(2, negative), cycle_embedding(2)))
    for lengths, negative in (((1, 1, 1), (0,)), ((1, 1, 1), (0, 1, 2)), ((1, 2, 2), (1,)), ((2, 2, 2), (0, 2))):
        name = "theta-" + "".join(map(str, lengths)) + "-" + "".join(map(str, negative))
        corpus.append((name, theta(lengths, negative), theta_embedding(lengths)))
    for n, negative in ((3, ()), (3, (0,)), (4, (0, 4))):
        corpus.append((f"wheel{n}-{len(negative)}neg", wheel(n, negative), wheel_embedding(n)))
    k4 = wheel(3)
    corpus.append(("T2(K4)", t2_construction(k4), subdivide_embedding(k4, wheel_embedding(3))))
    return corpus


class DualitySuite(BaseSuite):
    """Flow index of a plane graph equals the circular chromatic number of its dual."""

    def _get_metadata(self) -> SuiteMetadata:
        return SuiteMetadata(name="duality", description="index(G) == chromatic(G*) on plane graphs", tags=["planar"])

    def cases(self, bounds: SuiteBounds) -> Iterator[CaseOutcome]:
        budget = bounds.budget()
        for name, g, emb in _planar_corpus():
            if g.vertex_count > max(bounds.max_vertices, 10) or g.m > max(bounds.max_edges, 12):
                yield CaseOutcome(name=name, outcome="skipped", detail="outside bounds")
                continue
            result = check_duality(g, emb, budget)
            if result.holds is None:
                yield _unknown(name)
            elif result.holds:
                yield _pass(name, f"both {result.flow_index}")
            else:
                yield _fail(name, f"index {result.flow_index}, dual chromatic {result.chromatic_number}", g, emb)


def folding_example() -> Tuple[SignedGraph, PlaneEmbedding]:
    """A square and a hexagon sharing two edges; its outer face folds once."""
    g = SignedGraph.from_edges(5, [(0, 1, "-"), (1, 2, "-"), (2, 3, "+"), (3, 0, "+"), (1, 4, "+"), (4, 3, "+")])
    emb = PlaneEmbedding(
        (
            ((0, False), (4, False), (5, False), (3, False)),
            ((1, False), (2, False), (5, True), (4, True)),
            ((3, True), (2, True), (1, True), (0, True)),
        )
    )
    return g, emb


def _bipartite_corpus() -> List[Tuple[str, SignedGraph, PlaneEmbedding]]:
    g, emb = folding_example()
    corpus = [("square-hexagon", g, emb)]
    for S in ({2}, {4}, {0, 2}):
        corpus.append((f"square-hexagon-switched-{''.join(map(str, sorted(S)))}", switch(g, S), emb))
    for lengths, negative in (((2, 2, 2), (0,)), ((2, 2, 4), (0,)), ((2, 2, 4), (4,)), ((2, 4, 4), (0,))):
        name = "theta-" + "".join(map(str, lengths)) + "-" + "".join(map(str, negative))
        corpus.append((name, theta(lengths, negative), theta_embedding(lengths)))
    for n, negative in ((4, (0,)), (6, (0,)), (10, (0,)), (12, (0, 1, 2))):
        corpus.append((f"cycle{n}-{len(negative)}neg", cycle(n, negative), cycle_embedding(n)))
    c3 = cycle(3)
    corpus.append(("T2(C3)", t2_construction(c3), subdivide_embedding(c3, cycle_embedding(3))))
    for n in (3, 4):
        w = wheel(n)
        corpus.append((f"T2(W{n})", t2_construction(w), subdivide_embedding(w, wheel_embedding(n))))
    return corpus


class FoldingSuite(BaseSuite):
    """Folding keeps bipartiteness, planarity and negative girth; short targets are reached by homomorphisms."""

    # negative girth at least ``girth`` implies a map to C_{-length}
    _HOMOMORPHISM_ROWS = ((4, 2), (10, 4))

    def _get_metadata(self) -> SuiteMetadata:
        return SuiteMetadata(
            name="folding",
            description="folding to saturation and homomorphisms to negative even cycles",
            tags=["planar", "homomorphism"],
        )

    def cases(self, bounds: SuiteBounds) -> Iterator[CaseOutcome]:
        budget = bounds.budget()
        for name, g, emb in _bipartite_corpus():
            yield self._check_fold(name, g, emb)
            girth = negative_girth(g)
            for threshold, length in self._HOMOMORPHISM_ROWS:
                if girth is UNBOUNDED or girth < threshold:
                    continue
                decision = hom_to_negative_cycle(g, length, budget)
                case = f"{name}->C-{length}"
                if decision.outcome is Outcome.UNKNOWN:
                    yield _unknown(case)
                elif decision.found:
                    yield _pass(case)
                else:
                    yield _fail(case, f"negative girth {girth} but no map to C_-{length}", g, emb)

    def _check_fold(self, name: str, g: SignedGraph, emb: PlaneEmbedding) -> CaseOutcome:
        girth = negative_girth(g)
        try:
            result = fold_to_saturation(g, emb)
            validate_embedding(result.graph, result.embedding)
        except (ContractViolation, ValidationError) as exc:
            return _fail(name, str(exc), g, emb)
        if not nx.is_bipartite(result.graph.to_simple_graph()):
            return _fail(name, "folded graph is not bipartite", g, emb)
        if negative_girth(result.graph) != girth:
            return _fail(name, f"negative girth changed from {girth}", g, emb)
        return _pass(name, f"{g.vertex_count} -> {result.graph.vertex_count} vertices")


class TightCutsSuite(BaseSuite):
    """Optimal witnesses carry a tight cut certifying the index; scaled-up witnesses carry none."""

    def _get_metadata(self) -> SuiteMetadata:
        return SuiteMetadata(name="tightcuts", description="tight cut certificates of optimal flows", tags=["index"])

    def default_bounds(self) -> SuiteBounds:
        return SuiteBounds(max_vertices=5, max_edges=6)

    def cases(self, bounds: SuiteBounds) -> Iterator[CaseOutcome]:
        budget = bounds.budget()
        for name, g in _signed_corpus(bounds):
            result = circular_flow_index(g, budget)
            if result.status is IndexStatus.INFEASIBLE:
                continue
            if result.status is not IndexStatus.EXACT:
                yield _unknown(name)
                continue
            report = result.certificate_cut
            if report is None or report.implied_r != result.value:
                implied = None if report is None else report.implied_r
                yield _fail(name, f"index {result.value} but tight cut gives {implied}", g)
                continue
            D, f = nonnegative(result.witness[0], pq_to_circular(result.witness[1]))
            scaled = scale_flow(f, result.value + 1)
            if find_tight_cut(g, D, scaled) is not None:
                yield _fail(name, f"flow scaled to {result.value + 1} still has a tight cut", g)
                continue
            yield _pass(name, f"index {result.value}")


class HoffmanSuite(BaseSuite):
    """Max-flow feasibility and the all-cuts condition agree on random instances."""

    def _get_metadata(self) -> SuiteMetadata:
        return SuiteMetadata(name="hoffman", description="max-flow versus all-cuts circulation feasibility", tags=["flows"])

    def default_bounds(self) -> SuiteBounds:
        return SuiteBounds(max_vertices=8, max_edges=12, samples=1000)

    def cases(self, bounds: SuiteBounds) -> Iterator[CaseOutcome]:
        rng = random.Random(bounds.seed)
        values = [c.value for c in index_candidates(bounds.max_p)]
        if bounds.max_vertices < 2 or bounds.max_edges < 1:
            return
        for i in range(bounds.samples):
            g = random_signed_graph(rng, rng.randint(2, bounds.max_vertices), rng.randint(1, bounds.max_edges))
            D = Orientation.from_choices(g, [e for e in range(g.m) if rng.random() < 0.5])
            low = {e for e in g.negative_edges if rng.random() < 0.5}
            pi = NegativePartition(low, set(g.negative_edges) - low)
            r = rng.choice(values)
            by_flow = hoffman_feasible(g, D, pi, r)
            by_cuts = hoffman_feasible_by_cuts(g, D, pi, r)
            name = f"sample{i}"
            if by_flow != by_cuts:
                yield _fail(name, f"r={r}: max-flow says {by_flow}, cuts say {by_cuts}", g)
            else:
                yield _pass(name, f"r={r} feasible={by_flow}")


class TransferSuite(BaseSuite):
    """Flows of (G, sigma) and boundary orientations of (2p - 2q)G convert both ways."""

    _PARAMETERS = ((2, 1), (3, 1))

    def _get_metadata(self) -> SuiteMetadata:
        return SuiteMetadata(name="transfer", description="flow/orientation transfer round trips", tags=["orientations"])

    def default_bounds(self) -> SuiteBounds:
        return SuiteBounds(max_vertices=4, max_edges=5, samples=200)

    def cases(self, bounds: SuiteBounds) -> Iterator[CaseOutcome]:
        rng = random.Random(bounds.seed)
        budget = bounds.budget()
        if bounds.max_vertices < 2 or bounds.max_edges < 1:
            return
        for i in range(bounds.samples):
            g = random_signed_graph(rng, rng.randint(2, bounds.max_vertices), rng.randint(1, bounds.max_edges))
            p, q = rng.choice(self._PARAMETERS)
            name = f"sample{i}/p={p},q={q}"
            try:
                yield self._check(name, g, p, q, budget)
            except ContractViolation as exc:
                yield _fail(name, str(exc), g)

    def _check(self, name: str, g: SignedGraph, p: int, q: int, budget: SearchBudget) -> CaseOutcome:
        decision = decide_pq_flow(g, 2 * p, q, budget)
        transfer = transfer_graph(g, p, q)
        search = find_beta_orientation(transfer.host, transfer.beta, budget=budget)
        if Outcome.UNKNOWN in (decision.outcome, search.outcome):
            return _unknown(name)
        if decision.found != search.found:
            return _fail(name, f"flow {decision.outcome.value}, orientation {search.outcome.value}", g)
        if not decision.found:
            return _pass(name, "neither exists")
        orientation = flow_orientation_transfer(g, p, q, flow=decision.witness)
        D, flow = flow_orientation_transfer(g, p, q, orientation=orientation)
        if not verify_flow(g, D, flow):
            return _fail(name, "flow -> orientation -> flow does not verify", g)
        D, flow = flow_orientation_transfer(g, p, q, orientation=search.orientation)
        back = flow_orientation_transfer(g, p, q, flow=(D, flow))
        if not verify_beta_orientation(transfer.host, back, transfer.beta):
            return _fail(name, "orientation -> flow -> orientation misses the boundary", g)
        return _pass(name, "both round trips verify")


class DoublingSuite(BaseSuite):
    """Replacing every edge by a path with one negative edge doubles the index of an all-positive graph."""

    def _get_metadata(self) -> SuiteMetadata:
        return SuiteMetadata(name="doubling", description="index(T_2(G)) == 2 index(G, +)", tags=["index"])

    def _corpus(self, bounds: SuiteBounds) -> List[Tuple[str, SignedGraph]]:
        corpus = [("digon", cycle(2)), ("C3", cycle(3)), ("K4", wheel(3))]
        return [(name, g) for name, g in corpus if g.vertex_count + g.m <= max(bounds.max_vertices + bounds.max_edges, 10)]

    def cases(self, bounds: SuiteBounds) -> Iterator[CaseOutcome]:
        budget = bounds.budget()
        for name, g in self._corpus(bounds):
            base = circular_flow_index(g, budget)
            doubled = circular_flow_index(t2_construction(g), budget)
            if base.status is not IndexStatus.EXACT or doubled.status is not IndexStatus.EXACT:
                yield _unknown(name)
            elif doubled.value == 2 * base.value:
                yield _pass(name, f"{base.value} -> {doubled.value}")
            else:
                yield _fail(name, f"index {base.value} but T_2 gives {doubled.value}", g)
        if bounds.stretch:
            yield self._petersen(budget)

    def _petersen(self, budget: SearchBudget) -> CaseOutcome:
        decision = decide_pq_flow(petersen(), 10, 2, budget)
        if decision.outcome is Outcome.UNKNOWN:
            return _unknown("petersen 10/2")
        if decision.found:
            return _pass("petersen 10/2")
        return _fail("petersen 10/2", "no (10,2)-flow found", petersen())


# --------------------------------------------------------------------------
# Counterexample searches
# --------------------------------------------------------------------------


class BaseSearch(ABC):
    """
    Base class for bounded counterexample searches.

    Oversized bounds are refused by the enumeration guard, which reports
    how many edge multisets it would have to visit.
    """

    def __init__(self):
        self.metadata = self._get_metadata()

    @abstractmethod
    def _get_metadata(self) -> SuiteMetadata:
        pass

    @abstractmethod
    def min_connectivity(self) -> int:
        pass

    @abstractmethod
    def is_finding(self, index: Fraction) -> bool:
        pass

    def admits(self, g: SignedGraph, planar_eulerian: bool) -> bool:
        if edge_connectivity(g) < self.min_connectivity():
            return False
        if planar_eulerian:
            return g.is_even() and nx.check_planarity(g.to_simple_graph())[0]
        return True

    def __call__(
        self, max_vertices: int, max_edges: int, planar_eulerian: bool = False, budget: Optional[SearchBudget] = None
    ) -> SearchReport:
        if max_vertices < 0 or max_edges < 0:
            raise ValidationError("search bounds must be nonnegative")
        budget = budget or SearchBudget.from_settings()
        report = SearchReport(problem=self.metadata.name, max_vertices=max_vertices, max_edges=max_edges)
        for n in range(2, max_vertices + 1):
            for g in enumerate_multigraphs(n, max_edges, min_edges=1):
                if not self.admits(g, planar_eulerian):
                    continue
                report.graphs_examined += 1
                for signed in inversing_class_representatives(g):
                    report.signatures_examined += 1
                    result = circular_flow_index(signed, budget)
                    if result.status is not IndexStatus.EXACT:
                        report.undecided += 1
                        continue
                    if self.is_finding(result.value):
                        logger.warning("%s: index %s on\n%s", self.metadata.name, result.value, format_signed_graph(signed))
                        report.findings.append(format_signed_graph(signed))
        logger.info("%s: %s", self.metadata.name, report.summary)
        return report


class IndexAboveFive(BaseSearch):
    def _get_metadata(self) -> SuiteMetadata:
        return SuiteMetadata(
            name="phi-gt-5-3ec",
            description="3-edge-connected signed graphs with circular flow index above 5",
            tags=["search"],
        )

    def min_connectivity(self) -> int:
        return 3

    def is_finding(self, index: Fraction) -> bool:
        return index > 5


class IndexFourAtFour(BaseSearch):
    def _get_metadata(self) -> SuiteMetadata:
        return SuiteMetadata(
            name="phi-eq-4-4ec",
            description="4-edge-connected signed graphs with circular flow index exactly 4",
            tags=["search"],
        )

    def min_connectivity(self) -> int:
        return 4

    def is_finding(self, index: Fraction) -> bool:
        return index == 4


Entry = Union[BaseSuite, BaseSearch]


class SuiteRegistry:
    """Registry of suites or searches, keyed by name."""

    def __init__(self):
        self._entries: Dict[str, Entry] = {}

    def register(self, entry: Entry):
        """Register a new suite or search."""
        metadata = entry._get_metadata()
        if metadata.name in self._entries:
            raise ValidationError(f"{metadata.name} is already registered")
        self._entries[metadata.name] = entry

    def unregister(self, name: str):
        if name not in self._entries:
            raise ValidationError(f"{name} is not registered")
        del self._entries[name]

    def get(self, name: str) -> Entry:
        if name not in self._entries:
            known = ", ".join(sorted(self._entries))
            raise ValidationError(f"unknown name {name!r}; known: {known}")
        return self._entries[name]

    def names(self) -> List[str]:
        return list(self._entries)

    def list_entries(self) -> List[SuiteMetadata]:
        return [entry._get_metadata() for entry in self._entries.values()]


def _build(factories: List[Callable[[], Entry]]) -> SuiteRegistry:
    registry = SuiteRegistry()
    for factory in factories:
        registry.register(factory())
    return registry


def default_suites() -> SuiteRegistry:
    return _build(
        [
            EquivalencesSuite,
            EulerianSuite,
            ConnectivitySuite,
            DualitySuite,
            FoldingSuite,
            TightCutsSuite,
            HoffmanSuite,
            TransferSuite,
            DoublingSuite,
        ]
    )


def default_searches() -> SuiteRegistry:
    return _build([IndexAboveFive, IndexFourAtFour])
