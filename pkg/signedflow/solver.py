"""
Exact circular flow index and circular chromatic number.

The index is the least candidate p/q (numerator at most 2|E|) at which a
(p,q)-flow exists; candidates are swept in ascending order so the first
success is the minimum. Every decision is a depth-first search over edge
values under the reference orientation, pruned at closed vertices and by an
interval bound on what the unassigned edges can still cancel.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import networkx as nx

from .budget import BudgetTracker, Outcome, SearchBudget
from .config import get_settings
from .exceptions import BudgetExhausted, GuardError, ValidationError
from .flows import (
    FlowAssignment,
    FlowKind,
    KindName,
    TightCutReport,
    even_lift,
    find_tight_cut,
    nonnegative,
    pq_to_circular,
    verify_flow,
)
from .graph import Orientation, SignedGraph, closing_order, positive_bridges

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Candidate:
    value: Fraction
    p: int
    q: int


def index_candidates(numerator_bound: int) -> List[Candidate]:
    """Reduced fractions a/b >= 2 with a <= bound, ascending, each lifted to an even numerator."""
    values = {
        Fraction(a, b)
        for a in range(2, numerator_bound + 1)
        for b in range(1, a // 2 + 1)
    }
    return [Candidate(v, *even_lift(v)) for v in sorted(values) if v.numerator <= numerator_bound]


@dataclass(frozen=True)
class FlowDecision:
    outcome: Outcome
    orientation: Optional[Orientation] = None
    flow: Optional[FlowAssignment] = None
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.outcome is Outcome.FOUND

    @property
    def witness(self) -> Optional[Tuple[Orientation, FlowAssignment]]:
        return (self.orientation, self.flow) if self.found else None


def _edge_domain(kind: FlowKind, sign: int) -> List[Fraction]:
    """Admissible values on the grid of the kind, smallest magnitude first."""
    if kind.integral:
        p, step = kind.p, Fraction(1)
    else:
        p, q = even_lift(kind.r)
        step = Fraction(1, q)
    lowest = 0 if not kind.signed else -(p - 1)
    values = [i * step for i in range(lowest, p)]
    return sorted((v for v in values if kind.allows(sign, v)), key=lambda v: (abs(v), v < 0))


class _FlowSearch:
    """Backtracking over edge values of the reference orientation."""

    def __init__(
        self, g: SignedGraph, domains: List[List], modulus: Optional[int], tracker: BudgetTracker
    ):
        self.g = g
        self.tracker = tracker
        self.modulus = modulus
        self.order = closing_order(g)
        self.domains = domains
        self.values: List[Fraction] = [Fraction(0)] * g.m
        self.boundary = [Fraction(0)] * g.vertex_count
        self.open_edges = [g.degree(v) for v in range(g.vertex_count)]
        self._reach = [max((abs(v) for v in d), default=Fraction(0)) for d in self.domains]
        self.capacity = [Fraction(0)] * g.vertex_count
        for e in g.edges:
            self.capacity[e.u] += self._reach[e.id]
            self.capacity[e.w] += self._reach[e.id]

    def _closed_ok(self, v: int) -> bool:
        if self.modulus is None:
            return self.boundary[v] == 0
        return self.boundary[v] % self.modulus == 0

    def _open_ok(self, v: int) -> bool:
        if self.modulus is not None:
            return True
        return abs(self.boundary[v]) <= self.capacity[v]

    def run(self) -> Optional[List[Fraction]]:
        if any(not d for d in self.domains):
            return None
        return list(self.values) if self._extend(0) else None

    def _extend(self, i: int) -> bool:
        if i == len(self.order):
            return True
        e = self.order[i]
        edge = self.g.edges[e]
        u, w = edge.u, edge.w
        reach = self._reach[e]
        self.open_edges[u] -= 1
        self.open_edges[w] -= 1
        self.capacity[u] -= reach
        self.capacity[w] -= reach
        try:
            for value in self.domains[e]:
                self.tracker.charge()
                self.boundary[u] += value
                self.boundary[w] -= value
                ok = all(
                    self._closed_ok(v) if self.open_edges[v] == 0 else self._open_ok(v) for v in (u, w)
                )
                if ok:
                    self.values[e] = value
                    if self._extend(i + 1):
                        return True
                self.boundary[u] -= value
                self.boundary[w] += value
            return False
        finally:
            self.open_edges[u] += 1
            self.open_edges[w] += 1
            self.capacity[u] += reach
            self.capacity[w] += reach


def search_edge_values(
    g: SignedGraph, domains: List[List], modulus: Optional[int], tracker: BudgetTracker
) -> Optional[List]:
    """
    Pick one value per edge from ``domains`` so that every vertex balances.

    With ``modulus`` set, balance is taken modulo it. Returns None when no
    choice exists; lets ``BudgetExhausted`` escape.
    """
    return _FlowSearch(g, domains, modulus, tracker).run()


def decide_flow(
    g: SignedGraph, kind: FlowKind, budget: Optional[SearchBudget] = None, tracker: Optional[BudgetTracker] = None
) -> FlowDecision:
    """Decide whether (G, sigma) carries a flow of the given kind."""
    tracker = tracker or (budget or SearchBudget.from_settings()).tracker()
    domains = [_edge_domain(kind, e.sign) for e in g.edges]
    modulus = None if kind.signed else kind.circumference
    try:
        values = search_edge_values(g, domains, modulus, tracker)
    except BudgetExhausted:
        logger.debug("%s undecided after %d nodes", kind.describe(), tracker.nodes)
        return FlowDecision(Outcome.UNKNOWN, nodes=tracker.nodes)
    if values is None:
        return FlowDecision(Outcome.NONE, nodes=tracker.nodes)
    D = Orientation.reference(g)
    f = FlowAssignment(tuple(values), kind)
    check = verify_flow(g, D, f)
    if not check:
        raise ValidationError(f"search produced an invalid flow: {check.violation.message}")
    return FlowDecision(Outcome.FOUND, D, f, tracker.nodes)


def decide_pq_flow(
    g: SignedGraph, p: int, q: int, budget: Optional[SearchBudget] = None, tracker: Optional[BudgetTracker] = None
) -> FlowDecision:
    return decide_flow(g, FlowKind.pq(p, q), budget, tracker)


def oracle_pq_flow(g: SignedGraph, p: int, q: int, edge_limit: Optional[int] = None) -> Optional[Tuple[Orientation, FlowAssignment]]:
    """Exhaustive search over Z_p^E under the reference orientation."""
    kind = FlowKind.mod_pq(p, q)
    limit = edge_limit if edge_limit is not None else get_settings().oracle_edge_limit
    if g.m > limit and p > 4:
        raise GuardError(f"oracle would enumerate up to {p}^{g.m} vectors")
    residues = [[v for v in range(p) if kind.allows(e.sign, v)] for e in g.edges]
    for values in itertools.product(*residues):
        totals = [0] * g.vertex_count
        for e, value in zip(g.edges, values):
            totals[e.u] += value
            totals[e.w] -= value
        if all(t % p == 0 for t in totals):
            return Orientation.reference(g), FlowAssignment(tuple(values), kind)
    return None


def notions_agree(g: SignedGraph, p: int, q: int, budget: Optional[SearchBudget] = None) -> Dict[KindName, Outcome]:
    """Outcome of each of the four equivalent notions at r = p/q."""
    r = Fraction(p, q)
    kinds = [FlowKind.circular(r), FlowKind.pq(p, q), FlowKind.mod_pq(p, q), FlowKind.circular_mod(r)]
    return {kind.name: decide_flow(g, kind, budget).outcome for kind in kinds}


class IndexStatus(str, Enum):
    EXACT = "exact"
    INFEASIBLE = "infeasible"
    UPPER_BOUND = "upper-bound"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class IndexResult:
    status: IndexStatus
    value: Optional[Fraction] = None
    witness: Optional[Tuple[Orientation, FlowAssignment]] = None
    certificate_cut: Optional[TightCutReport] = None
    upper_bound: Optional[Fraction] = None
    numerator_bound: int = 0
    reason: str = ""
    undecided: Tuple[Fraction, ...] = field(default_factory=tuple)


def _tight_certificate(g: SignedGraph, D: Orientation, f: FlowAssignment) -> Optional[TightCutReport]:
    D, circular = nonnegative(D, pq_to_circular(f))
    return find_tight_cut(g, D, circular)


def circular_flow_index(g: SignedGraph, budget: Optional[SearchBudget] = None) -> IndexResult:
    budget = budget or SearchBudget.from_settings()
    bridges = positive_bridges(g)
    if bridges:
        return IndexResult(IndexStatus.INFEASIBLE, reason=f"positive bridge {bridges[0]}")
    sound_bound = 2 * g.m
    if g.m == 0:
        kind = FlowKind.pq(2, 1)
        return IndexResult(IndexStatus.EXACT, Fraction(2), (Orientation.reference(g), FlowAssignment((), kind)))
    bound = sound_bound if budget.max_p is None else min(budget.max_p, sound_bound)
    truncated = bound < sound_bound
    root = budget.tracker()
    undecided: List[Fraction] = []
    for candidate in index_candidates(bound):
        if root.expired:
            undecided.append(candidate.value)
            continue
        decision = decide_pq_flow(g, candidate.p, candidate.q, tracker=root.child())
        logger.debug("candidate %s: %s after %d nodes", candidate.value, decision.outcome.value, decision.nodes)
        if decision.outcome is Outcome.UNKNOWN:
            undecided.append(candidate.value)
            continue
        if not decision.found:
            continue
        certificate = _tight_certificate(g, decision.orientation, decision.flow)
        if undecided or truncated:
            return IndexResult(
                IndexStatus.UNKNOWN if undecided else IndexStatus.UPPER_BOUND,
                value=None if undecided else candidate.value,
                witness=decision.witness,
                certificate_cut=certificate,
                upper_bound=candidate.value,
                numerator_bound=bound,
                reason="budget exhausted below the best value" if undecided else "candidate sweep truncated",
                undecided=tuple(undecided),
            )
        return IndexResult(
            IndexStatus.EXACT,
            value=candidate.value,
            witness=decision.witness,
            certificate_cut=certificate,
            upper_bound=candidate.value,
            numerator_bound=bound,
        )
    if undecided or truncated:
        return IndexResult(
            IndexStatus.UNKNOWN, numerator_bound=bound, reason="no candidate verified", undecided=tuple(undecided)
        )
    return IndexResult(IndexStatus.INFEASIBLE, numerator_bound=bound, reason="every candidate refuted")


@dataclass(frozen=True)
class ChromaticResult:
    status: IndexStatus
    value: Optional[Fraction] = None
    p: Optional[int] = None
    q: Optional[int] = None
    potentials: Tuple[int, ...] = ()
    numerator_bound: int = 0
    undecided: Tuple[Fraction, ...] = ()


class _TensionSearch:
    """Potentials phi: V -> Z_p whose edge differences are admissible."""

    def __init__(self, g: SignedGraph, p: int, q: int, tracker: BudgetTracker):
        self.g = g
        self.p = p
        kind = FlowKind.mod_pq(p, q)
        self.allowed = {sign: frozenset(d for d in range(p) if kind.allows(sign, d)) for sign in (1, -1)}
        self.order: List[int] = []
        self.roots = set()
        for component in g.components():
            ordered = sorted(component)
            self.roots.add(ordered[0])
            self.order.extend(_bfs_order(g, ordered[0]))
        self.position = {v: i for i, v in enumerate(self.order)}
        self.potential: List[Optional[int]] = [None] * g.vertex_count
        self.tracker = tracker

    def run(self) -> Optional[List[int]]:
        return list(self.potential) if self._extend(0) else None

    def _consistent(self, v: int) -> bool:
        for e in self.g.incident(v):
            edge = self.g.edges[e]
            other = edge.other(v)
            if self.potential[other] is None:
                continue
            difference = (self.potential[edge.w] - self.potential[edge.u]) % self.p
            if difference not in self.allowed[edge.sign]:
                return False
        return True

    def _extend(self, i: int) -> bool:
        if i == len(self.order):
            return True
        v = self.order[i]
        choices = (0,) if v in self.roots else range(self.p)
        for value in choices:
            self.tracker.charge()
            self.potential[v] = value
            if self._consistent(v) and self._extend(i + 1):
                return True
        self.potential[v] = None
        return False


def _bfs_order(g: SignedGraph, root: int) -> List[int]:
    return [root] + [b for _, b in nx.bfs_edges(g.to_simple_graph(), root)]


def circular_chromatic_number(
    g: SignedGraph, budget: Optional[SearchBudget] = None, numerator_bound: Optional[int] = None
) -> ChromaticResult:
    """Least candidate p/q admitting a circular p/q-tension, within the numerator bound."""
    budget = budget or SearchBudget.from_settings()
    bound = numerator_bound or budget.max_p or max(2, get_settings().chromatic_bound_factor * g.vertex_count)
    root = budget.tracker()
    undecided: List[Fraction] = []
    for candidate in index_candidates(bound):
        if root.expired:
            undecided.append(candidate.value)
            continue
        search = _TensionSearch(g, candidate.p, candidate.q, root.child())
        try:
            potentials = search.run()
        except BudgetExhausted:
            undecided.append(candidate.value)
            continue
        if potentials is None:
            continue
        status = IndexStatus.UNKNOWN if undecided else IndexStatus.EXACT
        return ChromaticResult(
            status,
            candidate.value,
            candidate.p,
            candidate.q,
            tuple(potentials),
            bound,
            tuple(undecided),
        )
    return ChromaticResult(IndexStatus.UNKNOWN, numerator_bound=bound, undecided=tuple(undecided))
