"""
Modulo orientations, partition certificates and boundary orientations.

A modulo l-orientation of (G, sigma) is a pair (sigma', D) with sigma'
inversing equivalent to sigma and, at every vertex,

    (l - 1) * (out+ - in+) == out- - in-

under sigma'. Such an orientation is turned into a partition of E(G) into l
parts by lifting same-sign arc pairs and splitting vertices until a regular
bipartite multigraph remains, which decomposes into perfect matchings.

The module also carries the four equivalent Eulerian certificates at
``4k/(2k-1)``, boundary-prescribed orientations, the flow/orientation
transfer through the multigraph ``(2p - 2q)G`` and the small-graph group
connectivity checks.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from .budget import BudgetTracker, Outcome, SearchBudget
from .config import get_settings
from .exceptions import BudgetExhausted, ContractViolation, GuardError, ValidationError
from .flows import FlowAssignment, FlowKind, modulo_to_integer, verify_flow
from .graph import (
    NEGATIVE,
    POSITIVE,
    Orientation,
    SignedGraph,
    closing_order,
    is_inversing_equivalent,
    multiply_edges,
    negative_cut_vertices,
)
from .solver import decide_pq_flow, search_edge_values

logger = logging.getLogger(__name__)


# --------------------------------------------------------------------------
# Boundary functions
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundaryFunction:
    """A Z_M-boundary: one residue per vertex, summing to 0 modulo M."""

    modulus: int
    residues: Tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise ValidationError(f"modulus must be positive, got {self.modulus}")
        residues = tuple(int(b) % self.modulus for b in self.residues)
        object.__setattr__(self, "residues", residues)
        if sum(residues) % self.modulus:
            raise ValidationError(f"boundary sums to {sum(residues)}, not 0 modulo {self.modulus}")

    @classmethod
    def from_values(cls, modulus: int, values: Iterable[int]) -> "BoundaryFunction":
        return cls(modulus, tuple(values))

    @classmethod
    def eulerian(cls, g: SignedGraph, k: int) -> "BoundaryFunction":
        """beta(v) = 2k * d+(v) modulo 4k."""
        if k < 1:
            raise ValidationError(f"k must be positive, got {k}")
        return cls(4 * k, tuple(2 * k * g.positive_degree(v) for v in range(g.vertex_count)))

    def __getitem__(self, v: int) -> int:
        return self.residues[v]

    def __len__(self) -> int:
        return len(self.residues)

    def symmetric(self) -> Tuple[int, ...]:
        """Residues as representatives in (-M/2, M/2]."""
        half = self.modulus // 2
        return tuple(b if b <= half else b - self.modulus for b in self.residues)

    def parity_violation(self, g: SignedGraph) -> Optional[int]:
        """First vertex whose residue and degree differ in parity, or None."""
        if len(self.residues) != g.vertex_count:
            raise ValidationError(f"boundary has {len(self.residues)} values, graph has {g.vertex_count} vertices")
        if self.modulus % 2:
            raise ValidationError(f"parity compliance needs an even modulus, got {self.modulus}")
        for v, b in enumerate(self.residues):
            if (b - g.degree(v)) % 2:
                return v
        return None

    def is_parity_compliant(self, g: SignedGraph) -> bool:
        return self.parity_violation(g) is None

    def check_parity(self, g: SignedGraph) -> None:
        v = self.parity_violation(g)
        if v is not None:
            raise ValidationError(
                f"boundary value {self.residues[v]} at vertex {v} has the wrong parity for degree {g.degree(v)}",
                vertex=v,
            )

    def moved(self, tail: int, head: int) -> "BoundaryFunction":
        """The boundary after the arc tail->head is reversed."""
        residues = list(self.residues)
        residues[tail] -= 2
        residues[head] += 2
        return BoundaryFunction(self.modulus, tuple(residues))


def flip_arc(D: Orientation, beta: BoundaryFunction, e: int) -> Tuple[Orientation, BoundaryFunction]:
    """Reverse arc e; the boundary drops by 2 at the old tail and rises by 2 at the old head."""
    tail, head = D.arcs[e]
    return D.flipped(e), beta.moved(tail, head)


def verify_beta_orientation(g: SignedGraph, D: Orientation, beta: BoundaryFunction) -> bool:
    beta.check_parity(g)
    D.check(g)
    imbalance = D.imbalance(g.vertex_count)
    return all((imbalance[v] - beta[v]) % beta.modulus == 0 for v in range(g.vertex_count))


@dataclass(frozen=True)
class OrientationResult:
    outcome: Outcome
    orientation: Optional[Orientation] = None
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.outcome is Outcome.FOUND


class _BetaSearch:
    """Edge-by-edge directions; an open vertex must still be able to reach its residue."""

    def __init__(self, g: SignedGraph, beta: BoundaryFunction, fixed: Mapping[int, Tuple[int, int]], tracker):
        self.g = g
        self.beta = beta
        self.tracker = tracker
        self.imbalance = [0] * g.vertex_count
        self.open_edges = [g.degree(v) for v in range(g.vertex_count)]
        self.arcs: List[Optional[Tuple[int, int]]] = [None] * g.m
        for e, (t, h) in fixed.items():
            self.arcs[e] = (t, h)
            self.imbalance[t] += 1
            self.imbalance[h] -= 1
            self.open_edges[t] -= 1
            self.open_edges[h] -= 1
        self.order = [e for e in closing_order(g) if e not in fixed]

    def _reachable(self, v: int) -> bool:
        k = self.open_edges[v]
        c = self.imbalance[v]
        return any((c + t - self.beta[v]) % self.beta.modulus == 0 for t in range(-k, k + 1, 2))

    def run(self) -> Optional[Orientation]:
        if not all(self._reachable(v) for v in range(self.g.vertex_count)):
            return None
        return Orientation(tuple(self.arcs)) if self._extend(0) else None

    def _extend(self, i: int) -> bool:
        if i == len(self.order):
            return True
        e = self.order[i]
        edge = self.g.edges[e]
        self.open_edges[edge.u] -= 1
        self.open_edges[edge.w] -= 1
        try:
            for t, h in ((edge.u, edge.w), (edge.w, edge.u)):
                self.tracker.charge()
                self.imbalance[t] += 1
                self.imbalance[h] -= 1
                if self._reachable(t) and self._reachable(h):
                    self.arcs[e] = (t, h)
                    if self._extend(i + 1):
                        return True
                self.imbalance[t] -= 1
                self.imbalance[h] += 1
            return False
        finally:
            self.open_edges[edge.u] += 1
            self.open_edges[edge.w] += 1


def find_beta_orientation(
    g: SignedGraph,
    beta: BoundaryFunction,
    partial: Optional[Mapping[int, Tuple[int, int]]] = None,
    budget: Optional[SearchBudget] = None,
) -> OrientationResult:
    """
    Search for an orientation D with out - in == beta modulo M at every vertex.

    ``partial`` pre-assigns arcs (edge id -> (tail, head)) that the search
    keeps. A boundary that is not parity-compliant is rejected outright.
    """
    beta.check_parity(g)
    fixed = dict(partial or {})
    for e, (t, h) in fixed.items():
        if not 0 <= e < g.m:
            raise ValidationError(f"pre-assigned edge {e} not in graph", edge=e)
        edge = g.edges[e]
        if {t, h} != {edge.u, edge.w}:
            raise ValidationError(f"pre-assigned arc {t}->{h} does not match edge {e}", edge=e)
    tracker = (budget or SearchBudget.from_settings()).tracker()
    try:
        D = _BetaSearch(g, beta, fixed, tracker).run()
    except BudgetExhausted:
        return OrientationResult(Outcome.UNKNOWN, nodes=tracker.nodes)
    if D is None:
        return OrientationResult(Outcome.NONE, nodes=tracker.nodes)
    if not verify_beta_orientation(g, D, beta):
        raise ContractViolation("search produced an orientation with the wrong boundary")
    return OrientationResult(Outcome.FOUND, D, tracker.nodes)


# --------------------------------------------------------------------------
# Modulo orientations
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ModOrientationCertificate:
    """(sigma', D) at modulus ell; sigma' is a full signed graph on the same edges."""

    signature: SignedGraph
    orientation: Orientation
    ell: int


def balance_residuals(signature: SignedGraph, D: Orientation, ell: int) -> List[int]:
    """(l - 1)(out+ - in+) - (out- - in-) per vertex; zero everywhere for a modulo orientation."""
    n = signature.vertex_count
    positive = D.imbalance(n, signature.positive_edges)
    negative = D.imbalance(n, signature.negative_edges)
    return [(ell - 1) * positive[v] - negative[v] for v in range(n)]


def verify_mod_orientation(certificate: ModOrientationCertificate, original: SignedGraph) -> bool:
    if certificate.ell < 1:
        raise ValidationError(f"ell must be positive, got {certificate.ell}")
    original.require_same_underlying(certificate.signature)
    certificate.orientation.check(original)
    if not is_inversing_equivalent(certificate.signature, original):
        return False
    return not any(balance_residuals(certificate.signature, certificate.orientation, certificate.ell))


@dataclass(frozen=True)
class OrientationDecision:
    outcome: Outcome
    certificate: Optional[ModOrientationCertificate] = None
    reason: str = ""
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.outcome is Outcome.FOUND


class _ModOrientationSearch:
    """Sign and direction per edge; closed vertices meet the balance and the negative-degree parity."""

    def __init__(self, g: SignedGraph, ell: int, tracker: BudgetTracker):
        self.g = g
        self.ell = ell
        self.tracker = tracker
        n = g.vertex_count
        self.target = [g.negative_degree(v) % 2 for v in range(n)]
        self.reach = max(ell - 1, 1)
        self.balance = [0] * n
        self.parity = [0] * n
        self.open_edges = [g.degree(v) for v in range(n)]
        self.signs = list(g.signs)
        self.arcs: List[Optional[Tuple[int, int]]] = [None] * g.m
        self.order = closing_order(g)

    def _ok(self, v: int) -> bool:
        if self.open_edges[v] == 0:
            return self.balance[v] == 0 and self.parity[v] == self.target[v]
        return abs(self.balance[v]) <= self.reach * self.open_edges[v]

    def run(self) -> Optional[ModOrientationCertificate]:
        if not self._extend(0):
            return None
        return ModOrientationCertificate(self.g.with_signs(self.signs), Orientation(tuple(self.arcs)), self.ell)

    def _extend(self, i: int) -> bool:
        if i == len(self.order):
            return True
        e = self.order[i]
        edge = self.g.edges[e]
        self.open_edges[edge.u] -= 1
        self.open_edges[edge.w] -= 1
        try:
            for sign in (edge.sign, -edge.sign):
                weight = self.ell - 1 if sign == POSITIVE else -1
                odd = 1 if sign == NEGATIVE else 0
                for t, h in ((edge.u, edge.w), (edge.w, edge.u)):
                    self.tracker.charge()
                    self.balance[t] += weight
                    self.balance[h] -= weight
                    self.parity[t] ^= odd
                    self.parity[h] ^= odd
                    if self._ok(t) and self._ok(h):
                        self.signs[e] = sign
                        self.arcs[e] = (t, h)
                        if self._extend(i + 1):
                            return True
                    self.balance[t] -= weight
                    self.balance[h] += weight
                    self.parity[t] ^= odd
                    self.parity[h] ^= odd
            return False
        finally:
            self.open_edges[edge.u] += 1
            self.open_edges[edge.w] += 1


def find_mod_orientation(g: SignedGraph, ell: int, budget: Optional[SearchBudget] = None) -> OrientationDecision:
    """Search jointly over inversing-equivalent signatures and orientations."""
    if ell < 1:
        raise ValidationError(f"ell must be positive, got {ell}")
    if ell % 2 == 0 and g.odd_vertices():
        return OrientationDecision(Outcome.NONE, reason=f"vertex {g.odd_vertices()[0]} has odd degree")
    if ell % 2 == 1 and negative_cut_vertices(g):
        return OrientationDecision(Outcome.NONE, reason="not inversing equivalent to the all-positive signature")
    tracker = (budget or SearchBudget.from_settings()).tracker()
    try:
        certificate = _ModOrientationSearch(g, ell, tracker).run()
    except BudgetExhausted:
        return OrientationDecision(Outcome.UNKNOWN, reason="budget exhausted", nodes=tracker.nodes)
    if certificate is None:
        return OrientationDecision(Outcome.NONE, reason="search exhausted", nodes=tracker.nodes)
    if not verify_mod_orientation(certificate, g):
        raise ContractViolation("search produced an invalid modulo orientation")
    logger.debug("modulo %d-orientation found after %d nodes", ell, tracker.nodes)
    return OrientationDecision(Outcome.FOUND, certificate, nodes=tracker.nodes)


def odd_orientation_agrees(g: SignedGraph, k: int, budget: Optional[SearchBudget] = None) -> Optional[bool]:
    """
    A modulo (2k+1)-orientation exists exactly when sigma is inversing
    equivalent to the all-positive signature and G has a circular (2k+1)/k-flow.

    Returns None when either side is undecided.
    """
    if k < 1:
        raise ValidationError(f"k must be positive, got {k}")
    orientation = find_mod_orientation(g, 2 * k + 1, budget)
    flow = decide_pq_flow(g.all_positive(), 2 * (2 * k + 1), 2 * k, budget)
    if Outcome.UNKNOWN in (orientation.outcome, flow.outcome):
        return None
    expected = not negative_cut_vertices(g) and flow.found
    return orientation.found == expected


# --------------------------------------------------------------------------
# Partition certificates
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PartitionCertificate:
    """An orientation and a partition of E into ``ell`` parts."""

    orientation: Orientation
    parts: Tuple[Tuple[int, ...], ...]

    @property
    def ell(self) -> int:
        return len(self.parts)


@dataclass(frozen=True)
class PartitionCheck:
    ok: bool
    vertex: Optional[int] = None
    part: Optional[int] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_partition_certificate(certificate: PartitionCertificate, g: SignedGraph) -> PartitionCheck:
    """
    Each part, taken as the positive edge set, gives a signature inversing
    equivalent to sigma; and every vertex has the same out - in in each part.
    """
    D = certificate.orientation
    D.check(g)
    covered = sorted(e for part in certificate.parts for e in part)
    if covered != list(range(g.m)):
        raise ValidationError("parts do not partition the edge set")
    target = negative_cut_vertices(g)
    for index, part in enumerate(certificate.parts):
        chosen = set(part)
        signature = g.with_signs([POSITIVE if e in chosen else NEGATIVE for e in range(g.m)])
        mismatch = negative_cut_vertices(signature) ^ target
        if mismatch:
            v = min(mismatch)
            return PartitionCheck(False, v, index, f"part {index} has the wrong degree parity at vertex {v}")
    imbalances = [D.imbalance(g.vertex_count, part) for part in certificate.parts]
    for v in range(g.vertex_count):
        if len({imbalance[v] for imbalance in imbalances}) > 1:
            return PartitionCheck(False, v, None, f"parts are unbalanced at vertex {v}")
    return PartitionCheck(True)


@dataclass(frozen=True)
class _Arc:
    id: int
    tail: int
    head: int
    sign: int
    path: Tuple[int, ...]


def _lift_pairs(arcs: Sequence[_Arc], vertex_count: int, by_sign: bool) -> Tuple[List[_Arc], List[Tuple[int, ...]]]:
    """
    Replace in/out arc pairs at each vertex by one arc, in ascending arc-id
    order. Pairs closing up on themselves become closed walks.
    """
    current: Dict[int, _Arc] = {a.id: a for a in arcs}
    next_id = max(current, default=-1) + 1
    walks: List[Tuple[int, ...]] = []
    groups = (POSITIVE, NEGATIVE) if by_sign else (None,)
    for v in range(vertex_count):
        for group in groups:
            incoming = sorted(i for i, a in current.items() if a.head == v and group in (None, a.sign))
            outgoing = sorted(i for i, a in current.items() if a.tail == v and group in (None, a.sign))
            for a_id, b_id in zip(incoming, outgoing):
                a, b = current.pop(a_id), current.pop(b_id)
                path = a.path + b.path
                if a.tail == b.head:
                    walks.append(path)
                else:
                    current[next_id] = _Arc(next_id, a.tail, b.head, a.sign, path)
                    next_id += 1
    return sorted(current.values(), key=lambda a: a.id), walks


def _assign_copies(arcs: Sequence[_Arc], vertex_count: int, size: int) -> Dict[Tuple[int, int], int]:
    """Split each vertex into copies of ``size`` arcs each; maps (arc id, vertex) to its copy."""
    copy: Dict[Tuple[int, int], int] = {}
    for v in range(vertex_count):
        at_v = sorted((a for a in arcs if v in (a.tail, a.head)), key=lambda a: a.id)
        if len({a.tail == v for a in at_v}) > 1:
            raise ContractViolation(f"vertex {v} is neither a source nor a sink after lifting")
        if len(at_v) % size:
            raise ContractViolation(f"vertex {v} keeps {len(at_v)} arcs, not a multiple of {size}")
        for index, a in enumerate(at_v):
            copy[a.id, v] = index // size
    return copy


def _matching_decomposition(arcs: Sequence[Tuple[int, Hashable, Hashable]], rounds: int) -> List[List[int]]:
    """Peel ``rounds`` perfect matchings off a regular bipartite multigraph given as (id, left, right)."""
    remaining = list(arcs)
    matchings: List[List[int]] = []
    for _ in range(rounds):
        if not remaining:
            matchings.append([])
            continue
        B = nx.Graph()
        parallel: Dict[Tuple[Hashable, Hashable], List[int]] = {}
        left = set()
        for arc_id, a, b in remaining:
            left.add(a)
            parallel.setdefault((a, b), []).append(arc_id)
            B.add_edge(a, b)
        matching = nx.bipartite.hopcroft_karp_matching(B, top_nodes=left)
        chosen = []
        for a in sorted(left):
            if a not in matching:
                raise ContractViolation(f"copy {a} left unmatched")
            chosen.append(min(parallel[a, matching[a]]))
        taken = set(chosen)
        remaining = [arc for arc in remaining if arc[0] not in taken]
        matchings.append(sorted(chosen))
    if remaining:
        raise ContractViolation(f"{len(remaining)} arcs left after {rounds} matchings")
    return matchings


def _spread_walks(parts: List[List[int]], walks: Iterable[Tuple[int, ...]]) -> None:
    # closed walks are balanced everywhere, so any part may take them
    for walk in walks:
        smallest = min(range(len(parts)), key=lambda i: (len(parts[i]), i))
        parts[smallest].extend(walk)


def _matching_parts(arcs: Sequence[_Arc], vertex_count: int, rounds: int) -> List[List[int]]:
    copy = _assign_copies(arcs, vertex_count, rounds)
    bipartite = [(a.id, ("tail", a.tail, copy[a.id, a.tail]), ("head", a.head, copy[a.id, a.head])) for a in arcs]
    by_id = {a.id: a for a in arcs}
    return [[e for i in chosen for e in by_id[i].path] for chosen in _matching_decomposition(bipartite, rounds)]


def orientation_to_partition(
    certificate: ModOrientationCertificate, g: Optional[SignedGraph] = None
) -> PartitionCertificate:
    """
    Build E_1, ..., E_l from a modulo l-orientation.

    Same-sign arc pairs are lifted at every vertex, leaving each vertex a
    source or a sink with ``a`` positive and ``(l-1)a`` negative arcs. E_1
    collects the positive lifted arcs; E_2..E_l are perfect matchings of the
    split negative arcs. Lifted arcs are pulled back to their edge paths.
    """
    host = g if g is not None else certificate.signature
    if not verify_mod_orientation(certificate, host):
        raise ValidationError(f"not a modulo {certificate.ell}-orientation of the given signed graph")
    signature, D, ell = certificate.signature, certificate.orientation, certificate.ell
    n = signature.vertex_count
    if ell == 1:
        parts = [list(range(signature.m))]
    else:
        arcs = [_Arc(e, t, h, signature.sign(e), (e,)) for e, (t, h) in enumerate(D.arcs)]
        lifted, walks = _lift_pairs(arcs, n, by_sign=True)
        positives = [a for a in lifted if a.sign == POSITIVE]
        negatives = [a for a in lifted if a.sign == NEGATIVE]
        for v in range(n):
            p = sum(1 for a in positives if v in (a.tail, a.head))
            q = sum(1 for a in negatives if v in (a.tail, a.head))
            if q != (ell - 1) * p:
                raise ContractViolation(f"vertex {v} keeps {p} positive and {q} negative arcs")
        parts = [[e for a in positives for e in a.path]]
        parts += _matching_parts(negatives, n, ell - 1)
        _spread_walks(parts, walks)
    result = PartitionCertificate(D, tuple(tuple(sorted(part)) for part in parts))
    check = verify_partition_certificate(result, host)
    if not check:
        raise ContractViolation(f"partition fails its own check: {check.reason}")
    return result


# --------------------------------------------------------------------------
# Eulerian certificates at 4k/(2k-1)
# --------------------------------------------------------------------------


class EulerianForm(str, Enum):
    FLOW_4K = "flow-4k"
    SPECIAL_MOD_FLOW = "special-mod-flow"
    BOUNDARY_ORIENTATION = "boundary-orientation"
    MOD_2K_ORIENTATION = "mod-2k-orientation"


_FORM_CYCLE = (
    EulerianForm.FLOW_4K,
    EulerianForm.SPECIAL_MOD_FLOW,
    EulerianForm.BOUNDARY_ORIENTATION,
    EulerianForm.MOD_2K_ORIENTATION,
)


@dataclass(frozen=True)
class EulerianCertificate:
    """
    One of the four equivalent witnesses on a signed Eulerian graph.

    Flow forms carry integer ``values`` under ``orientation``; the boundary
    orientation form carries the orientation only; the modulo 2k form also
    carries the inversing-equivalent ``signature``.
    """

    form: EulerianForm
    k: int
    orientation: Orientation
    values: Tuple[int, ...] = ()
    signature: Optional[SignedGraph] = None


def _require_eulerian(g: SignedGraph, k: int) -> None:
    if k < 1:
        raise ValidationError(f"k must be positive, got {k}")
    odd = g.odd_vertices()
    if odd:
        raise ValidationError(f"signed Eulerian graph required, vertex {odd[0]} has odd degree", vertex=odd[0])


def _special_residues_ok(g: SignedGraph, k: int, values: Sequence[int]) -> bool:
    modulus = 4 * k
    allowed = {POSITIVE: {2 * k - 1, 2 * k + 1}, NEGATIVE: {1, modulus - 1}}
    return len(values) == g.m and all(values[e.id] % modulus in allowed[e.sign] for e in g.edges)


def verify_eulerian_certificate(certificate: EulerianCertificate, g: SignedGraph) -> bool:
    k = certificate.k
    _require_eulerian(g, k)
    D = certificate.orientation
    D.check(g)
    form = certificate.form
    if form is EulerianForm.FLOW_4K:
        if len(certificate.values) != g.m:
            raise ValidationError(f"flow has {len(certificate.values)} values, graph has {g.m} edges")
        return bool(verify_flow(g, D, FlowAssignment(certificate.values, FlowKind.pq(4 * k, 2 * k - 1))))
    if form is EulerianForm.SPECIAL_MOD_FLOW:
        if not _special_residues_ok(g, k, certificate.values):
            return False
        totals = [0] * g.vertex_count
        for e, (t, h) in enumerate(D.arcs):
            totals[t] += certificate.values[e]
            totals[h] -= certificate.values[e]
        return all(total % (4 * k) == 0 for total in totals)
    if form is EulerianForm.BOUNDARY_ORIENTATION:
        return verify_beta_orientation(g, D, BoundaryFunction.eulerian(g, k))
    if certificate.signature is None:
        raise ValidationError("modulo 2k-orientation certificate needs a signature")
    return verify_mod_orientation(ModOrientationCertificate(certificate.signature, D, 2 * k), g)


def _flow_to_special(g: SignedGraph, certificate: EulerianCertificate) -> EulerianCertificate:
    k = certificate.k
    modulus = 4 * k
    D = certificate.orientation
    residues = [v % modulus for v in certificate.values]
    H = nx.MultiGraph()
    for e, (t, h) in enumerate(D.arcs):
        if residues[e] in (0, 2 * k):
            H.add_edge(t, h, key=e)
    for component in nx.connected_components(H):
        try:
            circuit = list(nx.eulerian_circuit(H.subgraph(component), keys=True))
        except nx.NetworkXError as exc:
            raise ContractViolation(f"zero/half-valued edges are not Eulerian: {exc}") from exc
        for u, w, e in circuit:
            residues[e] = (residues[e] + (1 if D.arcs[e] == (u, w) else -1)) % modulus
    values = tuple(
        residue if g.sign(e) == POSITIVE else (1 if residue == 1 else -1) for e, residue in enumerate(residues)
    )
    return EulerianCertificate(EulerianForm.SPECIAL_MOD_FLOW, k, D, values)


def _special_to_boundary(g: SignedGraph, certificate: EulerianCertificate) -> EulerianCertificate:
    k = certificate.k
    D = certificate.orientation
    flipped = {
        e for e, value in enumerate(certificate.values)
        if (value + (2 * k if g.sign(e) == POSITIVE else 0)) % (4 * k) != 1
    }
    arcs = [(h, t) if e in flipped else (t, h) for e, (t, h) in enumerate(D.arcs)]
    return EulerianCertificate(EulerianForm.BOUNDARY_ORIENTATION, k, Orientation(tuple(arcs)))


def _boundary_to_mod2k(g: SignedGraph, certificate: EulerianCertificate) -> EulerianCertificate:
    k = certificate.k
    D = certificate.orientation
    arcs = [_Arc(e, t, h, g.sign(e), (e,)) for e, (t, h) in enumerate(D.arcs)]
    lifted, walks = _lift_pairs(arcs, g.vertex_count, by_sign=False)
    parts = _matching_parts(lifted, g.vertex_count, 2 * k)
    _spread_walks(parts, walks)
    first = set(parts[0])
    signature = g.with_signs([POSITIVE if e in first else NEGATIVE for e in range(g.m)])
    return EulerianCertificate(EulerianForm.MOD_2K_ORIENTATION, k, D, signature=signature)


def _mod2k_to_flow(g: SignedGraph, certificate: EulerianCertificate) -> EulerianCertificate:
    k = certificate.k
    D = certificate.orientation
    signature = certificate.signature
    values = [2 * k - 1 if signature.sign(e) == POSITIVE else -1 for e in range(g.m)]
    inverted = [e for e in range(g.m) if signature.sign(e) != g.sign(e)]
    if inverted:
        shifted = set(inverted)
        residues = tuple((v + (2 * k if e in shifted else 0)) % (4 * k) for e, v in enumerate(values))
        lifted = modulo_to_integer(g, D, FlowAssignment(residues, FlowKind.mod_pq(4 * k, 2 * k - 1)))
        values = [int(v) for v in lifted.values]
    return EulerianCertificate(EulerianForm.FLOW_4K, k, D, tuple(values))


_STEPS = {
    EulerianForm.FLOW_4K: _flow_to_special,
    EulerianForm.SPECIAL_MOD_FLOW: _special_to_boundary,
    EulerianForm.BOUNDARY_ORIENTATION: _boundary_to_mod2k,
    EulerianForm.MOD_2K_ORIENTATION: _mod2k_to_flow,
}


def convert_eulerian_certificate(
    certificate: EulerianCertificate, target: EulerianForm, g: SignedGraph
) -> EulerianCertificate:
    """Walk the cycle flow -> special flow -> boundary orientation -> modulo orientation -> flow."""
    if not verify_eulerian_certificate(certificate, g):
        raise ValidationError(f"input {certificate.form.value} certificate does not verify")
    current = certificate
    while current.form is not target:
        current = _STEPS[current.form](g, current)
        if not verify_eulerian_certificate(current, g):
            raise ContractViolation(f"conversion produced an invalid {current.form.value} certificate")
        logger.debug("converted to %s", current.form.value)
    return current


@dataclass(frozen=True)
class EulerianDecision:
    outcome: Outcome
    certificate: Optional[EulerianCertificate] = None


def find_eulerian_certificate(
    g: SignedGraph, form: EulerianForm, k: int, budget: Optional[SearchBudget] = None
) -> EulerianDecision:
    _require_eulerian(g, k)
    budget = budget or SearchBudget.from_settings()
    if form is EulerianForm.FLOW_4K:
        decision = decide_pq_flow(g, 4 * k, 2 * k - 1, budget)
        if not decision.found:
            return EulerianDecision(decision.outcome)
        values = tuple(int(v) for v in decision.flow.values)
        return EulerianDecision(Outcome.FOUND, EulerianCertificate(form, k, decision.orientation, values))
    if form is EulerianForm.SPECIAL_MOD_FLOW:
        domains = [[2 * k - 1, 2 * k + 1] if e.sign == POSITIVE else [1, -1] for e in g.edges]
        tracker = budget.tracker()
        try:
            values = search_edge_values(g, domains, 4 * k, tracker)
        except BudgetExhausted:
            return EulerianDecision(Outcome.UNKNOWN)
        if values is None:
            return EulerianDecision(Outcome.NONE)
        return EulerianDecision(Outcome.FOUND, EulerianCertificate(form, k, Orientation.reference(g), tuple(values)))
    if form is EulerianForm.BOUNDARY_ORIENTATION:
        result = find_beta_orientation(g, BoundaryFunction.eulerian(g, k), budget=budget)
        if not result.found:
            return EulerianDecision(result.outcome)
        return EulerianDecision(Outcome.FOUND, EulerianCertificate(form, k, result.orientation))
    decision = find_mod_orientation(g, 2 * k, budget)
    if not decision.found:
        return EulerianDecision(decision.outcome)
    certificate = decision.certificate
    return EulerianDecision(
        Outcome.FOUND, EulerianCertificate(form, k, certificate.orientation, signature=certificate.signature)
    )


# --------------------------------------------------------------------------
# Flows of (G, sigma) against orientations of (2p - 2q)G
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class TransferGraph:
    """H = (2p - 2q)G, all positive, with its boundary beta(v) = 2p * d+(v) modulo 4p."""

    host: SignedGraph
    provenance: Tuple[Tuple[int, int], ...]
    beta: BoundaryFunction
    p: int
    q: int

    @property
    def multiplicity(self) -> int:
        return 2 * (self.p - self.q)


def transfer_graph(g: SignedGraph, p: int, q: int) -> TransferGraph:
    if not 1 <= q <= p:
        raise ValidationError(f"transfer needs 1 <= q <= p, got p={p}, q={q}")
    host, provenance = multiply_edges(g.all_positive(), 2 * (p - q))
    beta = BoundaryFunction(4 * p, tuple(2 * p * g.positive_degree(v) for v in range(g.vertex_count)))
    return TransferGraph(host, provenance, beta, p, q)


def orientation_to_transfer_flow(g: SignedGraph, p: int, q: int, orientation: Orientation) -> Tuple[Orientation, FlowAssignment]:
    """A beta-orientation of H gives a (2p, q)-flow of (G, sigma) under the reference orientation."""
    transfer = transfer_graph(g, p, q)
    if not verify_beta_orientation(transfer.host, orientation, transfer.beta):
        raise ValidationError("orientation does not realise the transfer boundary")
    modulus = 4 * p
    totals = [2 * p if e.sign == POSITIVE else 0 for e in g.edges]
    for copy, (e, _) in enumerate(transfer.provenance):
        edge = g.edges[e]
        totals[e] += 1 if orientation.arcs[copy] == (edge.u, edge.w) else -1
    D = Orientation.reference(g)
    residues = FlowAssignment(tuple(t % modulus for t in totals), FlowKind.mod_pq(modulus, 2 * q))
    lifted = modulo_to_integer(g, D, residues)
    flow = FlowAssignment(tuple(v / 2 for v in lifted.values), FlowKind.pq(2 * p, q))
    if not verify_flow(g, D, flow):
        raise ContractViolation("transferred flow does not verify")
    return D, flow


def flow_to_transfer_orientation(g: SignedGraph, p: int, q: int, D: Orientation, f: FlowAssignment) -> Orientation:
    """A (2p, q)-flow of (G, sigma) gives a beta-orientation of H."""
    expected = FlowKind.pq(2 * p, q)
    if f.kind != expected:
        raise ValidationError(f"expected a {expected.describe()}, got a {f.kind.describe()}")
    check = verify_flow(g, D, f)
    if not check:
        raise ValidationError(f"not a flow: {check.violation.message}")
    transfer = transfer_graph(g, p, q)
    modulus = 4 * p
    size = transfer.multiplicity
    forward_copies: Dict[int, int] = {}
    for e in g.edges:
        value = int(f[e.id]) if D.agrees_with(g, e.id) else -int(f[e.id])
        t = (2 * value - (2 * p if e.sign == POSITIVE else 0)) % modulus
        if t > 2 * p:
            t -= modulus
        if abs(t) > size:
            raise ContractViolation(f"edge {e.id} needs net {t} from {size} copies")
        forward_copies[e.id] = (size + t) // 2
    arcs = []
    for e, copy in transfer.provenance:
        edge = g.edges[e]
        arcs.append((edge.u, edge.w) if copy < forward_copies[e] else (edge.w, edge.u))
    orientation = Orientation(tuple(arcs))
    if not verify_beta_orientation(transfer.host, orientation, transfer.beta):
        raise ContractViolation("transferred orientation misses the boundary")
    return orientation


def flow_orientation_transfer(
    g: SignedGraph,
    p: int,
    q: int,
    flow: Optional[Tuple[Orientation, FlowAssignment]] = None,
    orientation: Optional[Orientation] = None,
):
    """Given exactly one of a (2p, q)-flow or an H-orientation, return the other."""
    if (flow is None) == (orientation is None):
        raise ValidationError("pass exactly one of a flow or an orientation")
    if flow is not None:
        return flow_to_transfer_orientation(g, p, q, *flow)
    return orientation_to_transfer_flow(g, p, q, orientation)


# --------------------------------------------------------------------------
# Group connectivity on small graphs
# --------------------------------------------------------------------------


def _guard_small(g: SignedGraph, k: int) -> None:
    settings = get_settings()
    if k < 2:
        raise ValidationError(f"group order must be at least 2, got {k}")
    if g.vertex_count > settings.zk_vertex_limit or g.m > settings.zk_edge_limit:
        raise GuardError(
            f"group connectivity limited to {settings.zk_vertex_limit} vertices and {settings.zk_edge_limit} edges"
        )


def _reachable_boundaries(
    g: SignedGraph, k: int, forbidden: Optional[Sequence[int]], tracker: BudgetTracker
) -> set:
    """Boundaries mod k of the reference orientation reachable with the allowed edge values."""
    reachable = {(0,) * g.vertex_count}
    for e in g.edges:
        allowed = [x for x in range(k) if (x != 0 if forbidden is None else x != forbidden[e.id])]
        grown = set()
        for state in reachable:
            tracker.charge()
            for x in allowed:
                nxt = list(state)
                nxt[e.u] = (nxt[e.u] + x) % k
                nxt[e.w] = (nxt[e.w] - x) % k
                grown.add(tuple(nxt))
        reachable = grown
    return reachable


def zk_connected(g: SignedGraph, k: int, budget: Optional[SearchBudget] = None) -> Optional[bool]:
    """
    Whether every zero-sum boundary mod k is realised by a nowhere-zero
    Z_k-assignment. None when the budget runs out.
    """
    _guard_small(g, k)
    if g.vertex_count <= 1:
        return True
    if not g.is_connected():
        return False
    tracker = (budget or SearchBudget.from_settings()).tracker()
    try:
        reachable = _reachable_boundaries(g, k, None, tracker)
    except BudgetExhausted:
        return None
    return len(reachable) == k ** (g.vertex_count - 1)


def zk_avoidance_holds(
    g: SignedGraph,
    k: int,
    samples: int = 64,
    seed: int = 0,
    exhaustive_limit: Optional[int] = None,
    budget: Optional[SearchBudget] = None,
) -> Optional[bool]:
    """
    For every forbidden g: E -> Z_k there is a mod-k flow avoiding it edgewise.

    All k^|E| functions are tried when that count is at most
    ``exhaustive_limit``; otherwise ``samples`` functions drawn with ``seed``.
    """
    _guard_small(g, k)
    limit = exhaustive_limit if exhaustive_limit is not None else get_settings().avoidance_exhaustive_limit
    if k ** g.m <= limit:
        forbidden_maps: Iterable[Sequence[int]] = itertools.product(range(k), repeat=g.m)
    else:
        rng = random.Random(seed)
        forbidden_maps = [[rng.randrange(k) for _ in range(g.m)] for _ in range(samples)]
    tracker = (budget or SearchBudget.from_settings()).tracker()
    zero = (0,) * g.vertex_count
    try:
        for forbidden in forbidden_maps:
            if zero not in _reachable_boundaries(g, k, forbidden, tracker):
                logger.debug("forbidden map %s cannot be avoided", tuple(forbidden))
                return False
    except BudgetExhausted:
        return None
    return True
