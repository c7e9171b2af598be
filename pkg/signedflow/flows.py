"""
Flow values, their verification, and the cut machinery around them.

Four notions share one description. A kind fixes a circumference ``C`` and a
unit ``U`` (``C = r, U = 1`` for circular kinds, ``C = p, U = q`` for the
integer kinds):

* positive edges take ``U <= |f| <= C - U``;
* negative edges take ``|f| <= C/2 - U`` or ``C/2 + U <= |f| < C``;
* signed kinds balance exactly, modulo kinds balance modulo ``C`` and keep
  values in ``[0, C)``.

All arithmetic is on ``fractions.Fraction``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx
from networkx.algorithms.flow import edmonds_karp

from .config import get_settings
from .exceptions import ContractViolation, GuardError, ValidationError
from .graph import NEGATIVE, POSITIVE, Cut, Orientation, SignedGraph, cut

logger = logging.getLogger(__name__)

Number = Union[int, Fraction]


class KindName(str, Enum):
    CIRCULAR_R = "circular-r"
    PQ = "pq"
    MOD_PQ = "mod-pq"
    CIRCULAR_MOD_R = "circular-mod-r"


@dataclass(frozen=True)
class FlowKind:
    """Which flow notion a value vector is checked against."""

    name: KindName
    r: Fraction
    p: Optional[int] = None
    q: Optional[int] = None

    @classmethod
    def circular(cls, r: Number) -> "FlowKind":
        r = Fraction(r)
        if r < 2:
            raise ValidationError(f"circular flows need r >= 2, got {r}")
        return cls(KindName.CIRCULAR_R, r)

    @classmethod
    def circular_mod(cls, r: Number) -> "FlowKind":
        r = Fraction(r)
        if r < 2:
            raise ValidationError(f"circular flows need r >= 2, got {r}")
        return cls(KindName.CIRCULAR_MOD_R, r)

    @classmethod
    def pq(cls, p: int, q: int) -> "FlowKind":
        _check_pq(p, q)
        return cls(KindName.PQ, Fraction(p, q), p, q)

    @classmethod
    def mod_pq(cls, p: int, q: int) -> "FlowKind":
        _check_pq(p, q)
        return cls(KindName.MOD_PQ, Fraction(p, q), p, q)

    @property
    def signed(self) -> bool:
        return self.name in (KindName.CIRCULAR_R, KindName.PQ)

    @property
    def integral(self) -> bool:
        return self.name in (KindName.PQ, KindName.MOD_PQ)

    @property
    def circumference(self) -> Fraction:
        return Fraction(self.p) if self.integral else self.r

    @property
    def unit(self) -> Fraction:
        return Fraction(self.q) if self.integral else Fraction(1)

    def allows(self, sign: int, value: Number) -> bool:
        """Whether a single edge value is admissible for an edge of this sign."""
        C, U = self.circumference, self.unit
        if self.signed:
            magnitude = abs(value)
        else:
            if not 0 <= value < C:
                return False
            magnitude = value
        if magnitude >= C:
            return False
        if sign == POSITIVE:
            return U <= magnitude <= C - U
        return magnitude <= C / 2 - U or C / 2 + U <= magnitude

    def describe(self) -> str:
        if self.integral:
            return f"{self.name.value} {self.p} {self.q}"
        return f"{self.name.value} {self.r}"


def _check_pq(p: int, q: int) -> None:
    if p <= 0 or p % 2:
        raise ValidationError(f"p must be a positive even integer, got {p}")
    if q < 1 or 2 * q > p:
        raise ValidationError(f"need 1 <= 2q <= p, got p={p}, q={q}")


def even_lift(r: Number) -> Tuple[int, int]:
    """(p, q) with p/q = r and p even: the reduced fraction, doubled when its numerator is odd."""
    r = Fraction(r)
    if r.numerator % 2:
        return 2 * r.numerator, 2 * r.denominator
    return r.numerator, r.denominator


@dataclass(frozen=True)
class FlowAssignment:
    values: Tuple[Fraction, ...]
    kind: FlowKind

    def __post_init__(self):
        values = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if self.kind.integral:
            for e, v in enumerate(values):
                if v.denominator != 1:
                    raise ValidationError(f"{self.kind.name.value} flows are integral, edge {e} has {v}", edge=e)
        if self.kind.name is KindName.MOD_PQ:
            for e, v in enumerate(values):
                if not 0 <= v < self.kind.p:
                    raise ValidationError(f"modulo values lie in 0..{self.kind.p - 1}, edge {e} has {v}", edge=e)

    def __getitem__(self, e: int) -> Fraction:
        return self.values[e]

    def __len__(self) -> int:
        return len(self.values)

    def replace(self, e: int, value: Number) -> "FlowAssignment":
        values = list(self.values)
        values[e] = Fraction(value)
        return FlowAssignment(tuple(values), self.kind)


@dataclass(frozen=True)
class Violation:
    where: str
    index: int
    message: str


@dataclass(frozen=True)
class FlowCheck:
    ok: bool
    violation: Optional[Violation] = None

    def __bool__(self) -> bool:
        return self.ok


def _check_cover(g: SignedGraph, D: Orientation, f: FlowAssignment) -> None:
    D.check(g)
    if len(f) != g.m:
        raise ValidationError(f"flow has {len(f)} values, graph has {g.m} edges")


def vertex_boundaries(g: SignedGraph, D: Orientation, f: FlowAssignment) -> List[Fraction]:
    result = [Fraction(0)] * g.vertex_count
    for e, (t, h) in enumerate(D.arcs):
        result[t] += f[e]
        result[h] -= f[e]
    return result


def boundary(g: SignedGraph, D: Orientation, f: FlowAssignment, X: Iterable[int]) -> Fraction:
    """Outflow minus inflow across the cut (X, X^c)."""
    _check_cover(g, D, f)
    X = frozenset(X)
    total = Fraction(0)
    for e, (t, h) in enumerate(D.arcs):
        if t in X and h not in X:
            total += f[e]
        elif h in X and t not in X:
            total -= f[e]
    return total


def verify_flow(g: SignedGraph, D: Orientation, f: FlowAssignment) -> FlowCheck:
    _check_cover(g, D, f)
    kind = f.kind
    for e in g.edges:
        if not kind.allows(e.sign, f[e.id]):
            return FlowCheck(False, Violation("edge", e.id, f"value {f[e.id]} not admissible for sign {e.sign:+d}"))
    for v, total in enumerate(vertex_boundaries(g, D, f)):
        balanced = total == 0 if kind.signed else total % kind.circumference == 0
        if not balanced:
            return FlowCheck(False, Violation("vertex", v, f"boundary {total} at vertex {v}"))
    return FlowCheck(True)


def negate_edge(D: Orientation, f: FlowAssignment, e: int) -> Tuple[Orientation, FlowAssignment]:
    if not f.kind.signed:
        raise ValidationError("only signed-value flows can be negated edgewise")
    return D.flipped(e), f.replace(e, -f[e])


def nonnegative(D: Orientation, f: FlowAssignment) -> Tuple[Orientation, FlowAssignment]:
    """Reverse every arc carrying a negative value."""
    for e, value in enumerate(f.values):
        if value < 0:
            D, f = negate_edge(D, f, e)
    return D, f


def scale_flow(f: FlowAssignment, r_new: Number) -> FlowAssignment:
    if f.kind.name is not KindName.CIRCULAR_R:
        raise ValidationError("scaling applies to circular r-flows")
    r_new = Fraction(r_new)
    factor = r_new / f.kind.r
    return FlowAssignment(tuple(v * factor for v in f.values), FlowKind.circular(r_new))


def pq_to_circular(f: FlowAssignment) -> FlowAssignment:
    """Divide a (p,q)-flow by q to get a circular p/q-flow."""
    if f.kind.name is not KindName.PQ:
        raise ValidationError("expected a (p,q)-flow")
    q = f.kind.q
    return FlowAssignment(tuple(v / q for v in f.values), FlowKind.circular(f.kind.r))


def modulo_to_integer(g: SignedGraph, D: Orientation, f: FlowAssignment) -> FlowAssignment:
    """Lift a modulo (p,q)-flow to an integer (p,q)-flow congruent to it modulo p.

    Each nonzero edge keeps ``f(e)`` or drops to ``f(e) - p``. The 0/1 choice
    is a feasible flow with prescribed vertex excess ``boundary / p``, found by
    shortest augmenting paths between surplus and deficit vertices.
    """
    if f.kind.name is not KindName.MOD_PQ:
        raise ValidationError("expected a modulo (p,q)-flow")
    check = verify_flow(g, D, f)
    if not check:
        raise ValidationError(f"not a modulo flow: {check.violation.message}")
    p = f.kind.p
    excess = [int(b) // p for b in vertex_boundaries(g, D, f)]
    network = nx.DiGraph()
    network.add_nodes_from(["source", "sink"])
    pairs: Dict[Tuple[int, int], List[int]] = {}
    for e, (t, h) in enumerate(D.arcs):
        if f[e] == 0:
            continue
        pairs.setdefault((t, h), []).append(e)
    for (t, h), ids in pairs.items():
        network.add_edge(t, h, capacity=len(ids))
    demand = 0
    for v, x in enumerate(excess):
        if x > 0:
            network.add_edge("source", v, capacity=x)
            demand += x
        elif x < 0:
            network.add_edge(v, "sink", capacity=-x)
    values = [int(v) for v in f.values]
    if demand:
        value, flow = nx.maximum_flow(network, "source", "sink", flow_func=edmonds_karp)
        if value != demand:
            raise ContractViolation(f"rerouting moved {value} of {demand} units")
        for (t, h), ids in pairs.items():
            for e in ids[: flow[t][h]]:
                values[e] -= p
        logger.debug("rerouted %d edges by %d", sum(flow[t][h] for t, h in pairs), p)
    lifted = FlowAssignment(tuple(values), FlowKind.pq(p, f.kind.q))
    if not verify_flow(g, D, lifted):
        raise ContractViolation("lifted flow does not verify")
    return lifted


@dataclass(frozen=True)
class NegativePartition:
    """Negative edges split into the low range and the high range."""

    low: FrozenSet[int]
    high: FrozenSet[int]

    def __post_init__(self):
        object.__setattr__(self, "low", frozenset(self.low))
        object.__setattr__(self, "high", frozenset(self.high))

    def check(self, g: SignedGraph) -> None:
        if self.low & self.high:
            raise ValidationError("low and high sets overlap")
        if self.low | self.high != set(g.negative_edges):
            raise ValidationError("partition must cover exactly the negative edges")


def hoffman_bounds(g: SignedGraph, pi: NegativePartition, r: Number) -> List[Tuple[Fraction, Fraction]]:
    """Per-edge (s, t) bounds on a nonnegative flow along its arc."""
    r = Fraction(r)
    pi.check(g)
    bounds = []
    for e in g.edges:
        if e.sign == POSITIVE:
            bounds.append((Fraction(1), r - 1))
        elif e.id in pi.low:
            bounds.append((Fraction(0), r / 2 - 1))
        else:
            bounds.append((r / 2 + 1, r))
    return bounds


def hoffman_feasible(g: SignedGraph, D: Orientation, pi: NegativePartition, r: Number) -> bool:
    """Feasibility of a circulation with lower bounds s and upper bounds t, by one max-flow."""
    r = Fraction(r)
    if r < 2:
        raise ValidationError("r must be at least 2")
    D.check(g)
    scale = 2 * r.denominator
    bounds = [(int(s * scale), int(t * scale)) for s, t in hoffman_bounds(g, pi, r)]
    surplus = [0] * g.vertex_count
    network = nx.DiGraph()
    network.add_nodes_from(["source", "sink"])
    for e, (t, h) in enumerate(D.arcs):
        low, high = bounds[e]
        surplus[h] += low
        surplus[t] -= low
        if network.has_edge(t, h):
            network[t][h]["capacity"] += high - low
        else:
            network.add_edge(t, h, capacity=high - low)
    demand = 0
    for v, b in enumerate(surplus):
        if b > 0:
            network.add_edge("source", v, capacity=b)
            demand += b
        elif b < 0:
            network.add_edge(v, "sink", capacity=-b)
    if demand == 0:
        return True
    return nx.maximum_flow_value(network, "source", "sink", flow_func=edmonds_karp) == demand


def hoffman_feasible_by_cuts(
    g: SignedGraph, D: Orientation, pi: NegativePartition, r: Number, vertex_limit: Optional[int] = None
) -> bool:
    """The same question answered by checking every cut in both directions."""
    limit = vertex_limit if vertex_limit is not None else get_settings().hoffman_oracle_limit
    if g.vertex_count > limit:
        raise GuardError(f"all-cuts oracle over {g.vertex_count} vertices exceeds limit {limit}")
    D.check(g)
    bounds = hoffman_bounds(g, pi, r)
    n = g.vertex_count
    for mask in range(1, (1 << n) - 1):
        entering = Fraction(0)
        leaving = Fraction(0)
        for e, (t, h) in enumerate(D.arcs):
            t_in, h_in = (mask >> t) & 1, (mask >> h) & 1
            if h_in and not t_in:
                entering += bounds[e][0]
            elif t_in and not h_in:
                leaving += bounds[e][1]
        if entering > leaving:
            return False
    return True


@dataclass(frozen=True)
class TightCutReport:
    cut: Cut
    s1: int
    s2: int
    t1: int
    t2: int
    implied_r: Optional[Fraction]


def tight_cut_index(report: TightCutReport) -> Fraction:
    denominator = 2 * report.s1 + report.t1 - report.t2
    if denominator <= 0:
        raise ValidationError("cut cannot certify an index: nonpositive denominator")
    return Fraction(2 * (report.s1 + report.s2 + report.t1 + report.t2), denominator)


def find_tight_cut(g: SignedGraph, D: Orientation, f: FlowAssignment) -> Optional[TightCutReport]:
    """A cut whose every edge sits at its extreme value, or None.

    An arc can be crossed forward unless its value is at the top of its range
    and backward unless at the bottom; a tight cut is a proper closed set of
    this crossing relation. Negative extremes are read on the circle of
    length r, so at r = 2 a zero value blocks both directions.
    """
    if f.kind.name is not KindName.CIRCULAR_R:
        raise ValidationError("tight cuts are defined for circular r-flows")
    if any(v < 0 for v in f.values):
        raise ValidationError("tight cuts need a nonnegative flow")
    check = verify_flow(g, D, f)
    if not check:
        raise ValidationError(f"not a circular flow: {check.violation.message}")
    r = f.kind.r
    half = r / 2
    crossing = nx.DiGraph()
    crossing.add_nodes_from(range(g.vertex_count))
    for e in g.edges:
        t, h = D.arcs[e.id]
        value = f[e.id]
        if e.sign == POSITIVE:
            forward_blocked = value == r - 1
            backward_blocked = value == 1
        else:
            forward_blocked = value == half - 1
            backward_blocked = value == half + 1 or (value == 0 and half == 1)
        if not forward_blocked:
            crossing.add_edge(t, h)
        if not backward_blocked:
            crossing.add_edge(h, t)
    best: Optional[Tuple[int, ...]] = None
    for v in range(g.vertex_count):
        closure = tuple(sorted({v} | nx.descendants(crossing, v)))
        if len(closure) == g.vertex_count:
            continue
        inside = set(closure)
        if not any((e.u in inside) != (e.w in inside) for e in g.edges):
            continue
        if best is None or closure < best:
            best = closure
    if best is None:
        return None
    c = cut(g, best)
    s1 = s2 = t1 = t2 = 0
    for e in c.edge_ids:
        leaving = D.tail(e) in c.side
        if g.sign(e) == POSITIVE:
            if leaving:
                s1 += 1
            else:
                s2 += 1
        elif f[e] == half - 1:
            t1 += 1
        else:
            t2 += 1
    report = TightCutReport(c, s1, s2, t1, t2, None)
    if 2 * s1 + t1 - t2 > 0:
        report = TightCutReport(c, s1, s2, t1, t2, tight_cut_index(report))
    logger.debug("tight cut %s with s1=%d s2=%d t1=%d t2=%d", best, s1, s2, t1, t2)
    return report
