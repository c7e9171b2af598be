"""
Plane embeddings, duals, homomorphisms to negative cycles and folding.

An embedding is given explicitly as a list of faces. A face is a closed
walk of darts; a dart is ``(edge_id, reversed)`` and runs from the first to
the second endpoint of its edge when ``reversed`` is False. Every dart
appears in exactly one face.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from .budget import BudgetTracker, Outcome, SearchBudget
from .config import get_settings
from .exceptions import BudgetExhausted, ContractViolation, ValidationError
from .graph import (
    NEGATIVE,
    POSITIVE,
    UNBOUNDED,
    Bound,
    Edge,
    Orientation,
    SignedGraph,
    fundamental_cycles,
    is_switching_equivalent,
    switch,
)
from .solver import IndexStatus, circular_chromatic_number, circular_flow_index

logger = logging.getLogger(__name__)

Dart = Tuple[int, bool]


def dart_ends(g: SignedGraph, dart: Dart) -> Tuple[int, int]:
    e, reversed_ = dart
    edge = g.edges[e]
    return (edge.w, edge.u) if reversed_ else (edge.u, edge.w)


def reverse_dart(dart: Dart) -> Dart:
    return dart[0], not dart[1]


@dataclass(frozen=True)
class PlaneEmbedding:
    faces: Tuple[Tuple[Dart, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "faces", tuple(tuple((int(e), bool(r)) for e, r in face) for face in self.faces)
        )

    @property
    def face_count(self) -> int:
        return len(self.faces)

    def face_of(self) -> Dict[Dart, int]:
        return {dart: i for i, face in enumerate(self.faces) for dart in face}

    def face_vertices(self, g: SignedGraph, index: int) -> List[int]:
        return [dart_ends(g, d)[0] for d in self.faces[index]]

    def face_sign(self, g: SignedGraph, index: int) -> int:
        sign = POSITIVE
        for e, _ in self.faces[index]:
            sign *= g.sign(e)
        return sign


def validate_embedding(g: SignedGraph, emb: PlaneEmbedding) -> None:
    """Raise ValidationError unless every dart is used once, faces close up and Euler's formula holds."""
    seen: Dict[Dart, int] = {}
    for i, face in enumerate(emb.faces):
        if not face:
            raise ValidationError(f"face {i} is empty")
        for j, dart in enumerate(face):
            if not 0 <= dart[0] < g.m:
                raise ValidationError(f"face {i} uses unknown edge {dart[0]}", edge=dart[0])
            if dart in seen:
                raise ValidationError(f"edge {dart[0]} traversed twice in the same direction", edge=dart[0])
            seen[dart] = i
            if dart_ends(g, dart)[1] != dart_ends(g, face[(j + 1) % len(face)])[0]:
                raise ValidationError(f"face {i} is not a closed walk at position {j}")
    for e in range(g.m):
        for dart in ((e, False), (e, True)):
            if dart not in seen:
                raise ValidationError(f"edge {e} is missing a side", edge=e)
    simple = g.to_simple_graph()
    for component in nx.connected_components(simple):
        edges = [e.id for e in g.edges if e.u in component]
        if not edges:
            continue
        faces = {seen[(e, False)] for e in edges} | {seen[(e, True)] for e in edges}
        euler = len(component) - len(edges) + len(faces)
        if euler != 2:
            raise ValidationError(f"component containing {min(component)} has Euler characteristic {euler}, not 2")


def _next_in_face(emb: PlaneEmbedding) -> Dict[Dart, Dart]:
    following = {}
    for face in emb.faces:
        for j, dart in enumerate(face):
            following[dart] = face[(j + 1) % len(face)]
    return following


def dual(g: SignedGraph, emb: PlaneEmbedding) -> Tuple[SignedGraph, PlaneEmbedding]:
    """
    Faces become vertices; edge e* joins the faces on the two sides of e and
    keeps the sign of e. Dual faces follow the rotation at each primal vertex.
    """
    validate_embedding(g, emb)
    if not g.is_connected() or g.m == 0:
        raise ValidationError("dual needs a connected graph with at least one edge")
    face_of = emb.face_of()
    edges = []
    for e in g.edges:
        a, b = face_of[(e.id, False)], face_of[(e.id, True)]
        if a == b:
            raise ValidationError(f"edge {e.id} is a bridge, its dual would be a loop", edge=e.id)
        edges.append(Edge(e.id, a, b, e.sign))
    dual_graph = SignedGraph(emb.face_count, tuple(edges))

    following = _next_in_face(emb)
    leaving: Dict[int, List[Dart]] = {v: [] for v in range(g.vertex_count)}
    for dart in following:
        leaving[dart_ends(g, dart)[0]].append(dart)
    faces = []
    for v in range(g.vertex_count):
        start = min(leaving[v])
        cycle = [start]
        dart = following[reverse_dart(start)]
        while dart != start:
            cycle.append(dart)
            dart = following[reverse_dart(dart)]
        faces.append(tuple(cycle))
    dual_emb = PlaneEmbedding(tuple(faces))
    validate_embedding(dual_graph, dual_emb)
    return dual_graph, dual_emb


@dataclass(frozen=True)
class DualityCheck:
    holds: Optional[bool]
    flow_index: Optional[Fraction]
    chromatic_number: Optional[Fraction]


def check_duality(g: SignedGraph, emb: PlaneEmbedding, budget: Optional[SearchBudget] = None) -> DualityCheck:
    """Compare the flow index of g with the circular chromatic number of its dual; None when either is undecided."""
    budget = budget or SearchBudget.from_settings()
    dual_graph, _ = dual(g, emb)
    flow = circular_flow_index(g, budget)
    bound = max(2 * g.m, get_settings().chromatic_bound_factor * dual_graph.vertex_count)
    chromatic = circular_chromatic_number(dual_graph, budget, numerator_bound=bound)
    if flow.status is not IndexStatus.EXACT or chromatic.status is not IndexStatus.EXACT:
        return DualityCheck(None, flow.value, chromatic.value)
    logger.info("flow index %s, dual chromatic number %s", flow.value, chromatic.value)
    return DualityCheck(flow.value == chromatic.value, flow.value, chromatic.value)


def subdivide_embedding(g: SignedGraph, emb: PlaneEmbedding) -> PlaneEmbedding:
    """The embedding of T_2(g): dart e becomes the darts of its two halves 2e and 2e+1."""
    validate_embedding(g, emb)
    faces = []
    for face in emb.faces:
        walk: List[Dart] = []
        for e, reversed_ in face:
            walk.extend([(2 * e + 1, True), (2 * e, True)] if reversed_ else [(2 * e, False), (2 * e + 1, False)])
        faces.append(tuple(walk))
    return PlaneEmbedding(tuple(faces))


# --------------------------------------------------------------------------
# Negative girth
# --------------------------------------------------------------------------


def negative_girth(g: SignedGraph) -> Bound:
    """Shortest closed walk through (v,+) and (v,-) in the signed double cover, minimised over v."""
    cover = nx.Graph()
    for e in g.edges:
        for s in (POSITIVE, NEGATIVE):
            cover.add_edge((e.u, s), (e.w, s * e.sign))
    best: Optional[int] = None
    for v in range(g.vertex_count):
        if (v, POSITIVE) not in cover:
            continue
        try:
            length = nx.shortest_path_length(cover, (v, POSITIVE), (v, NEGATIVE))
        except nx.NetworkXNoPath:
            continue
        best = length if best is None else min(best, length)
    return UNBOUNDED if best is None else best


# --------------------------------------------------------------------------
# Homomorphisms to negative cycles
# --------------------------------------------------------------------------


def negative_cycle_target(k: int, negated: bool = False) -> SignedGraph:
    """C_{-k} on 0..k-1, edge j = (j, j+1 mod k), only edge k-1 negative; ``negated`` flips every sign."""
    if k < 2:
        raise ValidationError(f"negative cycles have length at least 2, got {k}")
    flip = -1 if negated else 1
    return SignedGraph.from_edges(k, [(j, (j + 1) % k, flip * (NEGATIVE if j == k - 1 else POSITIVE)) for j in range(k)])


@dataclass(frozen=True)
class HomomorphismMapping:
    target_length: int
    vertex_image: Tuple[int, ...]
    edge_image: Tuple[int, ...]
    switching_set: FrozenSet[int]
    negated: bool = False

    def target(self) -> SignedGraph:
        return negative_cycle_target(self.target_length, self.negated)


def verify_homomorphism(g: SignedGraph, mapping: HomomorphismMapping) -> bool:
    target = mapping.target()
    if len(mapping.vertex_image) != g.vertex_count or len(mapping.edge_image) != g.m:
        raise ValidationError("mapping does not cover the graph")
    switched = switch(g, mapping.switching_set)
    for e in switched.edges:
        image = target.edges[mapping.edge_image[e.id]]
        ends = {mapping.vertex_image[e.u], mapping.vertex_image[e.w]}
        if ends != {image.u, image.w} or e.sign != image.sign:
            return False
    return True


@dataclass(frozen=True)
class HomomorphismDecision:
    outcome: Outcome
    mapping: Optional[HomomorphismMapping] = None

    @property
    def found(self) -> bool:
        return self.outcome is Outcome.FOUND


class _HomSearch:
    """Vertex images with a switching bit each; component roots keep bit 0."""

    def __init__(self, g: SignedGraph, target: SignedGraph, tracker: BudgetTracker):
        self.g = g
        self.k = target.vertex_count
        self.tracker = tracker
        self.between: Dict[Tuple[int, int, int], int] = {}
        for t in target.edges:
            self.between.setdefault((t.u, t.w, t.sign), t.id)
            self.between.setdefault((t.w, t.u, t.sign), t.id)
        self.order: List[int] = []
        self.roots = set()
        simple = g.to_simple_graph()
        for component in g.components():
            root = min(component)
            self.roots.add(root)
            self.order.append(root)
            self.order.extend(b for _, b in nx.bfs_edges(simple, root))
        self.image: List[Optional[int]] = [None] * g.vertex_count
        self.bit = [0] * g.vertex_count

    def _edge_target(self, e: Edge) -> Optional[int]:
        sign = e.sign * (-1 if self.bit[e.u] != self.bit[e.w] else 1)
        return self.between.get((self.image[e.u], self.image[e.w], sign))

    def _consistent(self, v: int) -> bool:
        for e in self.g.incident(v):
            edge = self.g.edges[e]
            if self.image[edge.other(v)] is None:
                continue
            if self._edge_target(edge) is None:
                return False
        return True

    def run(self) -> Optional[HomomorphismMapping]:
        if not self._extend(0):
            return None
        edge_image = tuple(self._edge_target(e) for e in self.g.edges)
        switching = frozenset(v for v in range(self.g.vertex_count) if self.bit[v])
        return HomomorphismMapping(self.k, tuple(self.image), edge_image, switching)

    def _extend(self, i: int) -> bool:
        if i == len(self.order):
            return True
        v = self.order[i]
        bits = (0,) if v in self.roots else (0, 1)
        for image in range(self.k):
            for bit in bits:
                self.tracker.charge()
                self.image[v], self.bit[v] = image, bit
                if self._consistent(v) and self._extend(i + 1):
                    return True
        self.image[v], self.bit[v] = None, 0
        return False


def hom_to_negative_cycle(
    g: SignedGraph, k: int, budget: Optional[SearchBudget] = None, negated: bool = False
) -> HomomorphismDecision:
    """Search for a switching homomorphism to C_{-k}, or to -C_{-k} with ``negated``."""
    target = negative_cycle_target(k, negated)
    tracker = (budget or SearchBudget.from_settings()).tracker()
    try:
        mapping = _HomSearch(g, target, tracker).run()
    except BudgetExhausted:
        return HomomorphismDecision(Outcome.UNKNOWN)
    if mapping is None:
        return HomomorphismDecision(Outcome.NONE)
    mapping = HomomorphismMapping(mapping.target_length, mapping.vertex_image, mapping.edge_image, mapping.switching_set, negated)
    if not verify_homomorphism(g, mapping):
        raise ContractViolation("search produced an invalid homomorphism")
    logger.debug("homomorphism to C_-%d found after %d nodes", k, tracker.nodes)
    return HomomorphismDecision(Outcome.FOUND, mapping)


def _as_negated_target(mapping: HomomorphismMapping) -> HomomorphismMapping:
    # switching C_{-k} at its odd vertices gives -C_{-k} when k is even
    if mapping.negated:
        return mapping
    if mapping.target_length % 2:
        raise ValidationError("an odd negative cycle is not switching equivalent to its negation")
    odd = frozenset(v for v, image in enumerate(mapping.vertex_image) if image % 2)
    return HomomorphismMapping(
        mapping.target_length, mapping.vertex_image, mapping.edge_image, mapping.switching_set ^ odd, True
    )


def hom_partition(g: SignedGraph, mapping: HomomorphismMapping) -> Tuple[Tuple[Tuple[int, ...], ...], Orientation]:
    """Preimages of the target edges, and the orientation induced by the directed target cycle."""
    mapping = _as_negated_target(mapping)
    target = mapping.target()
    parts: List[List[int]] = [[] for _ in range(mapping.target_length)]
    arcs = []
    for e in g.edges:
        j = mapping.edge_image[e.id]
        parts[j].append(e.id)
        arcs.append((e.u, e.w) if mapping.vertex_image[e.u] == target.edges[j].u else (e.w, e.u))
    return tuple(tuple(p) for p in parts), Orientation(tuple(arcs))


def _cycle_counts(g: SignedGraph, D: Orientation, cycle: Sequence[Tuple[int, int]], part_of: Dict[int, int], size: int) -> List[int]:
    counts = [0] * size
    for e, direction in cycle:
        forward = D.agrees_with(g, e) == (direction == 1)
        counts[part_of[e]] += 1 if forward else -1
    return counts


def winding_numbers(g: SignedGraph, mapping: HomomorphismMapping) -> List[int]:
    """Forward minus backward edges mapped to target edge 0, per fundamental cycle."""
    parts, D = hom_partition(g, mapping)
    part_of = {e: i for i, part in enumerate(parts) for e in part}
    return [_cycle_counts(g, D, cycle, part_of, len(parts))[0] for cycle in fundamental_cycles(g)]


def verify_hom_partition(g: SignedGraph, parts: Sequence[Iterable[int]], D: Orientation) -> bool:
    """
    Every part, as a positive edge set, is switching equivalent to sigma, and
    on every fundamental cycle all parts have the same forward minus backward count.
    """
    D.check(g)
    parts = [tuple(part) for part in parts]
    covered = sorted(e for part in parts for e in part)
    if covered != list(range(g.m)):
        raise ValidationError("parts do not partition the edge set")
    for part in parts:
        chosen = set(part)
        signature = g.with_signs([POSITIVE if e in chosen else NEGATIVE for e in range(g.m)])
        if not is_switching_equivalent(signature, g):
            return False
    part_of = {e: i for i, part in enumerate(parts) for e in part}
    for cycle in fundamental_cycles(g):
        if len(set(_cycle_counts(g, D, cycle, part_of, len(parts)))) > 1:
            return False
    return True


# --------------------------------------------------------------------------
# Folding
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class FoldResult:
    graph: SignedGraph
    embedding: PlaneEmbedding
    vertex_map: Tuple[int, ...]


def _is_saturated_face(g: SignedGraph, emb: PlaneEmbedding, index: int, girth: int) -> bool:
    face = emb.faces[index]
    vertices = emb.face_vertices(g, index)
    return len(face) == girth and len(set(vertices)) == len(vertices) and emb.face_sign(g, index) == NEGATIVE


def _fold_preconditions(g: SignedGraph, emb: PlaneEmbedding) -> int:
    validate_embedding(g, emb)
    if not nx.is_bipartite(g.to_simple_graph()):
        raise ValidationError("folding needs a bipartite graph")
    girth = negative_girth(g)
    if girth is UNBOUNDED:
        raise ValidationError("folding needs a negative cycle")
    return girth


def _merge_digons(edges: Dict[int, Edge], faces: List[List[Dart]]) -> None:
    """Drop faces bounded by two parallel same-sign edges, keeping the smaller edge id."""
    merged = True
    while merged:
        merged = False
        for index, face in enumerate(faces):
            if len(face) != 2:
                continue
            x, y = face
            if x[0] == y[0] or edges[x[0]].sign != edges[y[0]].sign:
                continue
            if x[0] > y[0]:
                x, y = y, x
            del faces[index]
            del edges[y[0]]
            other = reverse_dart(y)
            for f in faces:
                for j, dart in enumerate(f):
                    if dart == other:
                        f[j] = x
            merged = True
            break


def _reindex(vertex_count: int, edges: Dict[int, Edge], faces: List[List[Dart]], keep: int, drop: int) -> FoldResult:
    vertex_map = tuple(keep if v == drop else v if v < drop else v - 1 for v in range(vertex_count))
    new_id = {old: i for i, old in enumerate(sorted(edges))}
    new_edges = tuple(
        Edge(new_id[old], vertex_map[edges[old].u], vertex_map[edges[old].w], edges[old].sign) for old in sorted(edges)
    )
    graph = SignedGraph(vertex_count - 1, new_edges)
    embedding = PlaneEmbedding(tuple(tuple((new_id[e], r) for e, r in face) for face in faces))
    return FoldResult(graph, embedding, vertex_map)


def _try_fold(g: SignedGraph, emb: PlaneEmbedding, index: int, j: int) -> Optional[FoldResult]:
    face = emb.faces[index]
    first, second = face[j], face[(j + 1) % len(face)]
    a, b = dart_ends(g, first)
    c = dart_ends(g, second)[1]
    if a == c or first[0] == second[0]:
        return None
    keep, drop = min(a, c), max(a, c)
    g = switch(g, {c}) if g.sign(first[0]) != g.sign(second[0]) else g
    edges = {e.id: e._replace(u=keep if e.u == drop else e.u, w=keep if e.w == drop else e.w) for e in g.edges}
    faces = [list(f) for i, f in enumerate(emb.faces) if i != index]
    rest = [face[(j + 2 + t) % len(face)] for t in range(len(face) - 2)]
    faces.append([first, second])
    if rest:
        faces.append(rest)
    _merge_digons(edges, faces)
    if any(e.u == e.w for e in edges.values()):
        return None
    return _reindex(g.vertex_count, edges, faces, keep, drop)


def fold_once(g: SignedGraph, emb: PlaneEmbedding, face_index: Optional[int] = None) -> FoldResult:
    """
    Identify the ends of a two-edge boundary segment of one face.

    The segment's second end is switched first when the two edges disagree
    in sign. Candidates are tried in boundary order; the first one that keeps
    the graph bipartite, the embedding valid and the negative girth unchanged
    is taken.
    """
    girth = _fold_preconditions(g, emb)
    if face_index is None:
        pending = [i for i in range(emb.face_count) if not _is_saturated_face(g, emb, i, girth)]
        if not pending:
            raise ValidationError(f"every face is already a negative {girth}-cycle")
        face_index = pending[0]
    if not 0 <= face_index < emb.face_count:
        raise ValidationError(f"no face {face_index}")
    if _is_saturated_face(g, emb, face_index, girth):
        raise ValidationError(f"face {face_index} is already a negative {girth}-cycle")
    for j in range(len(emb.faces[face_index])):
        candidate = _try_fold(g, emb, face_index, j)
        if candidate is None:
            continue
        try:
            validate_embedding(candidate.graph, candidate.embedding)
        except ValidationError:
            continue
        if not nx.is_bipartite(candidate.graph.to_simple_graph()):
            continue
        if negative_girth(candidate.graph) != girth:
            continue
        logger.debug("folded face %d at position %d", face_index, j)
        return candidate
    raise ContractViolation(f"no boundary segment of face {face_index} folds while keeping negative girth {girth}")


def fold_to_saturation(g: SignedGraph, emb: PlaneEmbedding) -> FoldResult:
    """Fold until every face is a negative cycle of the negative girth."""
    girth = _fold_preconditions(g, emb)
    vertex_map = tuple(range(g.vertex_count))
    while any(not _is_saturated_face(g, emb, i, girth) for i in range(emb.face_count)):
        step = fold_once(g, emb)
        vertex_map = tuple(step.vertex_map[v] for v in vertex_map)
        g, emb = step.graph, step.embedding
    return FoldResult(g, emb, vertex_map)


def is_saturated(g: SignedGraph, emb: PlaneEmbedding) -> bool:
    girth = _fold_preconditions(g, emb)
    return all(_is_saturated_face(g, emb, i, girth) for i in range(emb.face_count))
