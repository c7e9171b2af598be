"""
Signed multigraphs and the operations that do not involve flows.

A ``SignedGraph`` is an immutable labelled multigraph with one sign per
edge. Edge ids are dense (0..m-1) so that parallel edges stay
distinguishable in orientations, flows and certificates. Loops are rejected.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

import networkx as nx

from .config import get_settings
from .exceptions import GraphMismatchError, GuardError, ValidationError

logger = logging.getLogger(__name__)

POSITIVE = 1
NEGATIVE = -1

_SIGN_TOKENS = {"+": POSITIVE, "-": NEGATIVE, "−": NEGATIVE, 1: POSITIVE, -1: NEGATIVE}


def parse_sign(token: Union[str, int]) -> int:
    try:
        return _SIGN_TOKENS[token]
    except KeyError:
        raise ValidationError(f"unknown sign {token!r}") from None


def sign_symbol(sign: int) -> str:
    return "+" if sign == POSITIVE else "-"


class Edge(NamedTuple):
    id: int
    u: int
    w: int
    sign: int

    def other(self, v: int) -> int:
        return self.w if v == self.u else self.u


class _Unbounded(Enum):
    UNBOUNDED = "unbounded"

    def __repr__(self) -> str:
        return "Unbounded"

    def __str__(self) -> str:
        return "unbounded"


UNBOUNDED = _Unbounded.UNBOUNDED
Bound = Union[int, _Unbounded]


@dataclass(frozen=True)
class SignedGraph:
    """The pair (G, sigma): vertices 0..n-1 and signed edges with dense ids."""

    vertex_count: int
    edges: Tuple[Edge, ...]

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValidationError("vertex count must be nonnegative")
        normalized = tuple(Edge(*e) for e in self.edges)
        object.__setattr__(self, "edges", normalized)
        for position, edge in enumerate(normalized):
            if edge.id != position:
                raise ValidationError(f"edge ids must be dense, found {edge.id} at {position}", edge=edge.id)
            for v in (edge.u, edge.w):
                if not 0 <= v < self.vertex_count:
                    raise ValidationError(f"edge {edge.id} has vertex {v} out of range", edge=edge.id, vertex=v)
            if edge.u == edge.w:
                raise ValidationError(f"edge {edge.id} is a loop at {edge.u}", edge=edge.id, vertex=edge.u)
            if edge.sign not in (POSITIVE, NEGATIVE):
                raise ValidationError(f"edge {edge.id} has sign {edge.sign!r}", edge=edge.id)

    @classmethod
    def from_edges(cls, vertex_count: int, triples: Iterable[Tuple[int, int, Union[str, int]]]) -> "SignedGraph":
        """Build from (u, w, sign) triples; ids follow iteration order."""
        edges = tuple(Edge(i, u, w, parse_sign(s)) for i, (u, w, s) in enumerate(triples))
        return cls(vertex_count, edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def signs(self) -> Tuple[int, ...]:
        return tuple(e.sign for e in self.edges)

    def sign(self, e: int) -> int:
        return self.edges[e].sign

    @cached_property
    def positive_edges(self) -> Tuple[int, ...]:
        return tuple(e.id for e in self.edges if e.sign == POSITIVE)

    @cached_property
    def negative_edges(self) -> Tuple[int, ...]:
        return tuple(e.id for e in self.edges if e.sign == NEGATIVE)

    @cached_property
    def _incidence(self) -> Tuple[Tuple[int, ...], ...]:
        incident: List[List[int]] = [[] for _ in range(self.vertex_count)]
        for e in self.edges:
            incident[e.u].append(e.id)
            incident[e.w].append(e.id)
        return tuple(tuple(ids) for ids in incident)

    def incident(self, v: int) -> Tuple[int, ...]:
        return self._incidence[v]

    def degree(self, v: int) -> int:
        return len(self._incidence[v])

    def positive_degree(self, v: int) -> int:
        return sum(1 for e in self._incidence[v] if self.edges[e].sign == POSITIVE)

    def negative_degree(self, v: int) -> int:
        return self.degree(v) - self.positive_degree(v)

    def with_signs(self, signs: Sequence[int]) -> "SignedGraph":
        if len(signs) != self.m:
            raise ValidationError(f"expected {self.m} signs, got {len(signs)}")
        return SignedGraph(self.vertex_count, tuple(e._replace(sign=s) for e, s in zip(self.edges, signs)))

    def all_positive(self) -> "SignedGraph":
        return self.with_signs([POSITIVE] * self.m)

    def all_negative(self) -> "SignedGraph":
        return self.with_signs([NEGATIVE] * self.m)

    def negated(self) -> "SignedGraph":
        """-(G, sigma): every sign flipped."""
        return self.with_signs([-s for s in self.signs])

    def same_underlying(self, other: "SignedGraph") -> bool:
        return self.vertex_count == other.vertex_count and all(
            (a.u, a.w) == (b.u, b.w) for a, b in zip(self.edges, other.edges)
        ) and self.m == other.m

    def require_same_underlying(self, other: "SignedGraph") -> None:
        if not self.same_underlying(other):
            raise GraphMismatchError("signed graphs do not share an underlying multigraph")

    def is_even(self) -> bool:
        return all(self.degree(v) % 2 == 0 for v in range(self.vertex_count))

    def odd_vertices(self) -> Tuple[int, ...]:
        return tuple(v for v in range(self.vertex_count) if self.degree(v) % 2)

    def to_multigraph(self) -> nx.MultiGraph:
        """Underlying multigraph keyed by edge id, with a ``sign`` attribute."""
        G = nx.MultiGraph()
        G.add_nodes_from(range(self.vertex_count))
        for e in self.edges:
            G.add_edge(e.u, e.w, key=e.id, sign=e.sign)
        return G

    def to_simple_graph(self) -> nx.Graph:
        """Underlying simple graph with a ``multiplicity`` attribute per vertex pair."""
        G = nx.Graph()
        G.add_nodes_from(range(self.vertex_count))
        for e in self.edges:
            if G.has_edge(e.u, e.w):
                G[e.u][e.w]["multiplicity"] += 1
            else:
                G.add_edge(e.u, e.w, multiplicity=1)
        return G

    def components(self) -> List[FrozenSet[int]]:
        return [frozenset(c) for c in sorted(nx.connected_components(self.to_simple_graph()), key=min)]

    def is_connected(self) -> bool:
        return self.vertex_count > 0 and len(self.components()) == 1

    def relabeled(self, permutation: Sequence[int]) -> "SignedGraph":
        """Vertex v becomes permutation[v]; edge ids are kept."""
        return SignedGraph(
            self.vertex_count,
            tuple(e._replace(u=permutation[e.u], w=permutation[e.w]) for e in self.edges),
        )

    def edge_subgraph(self, edge_ids: Iterable[int]) -> "SignedGraph":
        """Same vertices, selected edges renumbered in ascending id order."""
        chosen = sorted(set(edge_ids))
        return SignedGraph(
            self.vertex_count,
            tuple(Edge(i, self.edges[e].u, self.edges[e].w, self.edges[e].sign) for i, e in enumerate(chosen)),
        )


@dataclass(frozen=True)
class Orientation:
    """The orientation D: ``arcs[e]`` is the (tail, head) pair of edge e."""

    arcs: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple((int(t), int(h)) for t, h in self.arcs))

    @classmethod
    def reference(cls, g: SignedGraph) -> "Orientation":
        """Every edge oriented from its first to its second endpoint."""
        return cls(tuple((e.u, e.w) for e in g.edges))

    @classmethod
    def from_choices(cls, g: SignedGraph, reversed_edges: Iterable[int]) -> "Orientation":
        flipped = set(reversed_edges)
        return cls(tuple((e.w, e.u) if e.id in flipped else (e.u, e.w) for e in g.edges))

    def check(self, g: SignedGraph) -> None:
        if len(self.arcs) != g.m:
            raise ValidationError(f"orientation covers {len(self.arcs)} edges, graph has {g.m}")
        for e, (t, h) in zip(g.edges, self.arcs):
            if {t, h} != {e.u, e.w} or t == h:
                raise ValidationError(f"arc {t}->{h} does not match edge {e.id}", edge=e.id)

    def tail(self, e: int) -> int:
        return self.arcs[e][0]

    def head(self, e: int) -> int:
        return self.arcs[e][1]

    def agrees_with(self, g: SignedGraph, e: int) -> bool:
        """True when edge e is oriented from its first to its second endpoint."""
        return self.arcs[e] == (g.edges[e].u, g.edges[e].w)

    def flipped(self, e: int) -> "Orientation":
        arcs = list(self.arcs)
        t, h = arcs[e]
        arcs[e] = (h, t)
        return Orientation(tuple(arcs))

    def imbalance(self, vertex_count: int, edge_ids: Optional[Iterable[int]] = None) -> List[int]:
        """Out-degree minus in-degree per vertex, over all or the selected edges."""
        result = [0] * vertex_count
        for e in range(len(self.arcs)) if edge_ids is None else edge_ids:
            t, h = self.arcs[e]
            result[t] += 1
            result[h] -= 1
        return result


@dataclass(frozen=True)
class Cut:
    side: FrozenSet[int]
    edge_ids: Tuple[int, ...]

    def sign(self, g: SignedGraph) -> int:
        product = POSITIVE
        for e in self.edge_ids:
            product *= g.sign(e)
        return product


def cut(g: SignedGraph, side: Iterable[int]) -> Cut:
    """The edge cut (X, X^c) for a proper nonempty vertex set X."""
    X = frozenset(side)
    if not X or len(X) >= g.vertex_count or not X <= set(range(g.vertex_count)):
        raise ValidationError("cut side must be a proper nonempty vertex subset")
    return Cut(X, tuple(e.id for e in g.edges if (e.u in X) != (e.w in X)))


@dataclass(frozen=True)
class CutTypeProfile:
    """Smallest cut size per type ij (i: sign negative, j: size odd)."""

    c00: Bound
    c01: Bound
    c10: Bound
    c11: Bound

    def as_dict(self) -> Dict[str, Bound]:
        return {"c00": self.c00, "c01": self.c01, "c10": self.c10, "c11": self.c11}


def switch(g: SignedGraph, S: Iterable[int]) -> SignedGraph:
    """Flip the signs on the coboundary of S."""
    S = set(S)
    return g.with_signs([-e.sign if (e.u in S) != (e.w in S) else e.sign for e in g.edges])


def invert_on(g: SignedGraph, F: Iterable[int]) -> SignedGraph:
    """Flip the signs of an even-degree edge subset F."""
    F = set(F)
    parity = [0] * g.vertex_count
    for e in F:
        if not 0 <= e < g.m:
            raise ValidationError(f"edge {e} not in graph", edge=e)
        parity[g.edges[e].u] ^= 1
        parity[g.edges[e].w] ^= 1
    for v, odd in enumerate(parity):
        if odd:
            raise ValidationError(f"edge set has odd degree at vertex {v}", vertex=v)
    return g.with_signs([-e.sign if e.id in F else e.sign for e in g.edges])


def negative_cut_vertices(g: SignedGraph) -> FrozenSet[int]:
    """The set T of vertices whose singleton cut is negative."""
    return frozenset(v for v in range(g.vertex_count) if g.negative_degree(v) % 2)


def is_inversing_equivalent(g1: SignedGraph, g2: SignedGraph) -> bool:
    g1.require_same_underlying(g2)
    return negative_cut_vertices(g1) == negative_cut_vertices(g2)


def count_inversing_classes(g: SignedGraph) -> int:
    return 2 ** (g.vertex_count - len(g.components()))


def spanning_forest(g: SignedGraph) -> Tuple[int, ...]:
    """Edge ids of a spanning forest, chosen by Kruskal in edge-id order."""
    edges = nx.minimum_spanning_edges(g.to_multigraph(), algorithm="kruskal", keys=True, data=False)
    return tuple(sorted(key for _, _, key in edges))


@dataclass(frozen=True)
class _RootedForest:
    parent: Dict[int, Tuple[int, int]]
    depth: Dict[int, int]

    def path(self, u: int, w: int) -> List[int]:
        """Edge ids on the forest path between u and w."""
        left: List[int] = []
        right: List[int] = []
        while u != w:
            if self.depth[u] >= self.depth[w]:
                u, e = self.parent[u]
                left.append(e)
            else:
                w, e = self.parent[w]
                right.append(e)
        return left + right[::-1]


def _root_forest(g: SignedGraph, forest: Iterable[int]) -> _RootedForest:
    T = nx.Graph()
    T.add_nodes_from(range(g.vertex_count))
    for e in forest:
        T.add_edge(g.edges[e].u, g.edges[e].w, id=e)
    parent: Dict[int, Tuple[int, int]] = {}
    depth: Dict[int, int] = {}
    for component in sorted(nx.connected_components(T), key=min):
        root = min(component)
        depth[root] = 0
        for a, b in nx.bfs_edges(T, root):
            parent[b] = (a, T[a][b]["id"])
            depth[b] = depth[a] + 1
    return _RootedForest(parent, depth)


def _switching_potential(g: SignedGraph, rooted: _RootedForest) -> List[int]:
    potential = [POSITIVE] * g.vertex_count
    for v in sorted(rooted.depth, key=rooted.depth.__getitem__):
        if v in rooted.parent:
            p, e = rooted.parent[v]
            potential[v] = potential[p] * g.sign(e)
    return potential


def _fundamental_cycle_signs(g: SignedGraph, forest: Sequence[int]) -> Tuple[int, ...]:
    rooted = _root_forest(g, forest)
    potential = _switching_potential(g, rooted)
    in_forest = set(forest)
    return tuple(e.sign * potential[e.u] * potential[e.w] for e in g.edges if e.id not in in_forest)


def is_switching_equivalent(g1: SignedGraph, g2: SignedGraph) -> bool:
    """Equal signs on every fundamental cycle of one spanning forest."""
    g1.require_same_underlying(g2)
    forest = spanning_forest(g1)
    return _fundamental_cycle_signs(g1, forest) == _fundamental_cycle_signs(g2, forest)


def switching_witness(g1: SignedGraph, g2: SignedGraph) -> Optional[FrozenSet[int]]:
    """A vertex set S with switch(g1, S) == g2, or None."""
    if not is_switching_equivalent(g1, g2):
        return None
    rooted = _root_forest(g1, spanning_forest(g1))
    p1 = _switching_potential(g1, rooted)
    p2 = _switching_potential(g2, rooted)
    return frozenset(v for v in range(g1.vertex_count) if p1[v] != p2[v])


def fundamental_cycles(g: SignedGraph) -> List[Tuple[Tuple[int, int], ...]]:
    """
    One closed walk per non-forest edge: the edge from its first endpoint,
    then the forest path back. Entries are (edge id, +1 if traversed from
    first to second endpoint else -1).
    """
    forest = spanning_forest(g)
    rooted = _root_forest(g, forest)
    in_forest = set(forest)
    cycles = []
    for e in g.edges:
        if e.id in in_forest:
            continue
        walk = [(e.id, 1)]
        v = e.w
        for f in rooted.path(e.w, e.u):
            walk.append((f, 1 if g.edges[f].u == v else -1))
            v = g.edges[f].other(v)
        cycles.append(tuple(walk))
    return cycles


def normalize_to_tree(g: SignedGraph, tree: Iterable[int]) -> SignedGraph:
    """Inversing-equivalent signature whose negative edges all lie in the spanning tree."""
    tree = sorted(set(tree))
    if not g.is_connected():
        raise ValidationError("normalize_to_tree needs a connected graph")
    T = nx.Graph()
    T.add_nodes_from(range(g.vertex_count))
    for e in tree:
        if not 0 <= e < g.m:
            raise ValidationError(f"edge {e} not in graph", edge=e)
        T.add_edge(g.edges[e].u, g.edges[e].w)
    if len(tree) != g.vertex_count - 1 or not nx.is_tree(T):
        raise ValidationError("edge set is not a spanning tree")
    rooted = _root_forest(g, tree)
    signs = list(g.signs)
    in_tree = set(tree)
    for e in g.edges:
        if e.id in in_tree or signs[e.id] == POSITIVE:
            continue
        cycle = [e.id] + rooted.path(e.u, e.w)
        logger.debug("inversing on fundamental cycle %s", cycle)
        for c in cycle:
            signs[c] = -signs[c]
    return g.with_signs(signs)


def inversing_class_representatives(g: SignedGraph) -> Iterator[SignedGraph]:
    """One signature per inversing class: negative edges range over subsets of a spanning forest."""
    forest = spanning_forest(g)
    for size in range(len(forest) + 1):
        for chosen in itertools.combinations(forest, size):
            negative = set(chosen)
            yield g.with_signs([NEGATIVE if e in negative else POSITIVE for e in range(g.m)])


def signature_from_tjoin(g: SignedGraph, tjoin: Iterable[int]) -> SignedGraph:
    """The signature whose negative edges are exactly the given T-join."""
    negative = set(tjoin)
    return g.with_signs([NEGATIVE if e in negative else POSITIVE for e in range(g.m)])


def cut_type_minima(g: SignedGraph, enumeration_limit: Optional[int] = None) -> CutTypeProfile:
    limit = enumeration_limit if enumeration_limit is not None else get_settings().cut_enumeration_limit
    n = g.vertex_count
    if n > limit:
        raise GuardError(f"cut enumeration over {n} vertices needs 2^{n - 1} subsets (limit {limit} vertices)")
    best: List[Optional[int]] = [None, None, None, None]
    # X never contains vertex n-1, so every cut is visited once
    for mask in range(1, 1 << max(n - 1, 0)):
        size = 0
        negative = 0
        for e in g.edges:
            if ((mask >> e.u) & 1) != ((mask >> e.w) & 1):
                size += 1
                negative ^= e.sign == NEGATIVE
        kind = 2 * negative + (size & 1)
        if best[kind] is None or size < best[kind]:
            best[kind] = size
    c00, c01, c10, c11 = (UNBOUNDED if b is None else b for b in best)
    return CutTypeProfile(0 if best[0] is None else c00, c01, c10, c11)


def t2_construction(g: SignedGraph) -> SignedGraph:
    """Replace every edge uv by a path u-x-v whose first edge is negative."""
    if g.negative_edges:
        raise ValidationError("T_2 is defined for all-positive graphs", edge=g.negative_edges[0])
    n = g.vertex_count
    edges = []
    for e in g.edges:
        mid = n + e.id
        edges.append(Edge(2 * e.id, e.u, mid, NEGATIVE))
        edges.append(Edge(2 * e.id + 1, mid, e.w, POSITIVE))
    return SignedGraph(n + g.m, tuple(edges))


def multiply_edges(g: SignedGraph, k: int) -> Tuple[SignedGraph, Tuple[Tuple[int, int], ...]]:
    """kG with provenance: new edge id -> (original edge id, copy index)."""
    if k < 0:
        raise ValidationError("multiplicity must be nonnegative")
    edges = []
    provenance = []
    for e in g.edges:
        for copy in range(k):
            edges.append(Edge(len(edges), e.u, e.w, e.sign))
            provenance.append((e.id, copy))
    return SignedGraph(g.vertex_count, tuple(edges)), tuple(provenance)


def edge_connectivity(g: SignedGraph) -> int:
    """Minimum cut size of the underlying multigraph; 0 when disconnected or trivial."""
    if g.vertex_count < 2 or not g.is_connected():
        return 0
    network = nx.DiGraph()
    for u, w, data in g.to_simple_graph().edges(data=True):
        network.add_edge(u, w, capacity=data["multiplicity"])
        network.add_edge(w, u, capacity=data["multiplicity"])
    return min(int(nx.maximum_flow_value(network, 0, v)) for v in range(1, g.vertex_count))


def positive_bridges(g: SignedGraph) -> Tuple[int, ...]:
    simple = g.to_simple_graph()
    single = {frozenset((u, w)) for u, w in nx.bridges(simple) if simple[u][w]["multiplicity"] == 1}
    return tuple(e.id for e in g.edges if e.sign == POSITIVE and frozenset((e.u, e.w)) in single)


def closing_order(g: SignedGraph) -> Tuple[int, ...]:
    """Edge order in which vertices become fully assigned as early as possible."""
    position: Dict[int, int] = {}
    simple = g.to_simple_graph()
    for component in sorted(nx.connected_components(simple), key=min):
        for v in nx.dfs_preorder_nodes(simple, min(component)):
            position[v] = len(position)
    return tuple(
        sorted(
            range(g.m),
            key=lambda e: (
                max(position[g.edges[e].u], position[g.edges[e].w]),
                min(position[g.edges[e].u], position[g.edges[e].w]),
                e,
            ),
        )
    )
