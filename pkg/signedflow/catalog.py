"""
Named signed graphs, their plane embeddings, and small-graph enumeration.

Every constructor takes the ids of the edges that should be negative and
returns a ``SignedGraph`` whose edge ids follow a fixed, documented order,
so tests and suites can refer to individual edges.
"""

from __future__ import annotations

import itertools
import logging
import math
import random
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import categorical_multiedge_match

from .exceptions import GuardError, ValidationError
from .graph import NEGATIVE, POSITIVE, SignedGraph, spanning_forest
from .planar import PlaneEmbedding

logger = logging.getLogger(__name__)


def _signed(vertex_count: int, pairs: Sequence[Tuple[int, int]], negative: Iterable[int]) -> SignedGraph:
    negative = set(negative)
    for e in negative:
        if not 0 <= e < len(pairs):
            raise ValidationError(f"edge {e} not in graph", edge=e)
    return SignedGraph.from_edges(
        vertex_count, [(u, w, NEGATIVE if i in negative else POSITIVE) for i, (u, w) in enumerate(pairs)]
    )


def cycle(n: int, negative: Iterable[int] = ()) -> SignedGraph:
    """C_n with edge i = (i, i+1 mod n); n = 2 gives a digon."""
    if n < 2:
        raise ValidationError(f"cycles need at least 2 vertices, got {n}")
    return _signed(n, [(i, (i + 1) % n) for i in range(n)], negative)


def negative_cycle(k: int) -> SignedGraph:
    """C_{-k}: the k-cycle whose last edge is the only negative one."""
    return cycle(k, [k - 1])


def digon(first: int = POSITIVE, second: int = NEGATIVE) -> SignedGraph:
    return SignedGraph.from_edges(2, [(0, 1, first), (0, 1, second)])


def bond_graph(k: int, positives: int) -> SignedGraph:
    """kK_2 whose first ``positives`` edges are positive."""
    if not 0 <= positives <= k:
        raise ValidationError(f"need 0 <= positives <= {k}, got {positives}")
    return SignedGraph.from_edges(2, [(0, 1, POSITIVE if i < positives else NEGATIVE) for i in range(k)])


def complete(n: int, negative: Iterable[int] = ()) -> SignedGraph:
    """K_n with edges in lexicographic order of (u, w), u < w."""
    return _signed(n, list(itertools.combinations(range(n), 2)), negative)


def wheel(n: int, negative: Iterable[int] = ()) -> SignedGraph:
    """W_n: rim edges i = (i, i+1 mod n), spoke n+i = (hub, i) with hub n."""
    if n < 3:
        raise ValidationError(f"wheels need a rim of at least 3 vertices, got {n}")
    pairs = [(i, (i + 1) % n) for i in range(n)] + [(n, i) for i in range(n)]
    return _signed(n + 1, pairs, negative)


def _theta_pairs(lengths: Sequence[int]) -> Tuple[int, List[Tuple[int, int]], List[List[int]]]:
    if len(lengths) < 2 or any(length < 1 for length in lengths):
        raise ValidationError(f"theta graphs need at least two paths of positive length, got {list(lengths)}")
    vertex_count = 2
    pairs: List[Tuple[int, int]] = []
    paths: List[List[int]] = []
    for length in lengths:
        inner = list(range(vertex_count, vertex_count + length - 1))
        vertex_count += length - 1
        walk = [0] + inner + [1]
        paths.append(list(range(len(pairs), len(pairs) + length)))
        pairs.extend(zip(walk, walk[1:]))
    return vertex_count, pairs, paths


def theta(lengths: Sequence[int], negative: Iterable[int] = ()) -> SignedGraph:
    """Internally disjoint paths from vertex 0 to vertex 1, edges numbered path by path."""
    vertex_count, pairs, _ = _theta_pairs(lengths)
    return _signed(vertex_count, pairs, negative)


def petersen(negative: Iterable[int] = ()) -> SignedGraph:
    """Outer 5-cycle 0..4, spokes i -- i+5, inner pentagram on 5..9."""
    pairs = [(i, (i + 1) % 5) for i in range(5)] + [(i, i + 5) for i in range(5)]
    pairs += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return _signed(10, pairs, negative)


def cycle_embedding(n: int) -> PlaneEmbedding:
    inner = tuple((i, False) for i in range(n))
    outer = tuple((i, True) for i in reversed(range(n)))
    return PlaneEmbedding((inner, outer))


def theta_embedding(lengths: Sequence[int]) -> PlaneEmbedding:
    """Face i runs out along path i and back along path i+1."""
    _, _, paths = _theta_pairs(lengths)
    faces = []
    for i, path in enumerate(paths):
        back = paths[(i + 1) % len(paths)]
        faces.append(tuple((e, False) for e in path) + tuple((e, True) for e in reversed(back)))
    return PlaneEmbedding(tuple(faces))


def wheel_embedding(n: int) -> PlaneEmbedding:
    triangles = [((i, False), (n + (i + 1) % n, True), (n + i, False)) for i in range(n)]
    outer = tuple((i, True) for i in reversed(range(n)))
    return PlaneEmbedding(tuple(triangles) + (outer,))


# --------------------------------------------------------------------------
# Isomorphism and enumeration
# --------------------------------------------------------------------------


def is_isomorphic(g1: SignedGraph, g2: SignedGraph) -> bool:
    """Isomorphism of signed multigraphs respecting edge signs."""
    return nx.is_isomorphic(
        g1.to_multigraph(), g2.to_multigraph(), edge_match=categorical_multiedge_match("sign", None)
    )


def _refined_classes(g: SignedGraph) -> List[List[int]]:
    simple = g.to_simple_graph()
    invariant = {
        v: (
            g.degree(v),
            g.negative_degree(v),
            tuple(sorted(g.degree(x) for x in simple.neighbors(v))),
        )
        for v in range(g.vertex_count)
    }
    classes: Dict[tuple, List[int]] = {}
    for v in range(g.vertex_count):
        classes.setdefault(invariant[v], []).append(v)
    return [classes[key] for key in sorted(classes)]


def canonical_form(g: SignedGraph) -> Tuple[int, Tuple[Tuple[int, int, int], ...]]:
    """
    Least relabelled edge list over the permutations that respect the
    degree/sign-profile classes. Equal forms mean isomorphic graphs.
    """
    classes = _refined_classes(g)
    best: Optional[Tuple[Tuple[int, int, int], ...]] = None
    for orders in itertools.product(*(itertools.permutations(c) for c in classes)):
        label: Dict[int, int] = {}
        for v in itertools.chain.from_iterable(orders):
            label[v] = len(label)
        form = tuple(
            sorted((min(label[e.u], label[e.w]), max(label[e.u], label[e.w]), e.sign) for e in g.edges)
        )
        if best is None or form < best:
            best = form
    return g.vertex_count, best or ()


def switching_class_representatives(g: SignedGraph) -> Iterator[SignedGraph]:
    """One signature per switching class: forest edges positive, the other edges free."""
    forest = set(spanning_forest(g))
    free = [e for e in range(g.m) if e not in forest]
    for size in range(len(free) + 1):
        for chosen in itertools.combinations(free, size):
            negative = set(chosen)
            yield g.with_signs([NEGATIVE if e in negative else POSITIVE for e in range(g.m)])


def enumerate_multigraphs(
    vertex_count: int,
    max_edges: int,
    min_edges: int = 0,
    max_multiplicity: Optional[int] = None,
    connected: bool = True,
    limit: int = 200_000,
) -> Iterator[SignedGraph]:
    """
    All-positive multigraphs on exactly ``vertex_count`` vertices, one per
    isomorphism class, in order of edge count.
    """
    pairs = list(itertools.combinations(range(vertex_count), 2))
    estimate = sum(_multisets(len(pairs), m) for m in range(min_edges, max_edges + 1))
    if estimate > limit:
        raise GuardError(f"enumeration would visit about {estimate} edge multisets (limit {limit})")
    for m in range(min_edges, max_edges + 1):
        seen = set()
        for chosen in itertools.combinations_with_replacement(pairs, m):
            if max_multiplicity is not None and any(chosen.count(p) > max_multiplicity for p in set(chosen)):
                continue
            g = SignedGraph.from_edges(vertex_count, [(u, w, POSITIVE) for u, w in chosen])
            if connected and not g.is_connected():
                continue
            form = canonical_form(g)
            if form in seen:
                continue
            seen.add(form)
            yield g
        logger.debug("%d classes with %d vertices and %d edges", len(seen), vertex_count, m)


def enumerate_eulerian_multigraphs(
    max_edges: int, min_edges: int = 2, max_vertices: Optional[int] = None
) -> Iterator[SignedGraph]:
    """
    Connected loopless all-positive multigraphs with every degree even, one per
    isomorphism class, in order of edge count.

    Each graph is read off an Eulerian circuit whose vertices are numbered in
    order of first visit, so only the edge count bounds the work.
    """
    for m in range(max(min_edges, 2), max_edges + 1):
        seen = set()
        for walk in _closed_walks(m, max_vertices if max_vertices is not None else m):
            g = SignedGraph.from_edges(max(walk) + 1, [(walk[i], walk[(i + 1) % m], POSITIVE) for i in range(m)])
            form = canonical_form(g)
            if form in seen:
                continue
            seen.add(form)
            yield g
        logger.debug("%d eulerian classes with %d edges", len(seen), m)


def _closed_walks(length: int, max_vertices: int) -> Iterator[Tuple[int, ...]]:
    def extend(walk: List[int], top: int) -> Iterator[Tuple[int, ...]]:
        if len(walk) == length:
            if walk[-1] != 0:
                yield tuple(walk)
            return
        for v in range(min(top + 2, max_vertices)):
            if v == walk[-1]:
                continue
            walk.append(v)
            yield from extend(walk, max(top, v))
            walk.pop()

    if max_vertices >= 2:
        yield from extend([0], 0)


def _multisets(kinds: int, size: int) -> int:
    if kinds == 0:
        return 1 if size == 0 else 0
    return math.comb(kinds + size - 1, size)


def _set_partitions(items: Sequence[int]) -> Iterator[List[List[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in _set_partitions(rest):
        yield [[first]] + partition
        for i in range(len(partition)):
            yield partition[:i] + [[first] + partition[i]] + partition[i + 1:]


def spanning_tree_packing(g: SignedGraph, vertex_limit: int = 10) -> int:
    """
    Largest t with t edge-disjoint spanning trees: the minimum over vertex
    partitions P with |P| >= 2 of floor(crossing edges / (|P| - 1)).
    """
    n = g.vertex_count
    if n < 2:
        raise ValidationError("tree packing needs at least two vertices")
    if n > vertex_limit:
        raise GuardError(f"tree packing enumerates every partition of {n} vertices (limit {vertex_limit})")
    if not g.is_connected():
        return 0
    best: Optional[int] = None
    for partition in _set_partitions(list(range(n))):
        if len(partition) < 2:
            continue
        block = {v: i for i, part in enumerate(partition) for v in part}
        crossing = sum(1 for e in g.edges if block[e.u] != block[e.w])
        value = crossing // (len(partition) - 1)
        best = value if best is None else min(best, value)
    return best


def random_signed_graph(
    rng: random.Random, vertex_count: int, edge_count: int, negative_probability: float = 0.5
) -> SignedGraph:
    """Uniform vertex pairs, repeats allowed; each edge negative with the given probability."""
    if vertex_count < 2 and edge_count:
        raise ValidationError("edges need at least two vertices")
    pairs = [tuple(rng.sample(range(vertex_count), 2)) for _ in range(edge_count)]
    return SignedGraph.from_edges(
        vertex_count, [(u, w, NEGATIVE if rng.random() < negative_probability else POSITIVE) for u, w in pairs]
    )
