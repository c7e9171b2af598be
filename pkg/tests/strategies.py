"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from signedflow.graph import NEGATIVE, POSITIVE, SignedGraph

signs = st.sampled_from([POSITIVE, NEGATIVE])


@st.composite
def signed_graphs(draw, min_vertices=2, max_vertices=5, max_edges=7, connected=False):
    """Loopless signed multigraphs; ``connected`` grows a random spanning tree first."""
    n = draw(st.integers(min_vertices, max_vertices))
    pairs = []
    if connected:
        for v in range(1, n):
            pairs.append((draw(st.integers(0, v - 1)), v))
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1])
    extra = draw(st.lists(pair, max_size=max(max_edges - len(pairs), 0)))
    pairs.extend(extra)
    chosen = draw(st.lists(signs, min_size=len(pairs), max_size=len(pairs)))
    return SignedGraph.from_edges(n, [(u, w, s) for (u, w), s in zip(pairs, chosen)])
