import itertools

from hypothesis import strategies as st

from tricolor.graph import build_graph


@st.composite
def small_graphs(draw, max_n=8, min_n=0):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return build_graph(n, [p for p, k in zip(pairs, keep) if k])


def brute_3color(g):
    """Exhaustive 3-colorability, independent of the package solvers."""
    edges = g.edges()
    for c in itertools.product((1, 2, 3), repeat=g.n):
        if all(c[a] != c[b] for a, b in edges):
            return True
    return False
