"""Simple undirected graphs over contiguous vertex ids, plus metrics and
small-subgraph detection.

Adjacency is stored as numpy CSR arrays, with sorted tuples (deterministic
iteration) and integer bitmasks (fast set algebra) derived on demand.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np

INF = math.inf


class GraphError(ValueError):
    """Raised for malformed graph input (bad ids, self-loops)."""


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    The canonical store is a CSR pair of numpy arrays (``indptr``,
    ``indices``) with sorted neighbor runs. Tuple, set and bitmask views are
    built lazily for the combinatorial algorithms that want them.
    """

    __slots__ = ("n", "indptr", "indices", "edge_count", "_adj", "_sets", "_masks")

    def __init__(self, n: int, adjacency: Sequence[Iterable[int]]):
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        if len(adjacency) != n:
            raise GraphError("adjacency length does not match vertex count")
        src, dst = [], []
        for v, nb in enumerate(adjacency):
            for u in nb:
                src.append(v)
                dst.append(u)
        src_a = np.asarray(src, dtype=np.int64)
        dst_a = np.asarray(dst, dtype=np.int64)
        _check_arrays(n, src_a, dst_a)
        key = np.unique(src_a * max(n, 1) + dst_a)
        s, d = key // max(n, 1), key % max(n, 1)
        back = np.unique(d * max(n, 1) + s)
        if len(back) != len(key) or not np.array_equal(back, key):
            bad = np.setdiff1d(key, back)
            v, u = divmod(int(bad[0]), max(n, 1))
            raise GraphError(f"adjacency not symmetric at ({v}, {u})")
        self._init_csr(n, s, d)

    def _init_csr(self, n: int, src: np.ndarray, dst: np.ndarray) -> None:
        # src/dst: every directed arc once, sorted by (src, dst)
        self.n = n
        self.indices = dst.astype(np.int32)
        self.indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=self.indptr[1:])
        self.edge_count = len(dst) // 2
        self._adj = [None] * n
        self._sets = [None] * n
        self._masks = None

    # construction helpers

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        return build_graph(n, edges)

    @classmethod
    def from_edge_arrays(cls, n: int, a, b) -> "Graph":
        """Build from two parallel endpoint arrays; duplicates collapse."""
        a = np.asarray(a, dtype=np.int64).ravel()
        b = np.asarray(b, dtype=np.int64).ravel()
        if a.shape != b.shape:
            raise GraphError("endpoint arrays differ in length")
        _check_arrays(n, a, b)
        base = max(n, 1)
        key = np.unique(np.concatenate([a * base + b, b * base + a]))
        g = cls.__new__(cls)
        g._init_csr(n, key // base, key % base)
        return g

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> "Graph":
        adj = [_bits(m) for m in masks]
        return cls(len(masks), adj)

    # accessors

    def neighbors(self, v: int) -> tuple:
        nb = self._adj[v]
        if nb is None:
            nb = tuple(self.indices[self.indptr[v]:self.indptr[v + 1]].tolist())
            self._adj[v] = nb
        return nb

    def neighbor_set(self, v: int) -> frozenset:
        s = self._sets[v]
        if s is None:
            s = frozenset(self.neighbors(v))
            self._sets[v] = s
        return s

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbor_set(u)

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    @property
    def masks(self) -> tuple:
        if self._masks is None:
            masks = []
            for v in range(self.n):
                m = 0
                for u in self.neighbors(v):
                    m |= 1 << u
                masks.append(m)
            self._masks = tuple(masks)
        return self._masks

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Endpoint arrays ``(u, v)`` with ``u < v``, in lexicographic order."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.indptr))
        keep = src < self.indices
        return src[keep], self.indices[keep].astype(np.int64)

    def edges(self) -> list[tuple[int, int]]:
        a, b = self.edge_arrays()
        return list(zip(a.tolist(), b.tolist()))

    def vertices(self) -> range:
        return range(self.n)

    def induced(self, keep: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``keep``; returns it with the new->old id list."""
        order = sorted(set(keep))
        index = {v: i for i, v in enumerate(order)}
        adj = [[index[u] for u in self.neighbors(v) if u in index] for v in order]
        return Graph(len(order), adj), order

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )

    def __hash__(self) -> int:
        return hash((self.n, self.indices.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


def _check_arrays(n: int, a: np.ndarray, b: np.ndarray) -> None:
    if n < 0:
        raise GraphError("vertex count must be non-negative")
    if len(a) == 0:
        return
    bad = (a < 0) | (a >= n) | (b < 0) | (b >= n)
    if bad.any():
        i = int(np.argmax(bad))
        raise GraphError(f"edge ({a[i]}, {b[i]}) has id out of range for n={n}")
    loops = a == b
    if loops.any():
        raise GraphError(f"self-loop at vertex {a[int(np.argmax(loops))]}")


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from an edge list; duplicate edges collapse."""
    pairs = list(edges)
    a = [p[0] for p in pairs]
    b = [p[1] for p in pairs]
    return Graph.from_edge_arrays(n, a, b)


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex id {v} out of range for n={g.n}")


def bfs_distances(g: Graph, source: int) -> list:
    """Hop distances from ``source``; unreachable vertices get ``INF``."""
    _check_vertex(g, source)
    dist: list = [INF] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        d = dist[v] + 1
        for u in g.neighbors(v):
            if dist[u] is INF:
                dist[u] = d
                queue.append(u)
    return dist


def eccentricities(g: Graph) -> list:
    """Eccentricity of every vertex (all ``INF`` when disconnected).

    Grows closed balls ``B_k(v) = union of B_{k-1}(u) for u in N[v]`` as
    bitmasks until every ball covers the whole vertex set.
    """
    n = g.n
    if n == 0:
        return []
    if not is_connected(g):
        return [INF] * n
    if n == 1:
        return [0]
    full = (1 << n) - 1
    balls = [m | (1 << v) for v, m in enumerate(g.masks)]
    ecc: list = [INF] * n
    pending = []
    for v in range(n):
        if balls[v] == full:
            ecc[v] = 1
        else:
            pending.append(v)
    k = 1
    while pending:
        k += 1
        # saturated balls stay full, so only pending ones need recomputing
        new = balls[:]
        for v in pending:
            b = balls[v]
            for u in g.neighbors(v):
                b |= balls[u]
            new[v] = b
        balls = new
        still = []
        for v in pending:
            if balls[v] == full:
                ecc[v] = k
            else:
                still.append(v)
        pending = still
    return ecc


@dataclass(frozen=True)
class GraphMetrics:
    diameter: float
    radius: float
    min_degree: int
    max_degree: int


def metrics(g: Graph) -> GraphMetrics:
    if g.n == 0:
        return GraphMetrics(0, 0, 0, 0)
    ecc = eccentricities(g)
    degrees = [g.degree(v) for v in range(g.n)]
    return GraphMetrics(max(ecc), min(ecc), min(degrees), max(degrees))


def connected_components(g: Graph) -> list[list[int]]:
    """Connected components, each sorted, ordered by smallest member."""
    seen = [False] * g.n
    parts = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        part = [s]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in g.neighbors(v):
                if not seen[u]:
                    seen[u] = True
                    part.append(u)
                    queue.append(u)
        parts.append(sorted(part))
    return parts


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def is_triangle_free(g: Graph) -> bool:
    masks = g.masks
    for u, v in g.edges():
        if masks[u] & masks[v]:
            return False
    return True


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def find_k4(g: Graph) -> Optional[tuple[int, int, int, int]]:
    """Lexicographically first 4-clique as a sorted id tuple, or None."""
    masks = g.masks
    for a in range(g.n):
        higher_a = masks[a] >> (a + 1) << (a + 1)
        m_a = higher_a
        while m_a:
            b = _lowest(m_a)
            m_a &= m_a - 1
            common_ab = higher_a & masks[b] & ~((1 << (b + 1)) - 1)
            m_b = common_ab
            while m_b:
                c = _lowest(m_b)
                m_b &= m_b - 1
                rest = common_ab & masks[c] & ~((1 << (c + 1)) - 1)
                if rest:
                    return (a, b, c, _lowest(rest))
    return None


def find_diamond(g: Graph) -> Optional[tuple[int, int, int, int]]:
    """Lexicographically first induced diamond ``(u1, u2, u3, u4)``.

    ``u1 < u2`` is the non-adjacent pair, ``u3 < u4`` the adjacent pair that
    both see. Tuples compare lexicographically. A K4-containing graph may
    still report a diamond if one exists as an induced subgraph.
    """
    best = None
    masks = g.masks
    for c, d in g.edges():
        common = masks[c] & masks[d]
        if common & (common - 1) == 0:
            continue
        members = _bits(common)
        for i, a in enumerate(members):
            if best is not None and a > best[0]:
                break
            non_nb = common & ~masks[a] & ~((1 << (a + 1)) - 1)
            if non_nb:
                cand = (a, _lowest(non_nb), c, d)
                if best is None or cand < best:
                    best = cand
                break
    return best


def neighborhood_max_degree(g: Graph, v: int) -> int:
    """Maximum degree of the subgraph induced by ``N(v)``."""
    _check_vertex(g, v)
    masks = g.masks
    nb = masks[v]
    return max((bin(masks[u] & nb).count("1") for u in g.neighbors(v)), default=0)


# brute-force references, used by tests and small-instance checks

def brute_force_k4(g: Graph) -> Optional[tuple[int, int, int, int]]:
    for quad in combinations(range(g.n), 4):
        if all(g.has_edge(x, y) for x, y in combinations(quad, 2)):
            return quad
    return None


def brute_force_has_diamond(g: Graph) -> bool:
    for quad in combinations(range(g.n), 4):
        if sum(g.has_edge(x, y) for x, y in combinations(quad, 2)) == 5:
            return True
    return False
