"""Graph families: the extremal diameter-2 family, the SAT reduction graphs
with their clause gadget, the amplified variants, and seeded random samplers.

Matrix families share one canonical numbering with ``C`` columns and ``R``
row pairs: ``v0 = 0``, ``v_j = j`` for ``j = 1..C``,
``u_{i,j} = C + (i-1)C + j`` and ``w_{i,j} = C + RC + (i-1)C + j``.
"""

from __future__ import annotations

import functools
import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .graph import Graph, GraphError, build_graph, bfs_distances, is_connected, _bits
from .sat import CnfFormula, SatError

RED, BLUE, GREEN = 1, 2, 3


class GeneratorError(ValueError):
    pass


@dataclass
class GeneratorLayout:
    """Canonical numbering of a generated graph.

    ``u_offset``/``w_offset`` locate the matrix blocks; ``extra`` holds named
    roles outside the matrix (gadget vertices, replacement sets, apex).
    """

    family: str
    params: dict
    n: int
    columns: int = 0
    row_pairs: int = 0
    u_offset: int = 0
    w_offset: int = 0
    has_column_vertices: bool = False
    extra: dict = field(default_factory=dict)

    def v(self, j: int) -> int:
        if not self.has_column_vertices or not 1 <= j <= self.columns:
            raise GeneratorError(f"no column vertex v{j} in this layout")
        return j

    def u(self, i: int, j: int) -> int:
        self._check_cell(i, j)
        return self.u_offset + (i - 1) * self.columns + (j - 1)

    def w(self, i: int, j: int) -> int:
        self._check_cell(i, j)
        return self.w_offset + (i - 1) * self.columns + (j - 1)

    def _check_cell(self, i: int, j: int) -> None:
        if not (1 <= i <= self.row_pairs and 1 <= j <= self.columns):
            raise GeneratorError(f"cell ({i}, {j}) outside the matrix")

    def u_rows(self) -> np.ndarray:
        """``R x C`` array of u-vertex ids (row ``i-1`` holds row ``l_i``)."""
        return self.u_offset + np.arange(self.row_pairs * self.columns).reshape(
            self.row_pairs, self.columns)

    def w_rows(self) -> np.ndarray:
        return self.w_offset + np.arange(self.row_pairs * self.columns).reshape(
            self.row_pairs, self.columns)

    def gadget(self, k: int, p: int) -> int:
        return self.extra[f"g{k},{p}"]

    def roles(self) -> dict:
        """Every named role mapped to its vertex id."""
        out = {}
        if self.family == "gn":
            out["v0"] = 0
            size = 2 * self.params["k"]
            for i in range(1, size + 1):
                for j in range(1, size + 1):
                    out[f"v{i},{j}"] = 1 + (i - 1) * size + (j - 1)
            return out
        if self.row_pairs:
            out["v0"] = 0
            if self.has_column_vertices:
                for j in range(1, self.columns + 1):
                    out[f"v{j}"] = j
            for i in range(1, self.row_pairs + 1):
                for j in range(1, self.columns + 1):
                    out[f"u{i},{j}"] = self.u(i, j)
            for i in range(1, self.row_pairs + 1):
                for j in range(1, self.columns + 1):
                    out[f"w{i},{j}"] = self.w(i, j)
        out.update(self.extra)
        return out

    def dump(self) -> str:
        """Line format ``role <name> <id>`` with 1-based ids, sorted by id."""
        items = sorted(self.roles().items(), key=lambda kv: (kv[1], kv[0]))
        head = "".join(f"c {k} {v}\n" for k, v in sorted(self.params.items()))
        return f"c family {self.family}\n" + head + "".join(
            f"role {name} {vid + 1}\n" for name, vid in items)


def _fraction(eps) -> Fraction:
    if isinstance(eps, Fraction):
        return eps
    if isinstance(eps, str):
        return Fraction(eps)
    return Fraction(eps).limit_denominator(10_000)


def _ceil_pow(base: int, exponent: Fraction) -> int:
    """``ceil(base ** exponent)``, robust to float noise at exact powers."""
    if exponent.denominator == 1:
        return base ** exponent.numerator
    value = base ** float(exponent)
    r = round(value)
    if abs(value - r) < 1e-9 and r ** exponent.denominator == base ** exponent.numerator:
        return r
    return math.ceil(value)


# clause gadget

GADGET_VERTICES = 8
GADGET_EDGES = 10


@dataclass(frozen=True)
class ClauseGadget:
    """Eight vertices ``0..7`` (g1..g8); ``0, 1, 2`` are the literal vertices."""

    edges: tuple

    def graph(self) -> Graph:
        return build_graph(GADGET_VERTICES, self.edges)


_ALL_COLORINGS = None


def _gadget_colorings() -> np.ndarray:
    global _ALL_COLORINGS
    if _ALL_COLORINGS is None:
        _ALL_COLORINGS = np.array(
            list(itertools.product((1, 2, 3), repeat=GADGET_VERTICES)), dtype=np.int8)
    return _ALL_COLORINGS


def gadget_extendable(edges) -> np.ndarray:
    """Boolean array over the 27 colorings of g1..g3 (index ``9(c1-1)+3(c2-1)+(c3-1)``):
    True when the coloring extends to a proper 3-coloring of the gadget."""
    cols = _gadget_colorings()
    ok = np.ones(len(cols), dtype=bool)
    for a, b in edges:
        ok &= cols[:, a] != cols[:, b]
    index = (cols[:, 0].astype(int) - 1) * 9 + (cols[:, 1] - 1) * 3 + (cols[:, 2] - 1)
    ext = np.zeros(27, dtype=bool)
    ext[np.unique(index[ok])] = True
    return ext


_MONOCHROME = (0, 13, 26)


def _has_induced_c5(adj: list[int]) -> bool:
    for s in itertools.combinations(range(GADGET_VERTICES), 5):
        mask = sum(1 << x for x in s)
        if all(bin(adj[x] & mask).count("1") == 2 for x in s):
            # 2-regular on five vertices is a single 5-cycle
            return True
    return False


def _connected_masks(adj: list[int]) -> bool:
    full = (1 << len(adj)) - 1
    seen = frontier = 1
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= adj[v]
        frontier = nxt & ~seen
        seen |= nxt
    return seen == full


def gadget_properties_hold(edges) -> bool:
    """Full property check: 10 edges, triangle-free, connected, induced C5,
    no 2-coloring, and the monochrome / non-monochrome extension split."""
    edges = [tuple(sorted(e)) for e in edges]
    if len(set(edges)) != GADGET_EDGES:
        return False
    adj = [0] * GADGET_VERTICES
    for a, b in edges:
        if adj[a] & adj[b]:
            return False
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    if not _connected_masks(adj) or not _has_induced_c5(adj):
        return False
    if _two_colorable(adj):
        return False
    ext = gadget_extendable(edges)
    return all(bool(ext[i]) != (i in _MONOCHROME) for i in range(27))


def _two_colorable(adj: list[int]) -> bool:
    side = [-1] * len(adj)
    for s in range(len(adj)):
        if side[s] != -1:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for u in _bits(adj[v]):
                if side[u] == -1:
                    side[u] = 1 - side[v]
                    stack.append(u)
                elif side[u] == side[v]:
                    return False
    return True


@functools.lru_cache(maxsize=1)
def find_clause_gadget() -> ClauseGadget:
    """Lexicographically smallest 10-edge set on 8 labeled vertices with the
    gadget properties.

    Edge sets are enumerated in lexicographic order of their sorted edge
    lists. Triangles are pruned while extending; pairs inside {g1, g2, g3}
    are skipped since any such edge breaks the two-color extension property.
    """
    pairs = [(a, b) for a in range(GADGET_VERTICES) for b in range(a + 1, GADGET_VERTICES)
             if not (a < 3 and b < 3)]
    adj = [0] * GADGET_VERTICES
    chosen: list = []

    def search(start: int) -> Optional[list]:
        if len(chosen) == GADGET_EDGES:
            if not _connected_masks(adj) or not _has_induced_c5(adj):
                return None
            ext = gadget_extendable(chosen)
            if all(bool(ext[i]) != (i in _MONOCHROME) for i in range(27)):
                return list(chosen)
            return None
        need = GADGET_EDGES - len(chosen)
        for idx in range(start, len(pairs) - need + 1):
            a, b = pairs[idx]
            if adj[a] & adj[b]:
                continue
            adj[a] |= 1 << b
            adj[b] |= 1 << a
            chosen.append((a, b))
            hit = search(idx + 1)
            chosen.pop()
            adj[a] &= ~(1 << b)
            adj[b] &= ~(1 << a)
            if hit is not None:
                return hit
        return None

    found = search(0)
    if found is None:
        raise GeneratorError("no 8-vertex 10-edge clause gadget exists")
    return ClauseGadget(tuple(found))


@functools.lru_cache(maxsize=None)
def gadget_extension(c1: int, c2: int, c3: int) -> Optional[tuple]:
    """Lexicographically first proper gadget coloring with g1..g3 fixed."""
    gadget = find_clause_gadget()
    for rest in itertools.product((1, 2, 3), repeat=GADGET_VERTICES - 3):
        col = (c1, c2, c3) + rest
        if all(col[a] != col[b] for a, b in gadget.edges):
            return col
    return None


# extremal diameter-2 family

def gen_gn(k: int) -> tuple[Graph, GeneratorLayout]:
    """The ``2k x 2k`` matrix graph plus apex ``v0`` (``4k^2 + 1`` vertices)."""
    if k < 3:
        raise GeneratorError("G_n needs k >= 3")
    size = 2 * k
    idx = np.arange(1, size + 1)

    def vid(i, j):
        return 1 + (i - 1) * size + (j - 1)

    a_parts, b_parts = [], []
    # apex to the red class (columns k+1..2k)
    ii, jj = np.meshgrid(idx, idx[k:], indexing="ij")
    a_parts.append(np.zeros(ii.size, dtype=np.int64))
    b_parts.append(vid(ii, jj).ravel())
    # column j against column 2k+1-j, minus same-row pairs
    i, p, j = np.meshgrid(idx, idx, idx, indexing="ij")
    keep = i != p
    a_parts.append(vid(i, j)[keep])
    b_parts.append(vid(p, size + 1 - j)[keep])
    # row i against row 2k+1-i, minus same column (j <= k) and red-red pairs
    i, j, l = np.meshgrid(idx, idx, idx, indexing="ij")
    keep = ~(((j == l) & (j <= k)) | ((j > k) & (l > k)))
    a_parts.append(vid(i, j)[keep])
    b_parts.append(vid(size + 1 - i, l)[keep])
    n = size * size + 1
    g = Graph.from_edge_arrays(n, np.concatenate(a_parts), np.concatenate(b_parts))
    layout = GeneratorLayout("gn", {"k": k}, n)
    return g, layout


def gn_vertex(k: int, i: int, j: int) -> int:
    return 1 + (i - 1) * 2 * k + (j - 1)


def gn_coloring(k: int) -> list[int]:
    """Blue for ``i, j <= k``, green for ``i > k, j <= k``, red for ``j > k``,
    green apex."""
    size = 2 * k
    col = [GREEN] * (size * size + 1)
    for i in range(1, size + 1):
        for j in range(1, size + 1):
            if j > k:
                c = RED
            elif i <= k:
                c = BLUE
            else:
                c = GREEN
            col[gn_vertex(k, i, j)] = c
    return col


def gn_column_dominating_set(k: int) -> list[int]:
    """Apex plus the first column."""
    return [0] + [gn_vertex(k, i, 1) for i in range(1, 2 * k + 1)]


# reduction families

def _matrix_layout(family: str, params: dict, columns: int, rows: int) -> GeneratorLayout:
    n = 2 * rows * columns + columns + 1
    return GeneratorLayout(family, params, n, columns, rows,
                           u_offset=columns + 1, w_offset=columns + 1 + rows * columns,
                           has_column_vertices=True)


def _matrix_edges(layout: GeneratorLayout) -> tuple[np.ndarray, np.ndarray]:
    """Apex-column, column-cell and row-pair edges of the matrix families."""
    C, R = layout.columns, layout.row_pairs
    cols = np.arange(1, C + 1)
    urows, wrows = layout.u_rows(), layout.w_rows()
    a = [np.zeros(C, dtype=np.int64), np.tile(cols, R), np.tile(cols, R)]
    b = [cols, urows.ravel(), wrows.ravel()]
    # u_{i,j} ~ w_{i,j'} for j != j'
    jj, kk = np.meshgrid(np.arange(C), np.arange(C), indexing="ij")
    off = jj != kk
    jj, kk = jj[off], kk[off]
    a.append((urows[:, jj]).ravel())
    b.append((wrows[:, kk]).ravel())
    return np.concatenate(a), np.concatenate(b)


def gen_gnm(n: int, m: int, columns: Optional[int] = None) -> tuple[Graph, GeneratorLayout]:
    """The gadget-free base graph: ``2(n+5m)C + C + 1`` vertices, ``C = 8m``."""
    if n < 1 or m < 1:
        raise GeneratorError("need n >= 1 and m >= 1")
    C = 8 * m if columns is None else columns
    layout = _matrix_layout("gnm", {"n": n, "m": m}, C, n + 5 * m)
    a, b = _matrix_edges(layout)
    return Graph.from_edge_arrays(layout.n, a, b), layout


def check_formula(f: CnfFormula) -> None:
    if f.num_clauses < 1:
        raise GeneratorError("formula needs at least one clause")
    for k, clause in enumerate(f.clauses, 1):
        if len({abs(l) for l in clause}) != 3:
            raise GeneratorError(f"clause {k} repeats a variable")


def _place_gadgets(f: CnfFormula, layout: GeneratorLayout) -> tuple[list, list]:
    gadget = find_clause_gadget()
    n = f.num_vars
    a, b = [], []
    for k, clause in enumerate(f.clauses, 1):
        ids = []
        for p in range(1, 9):
            j = 8 * k + 1 - p
            if p <= 3:
                lit = clause[p - 1]
                vid = layout.u(lit, j) if lit > 0 else layout.w(-lit, j)
            else:
                vid = layout.u(n + 5 * k + 4 - p, j)
            layout.extra[f"g{k},{p}"] = vid
            ids.append(vid)
        for x, y in gadget.edges:
            a.append(ids[x])
            b.append(ids[y])
    return a, b


def _hphi_like(family: str, f: CnfFormula, columns: int, params: dict):
    check_formula(f)
    n, m = f.num_vars, f.num_clauses
    layout = _matrix_layout(family, params, columns, n + 5 * m)
    a, b = _matrix_edges(layout)
    ga, gb = _place_gadgets(f, layout)
    g = Graph.from_edge_arrays(layout.n, np.concatenate([a, ga]), np.concatenate([b, gb]))
    return g, layout


def gen_hphi(f: CnfFormula) -> tuple[Graph, GeneratorLayout]:
    """Base graph plus one clause gadget per clause (``10m`` extra edges)."""
    return _hphi_like("hphi", f, 8 * f.num_clauses,
                      {"n": f.num_vars, "m": f.num_clauses})


def _row_red_lines(layout: GeneratorLayout, f: CnfFormula, assignment) -> tuple:
    """Per row pair: True when row l_i is the red line. Plus per-clause
    gadget colorings."""
    n, m = f.num_vars, f.num_clauses
    red_u = np.zeros(layout.row_pairs, dtype=bool)
    for i in range(1, n + 1):
        red_u[i - 1] = not assignment[i - 1]
    gadget_cols = []
    for k, clause in enumerate(f.clauses, 1):
        false = [not (assignment[abs(l) - 1] == (l > 0)) for l in clause]
        if all(false):
            raise GeneratorError(f"assignment falsifies clause {k}")
        if any(false):
            first3 = tuple(RED if fl else GREEN for fl in false)
        else:
            first3 = (GREEN, GREEN, BLUE)
        col = gadget_extension(*first3)
        if col is None:
            raise GeneratorError("gadget coloring does not extend")
        gadget_cols.append(col)
        for p in range(4, 9):
            red_u[n + 5 * k + 4 - p - 1] = col[p - 1] == RED
    return red_u, gadget_cols


def _column_colors(layout: GeneratorLayout, f: CnfFormula, gadget_cols) -> np.ndarray:
    vcol = np.full(layout.columns + 1, BLUE, dtype=np.int8)
    for k, col in enumerate(gadget_cols, 1):
        for p in range(1, 9):
            c = col[p - 1]
            # complement of the gadget vertex's non-red color; blue when red
            vcol[8 * k + 1 - p] = GREEN if c == BLUE else BLUE
    return vcol


def hphi_embed_coloring(layout: GeneratorLayout, f: CnfFormula, assignment) -> list[int]:
    """Proper 3-coloring of the reduction graph built from a satisfying
    assignment: red lines for false literals, gadgets colored by extension."""
    if len(assignment) != f.num_vars:
        raise GeneratorError("assignment length does not match the formula")
    if not f.evaluate(assignment):
        raise GeneratorError("assignment does not satisfy the formula")
    red_u, gadget_cols = _row_red_lines(layout, f, assignment)
    vcol = _column_colors(layout, f, gadget_cols)
    color = np.zeros(layout.n, dtype=np.int8)
    color[0] = RED
    cols = np.arange(1, layout.columns + 1)
    color[cols] = vcol[1:]
    white = np.where(vcol[1:] == BLUE, GREEN, BLUE).astype(np.int8)
    urows, wrows = layout.u_rows(), layout.w_rows()
    for r in range(layout.row_pairs):
        if red_u[r]:
            color[urows[r]] = RED
            color[wrows[r]] = white
        else:
            color[urows[r]] = white
            color[wrows[r]] = RED
    return color.tolist()


class ExtractionError(ValueError):
    """The coloring does not have the red/white line structure."""


def hphi_extract_assignment(layout: GeneratorLayout, coloring: Sequence[int],
                            num_vars: int, graph: Optional[Graph] = None) -> list[bool]:
    """Assignment read off the red lines: ``x_i = 0`` iff row ``l_i`` is red.

    The palette is first permuted so that ``v0`` is color 1 (red). When
    ``graph`` is given the coloring is also checked for properness.
    """
    from .solvers import verify_coloring

    col = np.asarray(coloring, dtype=np.int64)
    if len(col) != layout.n:
        raise ExtractionError("coloring length does not match the layout")
    if graph is not None and not verify_coloring(graph, coloring):
        raise ExtractionError("coloring is not a proper 3-coloring")
    red = col[0]
    is_red = col == red
    urows, wrows = layout.u_rows(), layout.w_rows()
    out = []
    for r in range(layout.row_pairs):
        u_red, w_red = is_red[urows[r]], is_red[wrows[r]]
        u_all, w_all = bool(u_red.all()), bool(w_red.all())
        if u_all == w_all or u_red.any() != u_all or w_red.any() != w_all:
            raise ExtractionError(f"row pair {r + 1} is not one red line and one white line")
        if r < num_vars:
            out.append(not u_all)
    return out


# amplified families

def gen_h1(f: CnfFormula, eps) -> tuple[Graph, GeneratorLayout]:
    """Each column vertex ``v_j`` replaced by sets ``A_j``, ``B_j`` of size
    ``k0 = ceil(m^(eps/(1-eps)))`` joined complete bipartite minus a perfect
    matching; ``v0`` sees all of them and ``A_j`` sees column ``j``."""
    eps = _fraction(eps)
    if not Fraction(1, 2) <= eps < 1:
        raise GeneratorError("H_1 needs eps in [1/2, 1)")
    check_formula(f)
    n, m = f.num_vars, f.num_clauses
    eps0 = eps / (1 - eps)
    k0 = max(1, _ceil_pow(m, eps0))
    C, R = 8 * m, n + 5 * m
    base, base_layout = gen_hphi(f)
    N = 2 * R * C + C * 2 * k0 + 1
    layout = GeneratorLayout("h1", {"n": n, "m": m, "eps": str(eps), "eps0": str(eps0),
                                    "k0": k0}, N, C, R, u_offset=1, w_offset=1 + R * C)
    shift = C  # matrix ids move down by C once the v_j are gone

    def a_id(j, p):
        return 1 + 2 * R * C + (j - 1) * 2 * k0 + (p - 1)

    def b_id(j, p):
        return a_id(j, p) + k0

    a_old, b_old = base.edge_arrays()
    matrix = (a_old > C) & (b_old > C)
    a_parts = [a_old[matrix] - shift]
    b_parts = [b_old[matrix] - shift]
    for key, vid in base_layout.extra.items():
        layout.extra[key] = vid - shift
    urows, wrows = layout.u_rows(), layout.w_rows()
    for j in range(1, C + 1):
        A = np.array([a_id(j, p) for p in range(1, k0 + 1)])
        B = A + k0
        for p in range(1, k0 + 1):
            layout.extra[f"a{j},{p}"] = int(A[p - 1])
            layout.extra[f"b{j},{p}"] = int(B[p - 1])
        x, y = np.meshgrid(A, B, indexing="ij")
        off = ~np.eye(k0, dtype=bool)
        a_parts += [x[off], np.zeros(2 * k0, dtype=np.int64)]
        b_parts += [y[off], np.concatenate([A, B])]
        column = np.concatenate([urows[:, j - 1], wrows[:, j - 1]])
        x, y = np.meshgrid(A, column, indexing="ij")
        a_parts.append(x.ravel())
        b_parts.append(y.ravel())
    g = Graph.from_edge_arrays(N, np.concatenate(a_parts), np.concatenate(b_parts))
    return g, layout


def h1_embed_coloring(layout: GeneratorLayout, f: CnfFormula, assignment) -> list[int]:
    """Embed on the matrix, then ``A_j`` takes ``v_j``'s color and ``B_j``
    the other non-red color."""
    n, m = f.num_vars, f.num_clauses
    base_layout = _matrix_layout("hphi", {}, layout.columns, layout.row_pairs)
    base = hphi_embed_coloring(base_layout, f, assignment)
    C = layout.columns
    col = [0] * layout.n
    col[0] = RED
    for v in range(C + 1, base_layout.n):
        col[v - C] = base[v]
    k0 = layout.params["k0"]
    for j in range(1, C + 1):
        vj = base[j]
        other = GREEN if vj == BLUE else BLUE
        for p in range(1, k0 + 1):
            col[layout.extra[f"a{j},{p}"]] = vj
            col[layout.extra[f"b{j},{p}"]] = other
    return col


def gen_g2(g1: Graph, eps) -> tuple[Graph, GeneratorLayout]:
    """Per input vertex ``v_i``: sets ``A_i``, ``B_i`` of size ``ceil(n^(eps/(1-eps)))``,
    complete bipartite minus a matching, ``v_i ~ A_i``; a new apex sees every
    ``A_i`` and ``B_i``. The apex is the last vertex."""
    eps = _fraction(eps)
    if not 0 <= eps < Fraction(1, 2):
        raise GeneratorError("G_2 needs eps in [0, 1/2)")
    if g1.n < 1 or not is_connected(g1):
        raise GeneratorError("G_2 needs a connected input graph")
    n = g1.n
    eps0 = eps / (1 - eps)
    k0 = max(1, _ceil_pow(n, eps0))
    N = n + 2 * n * k0 + 1
    apex = N - 1
    layout = GeneratorLayout("g2", {"n": n, "eps": str(eps), "eps0": str(eps0), "k0": k0}, N)
    layout.extra["apex"] = apex
    a0, b0 = g1.edge_arrays()
    a_parts, b_parts = [a0], [b0]
    off = ~np.eye(k0, dtype=bool)
    for i in range(n):
        A = n + 2 * i * k0 + np.arange(k0)
        B = A + k0
        for p in range(k0):
            layout.extra[f"a{i + 1},{p + 1}"] = int(A[p])
            layout.extra[f"b{i + 1},{p + 1}"] = int(B[p])
        x, y = np.meshgrid(A, B, indexing="ij")
        a_parts += [x[off], np.full(k0, i), np.full(2 * k0, apex)]
        b_parts += [y[off], A, np.concatenate([A, B])]
    g = Graph.from_edge_arrays(N, np.concatenate(a_parts), np.concatenate(b_parts))
    return g, layout


def gen_h2(f: CnfFormula, eps) -> tuple[Graph, GeneratorLayout]:
    """The reduction graph widened to ``C = max(8m, ceil(m^(1+eps0)))``
    columns with ``eps0 = 1/eps - 2``; no extra gadgets."""
    eps = _fraction(eps)
    if not Fraction(1, 3) <= eps < Fraction(1, 2):
        raise GeneratorError("H_2 needs eps in [1/3, 1/2)")
    check_formula(f)
    m = f.num_clauses
    eps0 = 1 / eps - 2
    C = max(8 * m, _ceil_pow(m, 1 + eps0))
    return _hphi_like("h2", f, C, {"n": f.num_vars, "m": m, "eps": str(eps),
                                   "eps0": str(eps0), "columns": C})


# small named graphs

def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, outer + spokes + inner)


def diamond_graph() -> Graph:
    """Vertices 0 and 3 are the non-adjacent pair."""
    return build_graph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])


def cycle(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return build_graph(n, list(itertools.combinations(range(n), 2)))


def path(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def merge_cascade_graph() -> Graph:
    """Seven vertices ``u1..u7`` (ids 0..6), eleven edges: diamonds on
    ``{u1,u2,u3,u4}`` and ``{u4,u5,u6,u7}``; merging ``u1`` with ``u4``
    creates a K4 on ``{u1,u5,u6,u7}``."""
    edges = [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3),
             (3, 4), (3, 5), (4, 5), (4, 6), (5, 6), (0, 6)]
    return build_graph(7, edges)


def articulation_example() -> Graph:
    """Hub 0; w1..w4 = 1..4; u1, v1, u2, v2 = 5, 6, 7, 8."""
    u1, v1, u2, v2 = 5, 6, 7, 8
    edges = [(0, 1), (0, 2), (0, 3), (0, 4), (u1, v1), (u2, v2),
             (1, u1), (1, u2), (2, u1), (2, v2), (3, v1), (3, u2), (4, v1), (4, v2)]
    return build_graph(9, edges)


def glued_family(k: int, paired: bool = True) -> Graph:
    """Diameter-2 irreducible graph with articulation neighborhood ``N[0]``.

    Hub 0 and ``k`` edges ``{u_i, v_i}``. Each neighbor of the hub picks one
    endpoint per edge: all ``u``; ``v`` at one index; ``v`` at two indices.
    With ``paired`` an extra all-``v`` neighbor is joined to the all-``u``
    one, so the neighborhood of the hub holds one matched pair.
    """
    if k < 2:
        raise GeneratorError("glued family needs k >= 2")
    u = [1 + 2 * i for i in range(k)]
    v = [2 + 2 * i for i in range(k)]
    choices = [frozenset()]
    choices += [frozenset([i]) for i in range(k)]
    choices += [frozenset(c) for c in itertools.combinations(range(k), 2)]
    if paired:
        choices.append(frozenset(range(k)))
    edges = [(u[i], v[i]) for i in range(k)]
    nxt = 2 * k + 1
    ids = []
    for pick in choices:
        w = nxt
        nxt += 1
        ids.append(w)
        edges.append((0, w))
        for i in range(k):
            edges.append((w, v[i] if i in pick else u[i]))
    if paired:
        edges.append((ids[0], ids[-1]))
    return build_graph(nxt, edges)


# formulas and random instances

def random_formula(rng: random.Random, num_vars: int, num_clauses: int,
                   planted: Optional[Sequence[bool]] = None) -> CnfFormula:
    """Random 3-CNF with three distinct variables per clause. With
    ``planted`` every clause is satisfied by that assignment."""
    if num_vars < 3:
        raise GeneratorError("need at least three variables")
    clauses = []
    while len(clauses) < num_clauses:
        vars_ = rng.sample(range(1, num_vars + 1), 3)
        clause = tuple(x if rng.random() < 0.5 else -x for x in vars_)
        if planted is not None and not any((l > 0) == planted[abs(l) - 1] for l in clause):
            continue
        clauses.append(clause)
    return CnfFormula(num_vars, clauses)


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(a, b) for a, b in itertools.combinations(range(n), 2) if rng.random() < p]
    return build_graph(n, edges)


def _close_to_diameter_two(rng: random.Random, g: Graph) -> Graph:
    """Add edges between far-apart pairs until the diameter is at most 2."""
    edges = set(g.edges())
    n = g.n
    while True:
        cur = build_graph(n, edges)
        far = []
        for s in range(n):
            dist = bfs_distances(cur, s)
            far += [(s, t) for t in range(s + 1, n) if dist[t] > 2]
        if not far:
            return cur
        a, b = rng.choice(far)
        # a shared neighbor brings the pair to distance 2
        c = rng.choice([x for x in range(n) if x not in (a, b)])
        edges.add((min(a, c), max(a, c)))
        edges.add((min(b, c), max(b, c)))


def _articulation_candidate(rng: random.Random) -> Graph:
    """Hub, a few small bipartite pieces and hub neighbors wired to them."""
    pieces = rng.randint(2, 3)
    edges = []
    nxt = 1
    parts = []
    for _ in range(pieces):
        shape = rng.choice(["edge", "edge", "path3", "c4", "odd"])
        if shape == "edge":
            vs = [nxt, nxt + 1]
            es = [(0, 1)]
        elif shape == "path3":
            vs = [nxt, nxt + 1, nxt + 2]
            es = [(0, 1), (1, 2)]
        elif shape == "c4":
            vs = [nxt + i for i in range(4)]
            es = [(0, 1), (1, 2), (2, 3), (3, 0)]
        else:
            vs = [nxt + i for i in range(5)]
            es = [(i, (i + 1) % 5) for i in range(5)]
        nxt += len(vs)
        edges += [(vs[a], vs[b]) for a, b in es]
        parts.append(vs)
    hub_nbrs = []
    width = rng.randint(3, 7)
    for _ in range(width):
        w = nxt
        nxt += 1
        hub_nbrs.append(w)
        edges.append((0, w))
        for vs in parts:
            for x in rng.sample(vs, rng.randint(1, max(1, len(vs) // 2))):
                edges.append((w, x))
    for _ in range(rng.randint(0, 2)):
        a, b = rng.sample(hub_nbrs, 2)
        edges.append((a, b))
    n = nxt
    g = build_graph(n, edges)
    return _close_to_diameter_two(rng, g)


def sample_random_instance(seed: int, profile: str = "small") -> Graph:
    """Seeded random graph. ``small``: up to 20 vertices, mixed density.
    ``diam2``: irreducible with diameter at most 2. ``artic``: ``diam2`` that
    also has an articulation neighborhood."""
    from .reduce import reduce_to_irreducible
    from .solvers import find_articulation_neighborhood
    from .graph import metrics

    rng = random.Random(f"{profile}:{seed}")
    if profile == "small":
        n = rng.randint(1, 20)
        p = rng.choice([0.1, 0.2, 0.3, 0.4, 0.5, 0.7])
        return random_graph(rng, n, p)
    if profile not in ("diam2", "artic"):
        raise GeneratorError(f"unknown profile {profile!r}")
    for _ in range(10_000):
        if profile == "diam2":
            n = rng.randint(5, 16)
            g = _close_to_diameter_two(rng, random_graph(rng, n, rng.choice([0.2, 0.3, 0.4])))
        else:
            g = _articulation_candidate(rng)
        if not is_connected(g):
            continue
        out = reduce_to_irreducible(g)
        if not out.irreducible or out.graph.n < 4:
            continue
        r = out.graph
        if metrics(r).diameter > 2 or r.n > 20:
            continue
        if profile == "artic" and find_articulation_neighborhood(r) is None:
            continue
        return r
    raise GeneratorError(f"no {profile} instance found for seed {seed}")
