"""3-coloring strategies: seed-set enumeration with list 2-coloring, the
diameter-2 and diameter-3 solvers, the polynomial articulation-neighborhood
algorithm, a backtracking oracle, and an automatic dispatcher.

Colors are 1, 2, 3. In the articulation algorithm 1 is red, 2 blue and
3 green.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .domset import greedy_dominating_set, is_dominating
from .graph import (
    Graph,
    _bits,
    bfs_distances,
    connected_components,
    eccentricities,
    is_connected,
    metrics,
)
from .reduce import WorkGraph, is_irreducible, lift_coloring, reduce_to_irreducible, reduce_work
from .sat import _solve_2sat, list_coloring

RED, BLUE, GREEN = 1, 2, 3
ORACLE_LIMIT = 64
LOG2_3 = math.log2(3)


class PreconditionError(ValueError):
    """Input does not meet a solver's stated requirements."""


class AlgorithmInvariantError(RuntimeError):
    """A structural fact the articulation algorithm relies on did not hold."""


class SolveTimeout(Exception):
    pass


@dataclass
class SolveReport:
    colorable: bool
    coloring: Optional[list]
    strategy: str
    seed_size: int = 0
    enumeration_count: int = 0
    wall_time: float = 0.0

    @property
    def answer(self) -> str:
        return "COLORABLE" if self.colorable else "UNCOLORABLE"


def verify_coloring(g: Graph, c: Sequence[int]) -> bool:
    """True iff ``c`` assigns every vertex a color in 1..3 and no edge is
    monochromatic."""
    if c is None or len(c) != g.n:
        return False
    col = np.asarray(c, dtype=np.int64)
    if g.n and not ((col >= 1) & (col <= 3)).all():
        return False
    a, b = g.edge_arrays()
    return not bool((col[a] == col[b]).any())


def _check_deadline(deadline: Optional[float]) -> None:
    if deadline is not None and time.monotonic() >= deadline:
        raise SolveTimeout("time budget exhausted")


# oracle

def _degeneracy_order(g: Graph) -> list[int]:
    """Smallest-last order reversed: the densest core comes first."""
    deg = [g.degree(v) for v in range(g.n)]
    removed = [False] * g.n
    order = []
    for _ in range(g.n):
        v = min((x for x in range(g.n) if not removed[x]), key=lambda x: (deg[x], x))
        removed[v] = True
        order.append(v)
        for u in g.neighbors(v):
            if not removed[u]:
                deg[u] -= 1
    return order[::-1]


def oracle_3color(g: Graph, limit: int = ORACLE_LIMIT) -> Optional[list[int]]:
    """Exhaustive backtracking in degeneracy order with palette symmetry
    breaking (a vertex may open at most one new color)."""
    if g.n > limit:
        raise PreconditionError(f"oracle limited to {limit} vertices (graph has {g.n})")
    order = _degeneracy_order(g)
    color = [0] * g.n
    nbrs = [g.neighbors(v) for v in range(g.n)]

    def rec(i: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        taken = {color[u] for u in nbrs[v]}
        for c in range(1, min(3, used + 1) + 1):
            if c in taken:
                continue
            color[v] = c
            if rec(i + 1, max(used, c)):
                return True
        color[v] = 0
        return False

    return list(color) if rec(0, 0) else None


# seed enumeration engine

FREE = "free"  # colors 1..3, each step may open one new color
PAIR = "pair"  # colors {2, 3}, first branch vertex fixed to 2


def _lists_for(color: list[int]) -> list:
    return [(c,) if c else (1, 2, 3) for c in color]


def _search(g: Graph, order: Sequence[int], base: Sequence[int], palette: str,
            deadline: Optional[float], prefix: Sequence[int] = ()) -> tuple[Optional[list], int]:
    """Backtrack over colors of ``order``; every complete branch is finished
    by list 2-coloring. Each node first runs the relaxed list coloring
    (vertices still holding three colors are dropped), which can only rule
    out branches that have no completion. Returns (coloring, leaf count)."""
    n = g.n
    nbrs = g.neighbors
    color = list(base)
    leaves = 0
    start_max = max(color) if any(color) else 0
    for v, c in zip(order, prefix):
        color[v] = c
        start_max = max(start_max, c)

    def candidates(i: int, maxc: int) -> list[int]:
        if palette == PAIR:
            return [2] if i == 0 else [2, 3]
        return list(range(1, min(3, maxc + 1) + 1))

    def rec(i: int, maxc: int) -> Optional[list]:
        nonlocal leaves
        _check_deadline(deadline)
        if i == len(order):
            leaves += 1
            res = list_coloring(nbrs, n, _lists_for(color), relax=True)
            if res is None:
                return None
            if not all(res):
                raise PreconditionError("seed set does not dominate the graph")
            return res
        if list_coloring(nbrs, n, _lists_for(color), relax=True) is None:
            return None
        v = order[i]
        taken = {color[u] for u in nbrs(v)}
        for c in candidates(i, maxc):
            if c in taken:
                continue
            color[v] = c
            res = rec(i + 1, max(maxc, c))
            if res is not None:
                return res
        color[v] = 0
        return None

    return rec(len(prefix), start_max), leaves


def _prefixes(g: Graph, order: Sequence[int], base: Sequence[int], palette: str,
              want: int) -> list[tuple]:
    """Proper partial assignments of a leading slice of ``order``."""
    depth = 0
    out = [()]
    while len(out) < want and depth < len(order):
        nxt = []
        v = order[depth]
        for pre in out:
            color = list(base)
            for x, c in zip(order, pre):
                color[x] = c
            taken = {color[u] for u in g.neighbors(v)}
            maxc = max(color) if any(color) else 0
            if palette == PAIR:
                cands = [2] if depth == 0 else [2, 3]
            else:
                cands = range(1, min(3, maxc + 1) + 1)
            nxt += [pre + (c,) for c in cands if c not in taken]
        out = nxt
        depth += 1
    return out


def _run_prefix(payload):
    g, order, base, palette, deadline, prefix = payload
    return _search(g, order, base, palette, deadline, prefix)


def _enumerate(g: Graph, order: Sequence[int], base: Sequence[int], palette: str,
               deadline: Optional[float], parallel: int, deterministic: bool):
    if parallel <= 1 or deterministic or len(order) < 2:
        return _search(g, order, base, palette, deadline)
    prefixes = _prefixes(g, order, base, palette, 4 * parallel)
    total = 0
    with ProcessPoolExecutor(max_workers=parallel) as pool:
        pending = {pool.submit(_run_prefix, (g, order, base, palette, deadline, p))
                   for p in prefixes}
        found = None
        while pending and found is None:
            done, pending = wait(pending, return_when=FIRST_COMPLETED)
            for fut in done:
                res, count = fut.result()
                total += count
                if res is not None and found is None:
                    found = res
        for fut in pending:
            fut.cancel()
    return found, total


def _bfs_order(g: Graph, vertices) -> list[int]:
    members = set(vertices)
    seen = set()
    order = []
    for s in sorted(members):
        if s in seen:
            continue
        seen.add(s)
        queue = [s]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for u in g.neighbors(v):
                if u in members and u not in seen:
                    seen.add(u)
                    queue.append(u)
    return order


def solve_with_seed_set(g: Graph, seed, *, parallel: int = 1, deterministic: bool = True,
                        deadline: Optional[float] = None,
                        strategy: str = "seed-set") -> SolveReport:
    """Enumerate proper 3-colorings of the seed (BFS order, palette symmetry
    broken) and finish each by list 2-coloring the rest."""
    t0 = time.perf_counter()
    seed = sorted(set(seed))
    if g.n == 0:
        return SolveReport(True, [], strategy, 0, 0, time.perf_counter() - t0)
    if not is_dominating(g, seed):
        raise PreconditionError("seed set is not dominating")
    order = _bfs_order(g, seed)
    res, count = _enumerate(g, order, [0] * g.n, FREE, deadline, parallel, deterministic)
    return SolveReport(res is not None, res, strategy, len(seed), count,
                       time.perf_counter() - t0)


def _min_degree_vertex(g: Graph) -> int:
    return int(np.argmin(g.degrees()))


def solve_diam2(g: Graph, *, parallel: int = 1, deterministic: bool = True,
                deadline: Optional[float] = None, check: bool = True) -> SolveReport:
    """Color a minimum-degree vertex ``u`` with 1, branch over {2, 3} on
    ``N(u)``, list 2-color the rest. Falls back to the greedy dominating set
    when ``|D| log2 3 < deg(u)``."""
    t0 = time.perf_counter()
    if check:
        if g.n == 0 or not is_connected(g):
            raise PreconditionError("diameter-2 solver needs a connected graph")
        if max(eccentricities(g)) > 2:
            raise PreconditionError("diameter exceeds 2")
        if not is_irreducible(g):
            raise PreconditionError("input is reducible")
    if g.n == 1:
        return SolveReport(True, [1], "diam2", 0, 0, time.perf_counter() - t0)
    u = _min_degree_vertex(g)
    delta = g.degree(u)
    dom = greedy_dominating_set(g)
    if len(dom) * LOG2_3 < delta:
        rep = solve_with_seed_set(g, dom, parallel=parallel, deterministic=deterministic,
                                  deadline=deadline, strategy="diam2-dominating-set")
        rep.wall_time = time.perf_counter() - t0
        return rep
    base = [0] * g.n
    base[u] = 1
    order = list(g.neighbors(u))
    res, count = _enumerate(g, order, base, PAIR, deadline, parallel, deterministic)
    return SolveReport(res is not None, res, "diam2", delta, count, time.perf_counter() - t0)


def _components_of(g: Graph, mask: int, masks) -> list[list[int]]:
    parts = []
    rest = mask
    while rest:
        s = rest & -rest
        comp = s
        frontier = s
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= masks[v]
            nxt &= mask & ~comp
            comp |= nxt
            frontier = nxt
        parts.append(_bits(comp))
        rest &= ~comp
    return parts


def find_articulation_neighborhood(g: Graph) -> Optional[int]:
    """Lowest ``v`` such that ``g - N[v]`` is nonempty and disconnected."""
    masks = g.masks
    full = (1 << g.n) - 1
    for v in range(g.n):
        rest = full & ~(masks[v] | (1 << v))
        if rest and len(_components_of(g, rest, masks)) > 1:
            return v
    return None


def _bipartition(masks, comp: list[int]) -> Optional[tuple[list, list]]:
    side = {comp[0]: 0}
    stack = [comp[0]]
    members = set(comp)
    while stack:
        v = stack.pop()
        for u in _bits(masks[v]):
            if u not in members:
                continue
            if u not in side:
                side[u] = 1 - side[v]
                stack.append(u)
            elif side[u] == side[v]:
                return None
    a = sorted(v for v in comp if side[v] == 0)
    b = sorted(v for v in comp if side[v] == 1)
    return a, b


def solve_articulation(g: Graph, v0: int, *, check: bool = True) -> SolveReport:
    """Polynomial decision for an irreducible diameter-2 graph in which
    ``g - N[v0]`` is disconnected: collapse each bipartite piece to an edge,
    re-reduce, and settle the remaining choices with one 2SAT instance."""
    t0 = time.perf_counter()
    if not 0 <= v0 < g.n:
        raise PreconditionError(f"vertex {v0} out of range")
    masks = g.masks
    outside = ((1 << g.n) - 1) & ~(masks[v0] | (1 << v0))
    comps = _components_of(g, outside, masks)
    if check:
        if not is_connected(g):
            raise PreconditionError("graph is not connected")
        if max(eccentricities(g)) > 2:
            raise PreconditionError("diameter exceeds 2")
        if not is_irreducible(g):
            raise PreconditionError("input is reducible")
        if len(comps) < 2:
            raise PreconditionError(f"g - N[{v0}] is not disconnected")

    def done(colorable, coloring=None):
        return SolveReport(colorable, coloring, "articulation", 0, 0, time.perf_counter() - t0)

    classes = []
    for comp in comps:
        if len(comp) == 1:
            raise AlgorithmInvariantError(
                f"isolated vertex {comp[0]} outside N[{v0}] would be a sibling of {v0}")
        parts = _bipartition(masks, comp)
        if parts is None:
            return done(False)
        classes.append(parts)

    work = WorkGraph(g)
    for parts in classes:
        for cls in parts:
            keep = cls[0]
            for x in cls[1:]:
                keep = work.merge(keep, x)
    if reduce_work(work) is not None:
        return done(False)

    hub = work.trace.resolve(v0)
    nb = work.nb
    hood = nb[hub]
    n0, pairs = [], []
    for z in _bits(hood):
        inside = nb[z] & hood
        k = bin(inside).count("1")
        if k == 0:
            n0.append(z)
        elif k == 1:
            other = inside.bit_length() - 1
            if z < other:
                pairs.append((z, other))
        else:
            raise AlgorithmInvariantError(f"N({hub}) induces degree {k} at {z}")
    rest = work.alive & ~(hood | (1 << hub))
    comps2 = _components_of(g, rest, nb) if rest else []
    for comp in comps2:
        if len(comp) != 2:
            raise AlgorithmInvariantError(
                f"component {comp} outside N[{hub}] does not have two vertices")

    color = {hub: RED}
    if not comps2:
        for z in n0:
            color[z] = GREEN
        for a, b in pairs:
            color[a], color[b] = BLUE, GREEN
    elif not pairs:
        for z in n0:
            color[z] = GREEN
        for a, b in comps2:
            color[a], color[b] = BLUE, RED
    else:
        kk = len(comps2)
        clauses = []
        for i, (a, b) in enumerate(comps2):
            x = i + 1
            for j, (z1, z2) in enumerate(pairs):
                y = kk + j + 1
                for vert, sign in ((a, 1), (b, -1)):
                    hit1 = bool(nb[vert] >> z1 & 1)
                    hit2 = bool(nb[vert] >> z2 & 1)
                    if hit1 == hit2:
                        raise AlgorithmInvariantError(
                            f"vertex {vert} sees {int(hit1) * 2} of the pair ({z1}, {z2})")
                    clauses.append((sign * x, -y if hit1 else y))
        model = _solve_2sat(kk + len(pairs), clauses)
        if model is None:
            return done(False)
        for i, (a, b) in enumerate(comps2):
            color[a], color[b] = (RED, BLUE) if model[i] else (BLUE, RED)
        for j, (z1, z2) in enumerate(pairs):
            # y_j true: z_{2j-1} blue, z_{2j} green (the only decoding that
            # makes each clause forbid exactly a blue-blue edge)
            color[z1], color[z2] = (BLUE, GREEN) if model[kk + j] else (GREEN, BLUE)
        for z in n0:
            color[z] = GREEN

    survivors = work.trace.survivors()
    reduced = [color.get(v, 0) for v in survivors]
    if 0 in reduced:
        raise AlgorithmInvariantError("reduced graph vertex left uncolored")
    lifted = lift_coloring(work.trace, reduced)
    if not verify_coloring(g, lifted):
        raise AlgorithmInvariantError("lifted coloring is not proper")
    return done(True, lifted)


def diam3_seed_candidates(g: Graph) -> tuple[list[int], list[int]]:
    """``A + {u}`` (distance-2 layer of a minimum-degree ``u``) and the
    greedy dominating set."""
    u = _min_degree_vertex(g)
    dist = bfs_distances(g, u)
    layer = sorted([u] + [v for v in range(g.n) if dist[v] == 2])
    return layer, greedy_dominating_set(g)


def solve_diam3(g: Graph, *, parallel: int = 1, deterministic: bool = True,
                deadline: Optional[float] = None) -> SolveReport:
    """Seed-set enumeration over the smaller of the two candidate seeds
    (the distance-2 layer wins ties)."""
    t0 = time.perf_counter()
    if g.n == 0:
        return SolveReport(True, [], "diam3", 0, 0, 0.0)
    if not is_connected(g):
        raise PreconditionError("diameter-3 solver needs a connected graph")
    if max(eccentricities(g)) > 3:
        raise PreconditionError("diameter exceeds 3")
    layer, dom = diam3_seed_candidates(g)
    seed, name = (layer, "diam3-layer") if len(layer) <= len(dom) else (dom, "diam3-dominating-set")
    rep = solve_with_seed_set(g, seed, parallel=parallel, deterministic=deterministic,
                              deadline=deadline, strategy=name)
    rep.wall_time = time.perf_counter() - t0
    return rep


def _solve_connected(g: Graph, strategy: str, parallel: int, deterministic: bool,
                     deadline: Optional[float]) -> SolveReport:
    t0 = time.perf_counter()
    _check_deadline(deadline)
    out = reduce_to_irreducible(g)
    _check_deadline(deadline)
    if not out.irreducible:
        return SolveReport(False, None, "k4", 0, 0, time.perf_counter() - t0)
    r = out.graph
    if r.n <= 3:
        rep = SolveReport(True, list(range(1, r.n + 1)), "trivial", 0, 0)
    else:
        kw = dict(parallel=parallel, deterministic=deterministic, deadline=deadline)
        if strategy == "auto":
            diam = max(eccentricities(r))
            if diam <= 2:
                v = find_articulation_neighborhood(r)
                if v is not None:
                    rep = solve_articulation(r, v, check=False)
                else:
                    rep = solve_diam2(r, check=False, **kw)
            elif diam == 3:
                rep = solve_diam3(r, **kw)
            else:
                rep = solve_with_seed_set(r, greedy_dominating_set(r), **kw)
        elif strategy == "diam2":
            rep = solve_diam2(r, **kw)
        elif strategy == "diam3":
            rep = solve_diam3(r, **kw)
        elif strategy == "articulation":
            v = find_articulation_neighborhood(r)
            if v is None:
                raise PreconditionError("no articulation neighborhood")
            rep = solve_articulation(r, v)
        elif strategy in ("seed-set", "dominating-set"):
            rep = solve_with_seed_set(r, greedy_dominating_set(r), **kw)
        else:
            raise PreconditionError(f"unknown strategy {strategy!r}")
    if rep.colorable:
        rep.coloring = lift_coloring(out.trace, rep.coloring)
    rep.wall_time = time.perf_counter() - t0
    return rep


STRATEGIES = ("auto", "diam2", "diam3", "articulation", "seed-set")


def solve_auto(g: Graph, *, strategy: str = "auto", parallel: int = 1,
               deterministic: bool = True, timeout: Optional[float] = None) -> SolveReport:
    """Reduce, then dispatch by diameter; disconnected graphs are solved per
    component. The returned coloring is checked against ``g``."""
    t0 = time.perf_counter()
    deadline = None if timeout is None else time.monotonic() + timeout
    coloring = [0] * g.n
    strategies = []
    seed_size = 0
    count = 0
    for comp in connected_components(g):
        sub, ids = g.induced(comp)
        rep = _solve_connected(sub, strategy, parallel, deterministic, deadline)
        if rep.strategy not in strategies:
            strategies.append(rep.strategy)
        seed_size = max(seed_size, rep.seed_size)
        count += rep.enumeration_count
        if not rep.colorable:
            return SolveReport(False, None, "+".join(strategies), seed_size, count,
                               time.perf_counter() - t0)
        for local, c in enumerate(rep.coloring):
            coloring[ids[local]] = c
    if not verify_coloring(g, coloring):
        raise AlgorithmInvariantError("solver produced an improper coloring")
    return SolveReport(True, coloring, "+".join(strategies) or "trivial", seed_size, count,
                       time.perf_counter() - t0)
