"""2SAT, list 2-coloring via 2SAT, and a small exhaustive CNF oracle.

Literals use the DIMACS convention: variable ``i`` (1-based) is the integer
``i`` when positive and ``-i`` when negated. Assignments are lists of bools
indexed from 0 (``assignment[i - 1]`` is the value of variable ``i``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .graph import Graph

Assignment = list  # list[bool]

MAX_BRUTE_FORCE_VARS = 25


class SatError(ValueError):
    pass


@dataclass(frozen=True)
class TwoSatInstance:
    num_vars: int
    clauses: tuple  # tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        for c in self.clauses:
            if len(c) != 2:
                raise SatError(f"2SAT clause must have two literals: {c}")
            _check_literals(c, self.num_vars)


@dataclass(frozen=True)
class CnfFormula:
    """A 3-CNF formula; each clause holds exactly three literals."""

    num_vars: int
    clauses: tuple  # tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        for c in self.clauses:
            if len(c) != 3:
                raise SatError(f"clause must have exactly three literals: {c}")
            _check_literals(c, self.num_vars)

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def evaluate(self, assignment: Sequence[bool]) -> bool:
        return satisfies(self.clauses, assignment)


def _check_literals(clause, num_vars: int) -> None:
    for lit in clause:
        if lit == 0 or abs(lit) > num_vars:
            raise SatError(f"literal {lit} out of range for {num_vars} variables")


def literal_value(lit: int, assignment: Sequence[bool]) -> bool:
    value = assignment[abs(lit) - 1]
    return value if lit > 0 else not value


def satisfies(clauses, assignment: Sequence[bool]) -> bool:
    return all(any(literal_value(l, assignment) for l in c) for c in clauses)


def _node(lit: int) -> int:
    # implication-graph node: 2*(var-1) for x, 2*(var-1)+1 for not x
    return 2 * (abs(lit) - 1) + (lit < 0)


def _solve_2sat(num_vars: int, clauses) -> Optional[Assignment]:
    size = 2 * num_vars
    succ: list[list[int]] = [[] for _ in range(size)]
    for a, b in clauses:
        na, nb = _node(a), _node(b)
        succ[na ^ 1].append(nb)
        succ[nb ^ 1].append(na)

    # iterative Tarjan; components come out in reverse topological order
    index = [-1] * size
    low = [0] * size
    comp = [-1] * size
    on_stack = [False] * size
    stack: list[int] = []
    counter = 0
    n_comp = 0
    for root in range(size):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            edges = succ[v]
            if i < len(edges):
                work[-1] = (v, i + 1)
                w = edges[i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = n_comp
                    if w == v:
                        break
                n_comp += 1

    assignment = []
    for i in range(num_vars):
        pos, neg = comp[2 * i], comp[2 * i + 1]
        if pos == neg:
            return None
        assignment.append(pos < neg)
    return assignment


def twosat_solve(inst: TwoSatInstance) -> Optional[Assignment]:
    """Satisfying assignment of a 2-CNF instance, or None if unsatisfiable."""
    return _solve_2sat(inst.num_vars, inst.clauses)


def _normalize_lists(g: Graph, lists) -> list[tuple]:
    if len(lists) != g.n:
        raise SatError("one color list per vertex is required")
    return [tuple(sorted(set(l))) for l in lists]


def list2_solve(g: Graph, lists) -> Optional[list[int]]:
    """Proper coloring with ``color[v] in lists[v]``, or None.

    Every list must hold one or two colors from {1, 2, 3}.
    """
    norm = _normalize_lists(g, lists)
    for v, l in enumerate(norm):
        if not 1 <= len(l) <= 2:
            raise SatError(f"vertex {v} has a list of size {len(l)}; expected 1 or 2")
        if any(c not in (1, 2, 3) for c in l):
            raise SatError(f"vertex {v} has a color outside 1..3")
    return list_coloring(g.neighbors, g.n, norm, relax=False)


def list_coloring(neighbors, n: int, lists, relax: bool) -> Optional[list[int]]:
    """Shared core of list 2-coloring.

    ``neighbors`` maps a vertex to its adjacent vertices. With ``relax`` set,
    vertices whose list still holds three colors after unit propagation are
    dropped, so a None answer proves the full instance infeasible while a
    returned coloring may leave those vertices at 0.
    """
    cur = [set(l) for l in lists]
    color = [0] * n
    queue = [v for v in range(n) if len(cur[v]) <= 1]
    while queue:
        v = queue.pop()
        if color[v]:
            continue
        if not cur[v]:
            return None
        (c,) = cur[v]
        color[v] = c
        for u in neighbors(v):
            lu = cur[u]
            if c in lu:
                if color[u]:
                    return None
                lu.discard(c)
                if len(lu) <= 1:
                    queue.append(u)
    free = [v for v in range(n) if not color[v] and len(cur[v]) == 2]
    if not relax and any(not color[v] and len(cur[v]) != 2 for v in range(n)):
        raise SatError("list of size 3 reached the 2SAT stage")
    var = {v: i + 1 for i, v in enumerate(free)}
    first = {v: min(cur[v]) for v in free}
    clauses = []
    for v in free:
        lv = cur[v]
        xv = var[v]
        for u in neighbors(v):
            if u <= v or u not in var:
                continue
            for c in lv & cur[u]:
                lit_v = xv if c == first[v] else -xv
                lit_u = var[u] if c == first[u] else -var[u]
                clauses.append((-lit_v, -lit_u))
    model = _solve_2sat(len(free), clauses)
    if model is None:
        return None
    for v in free:
        lv = sorted(cur[v])
        color[v] = lv[0] if model[var[v] - 1] else lv[1]
    return color


def cnf_brute_force_sat(f: CnfFormula) -> Optional[Assignment]:
    """Lexicographically first satisfying assignment (False < True), or None.

    Exhaustive over assignments in order ``x1, x2, ...``; a branch is cut as
    soon as some clause has all its literals falsified, which never skips a
    satisfying assignment.
    """
    if f.num_vars > MAX_BRUTE_FORCE_VARS:
        raise SatError(f"brute force limited to {MAX_BRUTE_FORCE_VARS} variables")
    n = f.num_vars
    # clause c is decided once its largest variable is assigned
    by_last: list[list] = [[] for _ in range(n + 1)]
    for c in f.clauses:
        by_last[max(abs(l) for l in c)].append(c)
    values: list = [None] * n

    def falsified(c) -> bool:
        return not any(literal_value(l, values) for l in c)

    def search(i: int) -> bool:
        if i == n:
            return True
        for val in (False, True):
            values[i] = val
            if any(falsified(c) for c in by_last[i + 1]):
                continue
            if search(i + 1):
                return True
        values[i] = None
        return False

    if n == 0:
        return [] if not f.clauses else None
    return list(values) if search(0) else None
