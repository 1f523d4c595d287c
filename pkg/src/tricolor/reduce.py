"""Diamond elimination (merge the non-adjacent pair of an induced diamond)
and siblings elimination (drop ``u`` when ``N(u)`` is inside ``N(v)``),
iterated to a fixpoint, with a trace that lifts colorings back.

Work happens on a mutable bitmask graph whose vertex labels are original
vertex ids. A merged vertex keeps the smaller label, so label order always
matches the order of compacted ids.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .graph import Graph, _bits, _lowest

MERGE = "M"
REMOVE = "R"


class ReductionError(ValueError):
    pass


@dataclass(frozen=True)
class ReductionEvent:
    kind: str  # MERGE or REMOVE
    primary: int  # merge: kept vertex; remove: removed vertex
    secondary: int  # merge: absorbed vertex; remove: surviving sibling


@dataclass
class ReductionTrace:
    """Ordered merge/remove events over original vertex ids."""

    original_n: int
    events: list = field(default_factory=list)

    def parents(self) -> dict:
        parent = {}
        for e in self.events:
            if e.kind == MERGE:
                parent[e.secondary] = e.primary
            else:
                parent[e.primary] = e.secondary
        return parent

    def survivors(self) -> list[int]:
        gone = set(self.parents())
        return [v for v in range(self.original_n) if v not in gone]

    def resolve(self, v: int, parent: Optional[dict] = None) -> int:
        """Surviving label that ``v`` was absorbed into (or copies its color from)."""
        parent = self.parents() if parent is None else parent
        while v in parent:
            v = parent[v]
        return v

    def vertex_map(self) -> list[int]:
        """Original id -> reduced-graph id, following absorption chains."""
        index = {v: i for i, v in enumerate(self.survivors())}
        parent = self.parents()
        return [index[self.resolve(v, parent)] for v in range(self.original_n)]

    def to_text(self) -> str:
        """One event per line, 1-based ids: ``M <kept> <absorbed>`` or
        ``R <removed> <keeper>``."""
        return "".join(f"{e.kind} {e.primary + 1} {e.secondary + 1}\n" for e in self.events)

    @classmethod
    def from_text(cls, text: str, original_n: int) -> "ReductionTrace":
        events = []
        for lineno, line in enumerate(text.splitlines(), 1):
            parts = line.split()
            if not parts:
                continue
            if len(parts) != 3 or parts[0] not in (MERGE, REMOVE):
                raise ReductionError(f"line {lineno}: malformed trace event {line!r}")
            try:
                a, b = int(parts[1]) - 1, int(parts[2]) - 1
            except ValueError:
                raise ReductionError(f"line {lineno}: non-integer vertex id") from None
            if not (0 <= a < original_n and 0 <= b < original_n) or a == b:
                raise ReductionError(f"line {lineno}: vertex id out of range")
            events.append(ReductionEvent(parts[0], a, b))
        return cls(original_n, events)


class WorkGraph:
    """Mutable graph keyed by original labels, recording every change."""

    def __init__(self, g: Graph, trace: Optional[ReductionTrace] = None):
        self.nb = dict(enumerate(g.masks))
        self.alive = (1 << g.n) - 1
        self.trace = trace if trace is not None else ReductionTrace(g.n)

    def labels(self) -> list[int]:
        return _bits(self.alive)

    def adjacent(self, a: int, b: int) -> bool:
        return bool(self.nb[a] >> b & 1)

    def merge(self, a: int, b: int) -> int:
        """Merge non-adjacent ``a`` and ``b``; the smaller label survives."""
        if a == b or self.adjacent(a, b):
            raise ReductionError(f"cannot merge adjacent or equal vertices {a}, {b}")
        keep, gone = min(a, b), max(a, b)
        nb = self.nb
        moved = nb.pop(gone)
        gone_bit, keep_bit = 1 << gone, 1 << keep
        for x in _bits(moved):
            nb[x] = (nb[x] & ~gone_bit) | keep_bit
        nb[keep] |= moved
        self.alive &= ~gone_bit
        self.trace.events.append(ReductionEvent(MERGE, keep, gone))
        return keep

    def remove(self, u: int, keeper: int) -> None:
        if u == keeper or self.nb[u] & ~self.nb[keeper]:
            raise ReductionError(f"N({u}) is not contained in N({keeper})")
        nb = self.nb
        bit = 1 << u
        for x in _bits(nb.pop(u)):
            nb[x] &= ~bit
        self.alive &= ~bit
        self.trace.events.append(ReductionEvent(REMOVE, u, keeper))

    def to_graph(self) -> tuple[Graph, list[int]]:
        """Compacted graph plus the compact-id -> label list."""
        order = self.labels()
        index = {v: i for i, v in enumerate(order)}
        adj = [[index[u] for u in _bits(self.nb[v])] for v in order]
        return Graph(len(order), adj), order

    # witnesses, all in label order

    def scan_triangles(self):
        """First K4 (sorted) and lexicographically first diamond witness."""
        nb = self.nb
        k4 = None
        best = None
        for c in self.labels():
            higher = nb[c] >> (c + 1) << (c + 1)
            for d in _bits(higher):
                common = nb[c] & nb[d]
                if not common:
                    continue
                for a in _bits(common):
                    rest = common & nb[a]
                    if rest:
                        quad = tuple(sorted((c, d, a, _lowest(rest))))
                        if k4 is None or quad < k4:
                            k4 = quad
                        continue
                if common & (common - 1) == 0:
                    continue
                for a in _bits(common):
                    if best is not None and a > best[0]:
                        break
                    non_nb = common & ~nb[a] & ~((1 << (a + 1)) - 1)
                    if non_nb:
                        cand = (a, _lowest(non_nb), c, d)
                        if best is None or cand < best:
                            best = cand
                        break
        return k4, best

    def first_sibling_pair(self) -> Optional[tuple[int, int]]:
        """``(removed, keeper)`` for the lexicographically first sibling pair."""
        nb = self.nb
        alive = self.alive
        sup = {}
        best = None
        for u in self.labels():
            s = alive & ~(1 << u)
            for x in _bits(nb[u]):
                s &= nb[x]
                if not s:
                    break
            sup[u] = s
            if s:
                lo = _lowest(s)
                pair = (lo, u) if lo < u else (u, lo)
                if best is None or pair < best:
                    best = pair
        if best is None:
            return None
        a, b = best
        a_in_b = bool(sup[a] >> b & 1)
        b_in_a = bool(sup[b] >> a & 1)
        if a_in_b and b_in_a:
            return (b, a)  # twins: drop the higher id
        if a_in_b:
            return (a, b)
        return (b, a)


@dataclass
class ReduceOutcome:
    trace: ReductionTrace
    graph: Optional[Graph] = None  # reduced graph when irreducible
    labels: Optional[list] = None  # reduced id -> original label
    k4: Optional[tuple] = None  # K4 witness in original labels

    @property
    def irreducible(self) -> bool:
        return self.k4 is None


def reduce_work(work: WorkGraph) -> Optional[tuple]:
    """Apply both rules until a K4 appears (returned) or neither applies."""
    while True:
        k4, diamond = work.scan_triangles()
        if k4 is not None:
            return k4
        if diamond is not None:
            work.merge(diamond[0], diamond[1])
            continue
        pair = work.first_sibling_pair()
        if pair is None:
            return None
        work.remove(*pair)


def reduce_to_irreducible(g: Graph) -> ReduceOutcome:
    work = WorkGraph(g)
    k4 = reduce_work(work)
    if k4 is not None:
        return ReduceOutcome(work.trace, k4=k4)
    reduced, labels = work.to_graph()
    return ReduceOutcome(work.trace, reduced, labels)


def _as_work(g: Graph) -> WorkGraph:
    return WorkGraph(g, ReductionTrace(g.n))


def apply_rule1(g: Graph, pair: tuple[int, int]) -> Graph:
    """Merge the non-adjacent pair of an induced diamond; ids compacted."""
    a, b = pair
    if g.has_edge(a, b):
        raise ReductionError(f"({a}, {b}) is adjacent; rule 1 needs a non-edge")
    common = g.masks[a] & g.masks[b]
    if not any(g.masks[c] & common for c in _bits(common)):
        raise ReductionError(f"({a}, {b}) is not the non-edge of a diamond")
    work = _as_work(g)
    work.merge(a, b)
    return work.to_graph()[0]


def apply_rule2(g: Graph, removed: int, keeper: int) -> Graph:
    if removed == keeper or g.has_edge(removed, keeper):
        raise ReductionError("siblings must be distinct and non-adjacent")
    if not g.neighbor_set(removed) <= g.neighbor_set(keeper):
        raise ReductionError(f"N({removed}) is not contained in N({keeper})")
    work = _as_work(g)
    work.remove(removed, keeper)
    return work.to_graph()[0]


def replay(g: Graph, trace: ReductionTrace) -> Graph:
    """Apply ``trace`` forward to ``g`` and return the compacted result."""
    work = _as_work(g)
    for e in trace.events:
        if e.kind == MERGE:
            work.merge(e.primary, e.secondary)
        else:
            work.remove(e.primary, e.secondary)
    return work.to_graph()[0]


def lift_coloring(trace: ReductionTrace, reduced_coloring: Sequence[int]) -> list[int]:
    """Extend a coloring of the reduced graph to every original vertex."""
    survivors = trace.survivors()
    if len(reduced_coloring) != len(survivors):
        raise ReductionError("coloring length does not match the reduced graph")
    if any(c not in (1, 2, 3) for c in reduced_coloring):
        raise ReductionError("reduced coloring must be total")
    by_label = dict(zip(survivors, reduced_coloring))
    parent = trace.parents()
    return [by_label[trace.resolve(v, parent)] for v in range(trace.original_n)]


def is_irreducible(g: Graph) -> bool:
    """K4-free, diamond-free and siblings-free."""
    work = _as_work(g)
    k4, diamond = work.scan_triangles()
    return k4 is None and diamond is None and work.first_sibling_pair() is None
