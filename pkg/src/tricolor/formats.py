"""Text formats: DIMACS graphs and CNF, coloring files, reduction traces.

External ids are 1-based; conversion happens here and nowhere else. Every
parse error names the offending line.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from .graph import Graph, build_graph
from .reduce import ReductionError, ReductionTrace
from .sat import CnfFormula, SatError

log = logging.getLogger(__name__)


class FormatError(ValueError):
    def __init__(self, lineno: Optional[int], message: str):
        self.lineno = lineno
        prefix = f"line {lineno}: " if lineno is not None else ""
        super().__init__(prefix + message)


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(lineno, f"expected an integer, got {tok!r}") from None


def parse_dimacs_graph(text: str) -> tuple[Graph, int]:
    """Graph plus the number of duplicate edge lines that were dropped."""
    n = None
    declared = 0
    edges = []
    seen = set()
    duplicates = 0
    for lineno, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        kind = parts[0]
        if kind == "p":
            if n is not None:
                raise FormatError(lineno, "second problem line")
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise FormatError(lineno, "expected 'p edge <n> <m>'")
            n, declared = _int(parts[2], lineno), _int(parts[3], lineno)
            if n < 0 or declared < 0:
                raise FormatError(lineno, "negative count in header")
        elif kind == "e":
            if n is None:
                raise FormatError(lineno, "edge before the problem line")
            if len(parts) != 3:
                raise FormatError(lineno, "expected 'e <u> <v>'")
            u, v = _int(parts[1], lineno), _int(parts[2], lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise FormatError(lineno, f"vertex id out of range 1..{n}")
            if u == v:
                raise FormatError(lineno, f"self-loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                duplicates += 1
                continue
            seen.add(key)
            edges.append((u - 1, v - 1))
        else:
            raise FormatError(lineno, f"unknown line type {kind!r}")
    if n is None:
        raise FormatError(None, "missing 'p edge' line")
    if len(edges) + duplicates != declared:
        raise FormatError(None, f"header declares {declared} edges, found {len(edges) + duplicates}")
    if duplicates:
        log.warning("dropped %d duplicate edge line(s)", duplicates)
    return build_graph(n, edges), duplicates


def read_dimacs_graph(text: str) -> Graph:
    return parse_dimacs_graph(text)[0]


def write_dimacs_graph(g: Graph) -> str:
    a, b = g.edge_arrays()
    body = "".join(f"e {x} {y}\n" for x, y in zip((a + 1).tolist(), (b + 1).tolist()))
    return f"p edge {g.n} {g.edge_count}\n" + body


def read_dimacs_cnf(text: str) -> CnfFormula:
    num_vars = None
    declared = 0
    clauses = []
    current: list[int] = []
    start = None
    for lineno, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if num_vars is not None:
                raise FormatError(lineno, "second problem line")
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormatError(lineno, "expected 'p cnf <n> <m>'")
            num_vars, declared = _int(parts[2], lineno), _int(parts[3], lineno)
            continue
        if num_vars is None:
            raise FormatError(lineno, "clause before the problem line")
        for tok in parts:
            lit = _int(tok, lineno)
            if start is None:
                start = lineno
            if lit == 0:
                if len(current) != 3:
                    raise FormatError(start, f"clause has {len(current)} literals; expected 3")
                if any(abs(l) > num_vars for l in current):
                    raise FormatError(start, f"literal out of range 1..{num_vars}")
                clauses.append(tuple(current))
                current = []
                start = None
            else:
                current.append(lit)
    if num_vars is None:
        raise FormatError(None, "missing 'p cnf' line")
    if current:
        raise FormatError(start, "clause not terminated by 0")
    if len(clauses) != declared:
        raise FormatError(None, f"header declares {declared} clauses, found {len(clauses)}")
    try:
        return CnfFormula(num_vars, clauses)
    except SatError as e:
        raise FormatError(None, str(e)) from None


def write_dimacs_cnf(f: CnfFormula) -> str:
    body = "".join(" ".join(str(l) for l in c) + " 0\n" for c in f.clauses)
    return f"p cnf {f.num_vars} {f.num_clauses}\n" + body


@dataclass
class ColoringFile:
    colorable: bool
    coloring: Optional[list]
    comments: tuple = ()


def write_coloring(colorable: bool, coloring: Optional[Sequence[int]] = None,
                   stats: Optional[dict] = None) -> str:
    """``s COLORABLE 3`` plus one ``v <vertex> <color>`` line per vertex, or
    ``s UNCOLORABLE``; ``stats`` becomes trailing ``c key value`` lines."""
    if colorable:
        if coloring is None:
            raise ValueError("colorable result needs a coloring")
        out = ["s COLORABLE 3\n"]
        out += [f"v {v + 1} {c}\n" for v, c in enumerate(coloring)]
    else:
        out = ["s UNCOLORABLE\n"]
    for key, value in (stats or {}).items():
        out.append(f"c {key} {value}\n")
    return "".join(out)


def read_coloring(text: str, n: Optional[int] = None) -> ColoringFile:
    status = None
    assigned: dict[int, int] = {}
    comments = []
    for lineno, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if not parts:
            continue
        kind = parts[0]
        if kind == "c":
            comments.append(line[1:].strip())
        elif kind == "s":
            if status is not None:
                raise FormatError(lineno, "second status line")
            if parts[1:] == ["COLORABLE", "3"]:
                status = True
            elif parts[1:] == ["UNCOLORABLE"]:
                status = False
            else:
                raise FormatError(lineno, "expected 's COLORABLE 3' or 's UNCOLORABLE'")
        elif kind == "v":
            if status is not True:
                raise FormatError(lineno, "vertex line without 's COLORABLE 3'")
            if len(parts) != 3:
                raise FormatError(lineno, "expected 'v <vertex> <color>'")
            v, c = _int(parts[1], lineno), _int(parts[2], lineno)
            if v < 1 or (n is not None and v > n):
                raise FormatError(lineno, f"vertex {v} out of range")
            if c not in (1, 2, 3):
                raise FormatError(lineno, f"color {c} outside 1..3")
            if v in assigned:
                raise FormatError(lineno, f"vertex {v} colored twice")
            assigned[v] = c
        else:
            raise FormatError(lineno, f"unknown line type {kind!r}")
    if status is None:
        raise FormatError(None, "missing status line")
    if not status:
        return ColoringFile(False, None, tuple(comments))
    count = n if n is not None else len(assigned)
    missing = [v for v in range(1, count + 1) if v not in assigned]
    if missing:
        raise FormatError(None, f"vertex {missing[0]} has no color")
    if len(assigned) != count:
        raise FormatError(None, "vertex ids are not contiguous from 1")
    return ColoringFile(True, [assigned[v] for v in range(1, count + 1)], tuple(comments))


def write_trace(trace: ReductionTrace) -> str:
    return trace.to_text()


def read_trace(text: str, original_n: int) -> ReductionTrace:
    try:
        return ReductionTrace.from_text(text, original_n)
    except ReductionError as e:
        raise FormatError(None, str(e)) from None
