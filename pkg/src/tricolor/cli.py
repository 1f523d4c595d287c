"""Command-line front end: gen, solve, verify, stats, reduce, bench.

Exit codes: 0 colorable / success, 20 uncolorable (or K4 found), 1 usage,
2 I/O or parse failure, 3 precondition failure, 4 timeout.
"""

from __future__ import annotations

import argparse
import csv
import io
import random
import sys
from fractions import Fraction
from typing import Optional

from . import generators as gen
from .formats import (
    FormatError,
    read_coloring,
    read_dimacs_cnf,
    read_dimacs_graph,
    write_coloring,
    write_dimacs_graph,
    write_trace,
)
from .graph import GraphError, is_triangle_free, metrics
from .reduce import ReductionError, is_irreducible, reduce_to_irreducible
from .sat import SatError, cnf_brute_force_sat
from .solvers import (
    STRATEGIES,
    AlgorithmInvariantError,
    PreconditionError,
    SolveTimeout,
    find_articulation_neighborhood,
    solve_auto,
    verify_coloring,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_PRECONDITION = 3
EXIT_TIMEOUT = 4
EXIT_UNCOLORABLE = 20

BENCH_COLUMNS = ["family", "params", "n", "m", "delta", "Delta", "diameter", "strategy",
                 "seed_size", "enumeration_count", "wall_ms", "verdict"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _eps(text: Optional[str]) -> Fraction:
    if text is None:
        raise UsageError("--eps is required for this family")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse --eps {text!r}") from None


def _formula(args):
    if not args.cnf:
        raise UsageError("--cnf is required for this family")
    return read_dimacs_cnf(_read(args.cnf))


def build_family(args):
    """(graph, layout or None) for ``gen`` and ``bench``."""
    fam = args.family
    if fam == "gn":
        if args.k is None:
            raise UsageError("--k is required for gn")
        return gen.gen_gn(args.k)
    if fam == "gnm":
        if args.n is None or args.m is None:
            raise UsageError("--n and --m are required for gnm")
        return gen.gen_gnm(args.n, args.m)
    if fam == "hphi":
        return gen.gen_hphi(_formula(args))
    if fam == "h1":
        return gen.gen_h1(_formula(args), _eps(args.eps))
    if fam == "h2":
        return gen.gen_h2(_formula(args), _eps(args.eps))
    if fam == "g2":
        if args.input:
            g1 = read_dimacs_graph(_read(args.input))
        else:
            g1, _ = gen.gen_hphi(_formula(args))
        return gen.gen_g2(g1, _eps(args.eps))
    if fam == "random":
        seed = 0 if args.seed is None else args.seed
        return gen.sample_random_instance(seed, args.profile), None
    raise UsageError(f"unknown family {fam!r}")


def cmd_gen(args) -> int:
    g, layout = build_family(args)
    _write(args.output, write_dimacs_graph(g))
    if args.layout:
        if layout is None:
            raise UsageError("this family has no layout")
        _write(args.layout, layout.dump())
    return EXIT_OK


def _stats_footer(rep) -> dict:
    return {"strategy": rep.strategy, "seed_size": rep.seed_size,
            "enumeration_count": rep.enumeration_count}


def cmd_solve(args) -> int:
    g = read_dimacs_graph(_read(args.graph))
    timeout = None if args.timeout_ms is None else args.timeout_ms / 1000
    try:
        rep = solve_auto(g, strategy=args.strategy, parallel=args.parallel,
                         deterministic=args.deterministic, timeout=timeout)
    except SolveTimeout:
        print("c timeout", file=sys.stderr)
        return EXIT_TIMEOUT
    _write(args.output, write_coloring(rep.colorable, rep.coloring, _stats_footer(rep)))
    return EXIT_OK if rep.colorable else EXIT_UNCOLORABLE


def cmd_verify(args) -> int:
    g = read_dimacs_graph(_read(args.graph))
    cf = read_coloring(_read(args.coloring))
    if not cf.colorable:
        raise PreconditionError("coloring file reports UNCOLORABLE; nothing to verify")
    if len(cf.coloring) != g.n:
        raise PreconditionError(f"coloring has {len(cf.coloring)} vertices, graph has {g.n}")
    ok = verify_coloring(g, cf.coloring)
    print("OK" if ok else "INVALID")
    return EXIT_OK if ok else 1


def stats_report(g) -> str:
    mt = metrics(g)
    witness = find_articulation_neighborhood(g) if g.n else None
    lines = [
        f"vertices {g.n}",
        f"edges {g.edge_count}",
        f"diameter {mt.diameter}",
        f"radius {mt.radius}",
        f"min_degree {mt.min_degree}",
        f"max_degree {mt.max_degree}",
        f"triangle_free {'yes' if is_triangle_free(g) else 'no'}",
        f"irreducible {'yes' if is_irreducible(g) else 'no'}",
        ("no articulation neighborhood" if witness is None
         else f"articulation neighborhood at vertex {witness + 1}"),
    ]
    return "\n".join(lines) + "\n"


def cmd_stats(args) -> int:
    g = read_dimacs_graph(_read(args.graph))
    _write(args.output, stats_report(g))
    return EXIT_OK


def cmd_reduce(args) -> int:
    g = read_dimacs_graph(_read(args.graph))
    out = reduce_to_irreducible(g)
    if args.trace:
        _write(args.trace, write_trace(out.trace))
    if not out.irreducible:
        quad = " ".join(str(v + 1) for v in out.k4)
        print(f"c K4 found on {quad}", file=sys.stderr)
        return EXIT_UNCOLORABLE
    _write(args.output, write_dimacs_graph(out.graph))
    return EXIT_OK


def _parse_range(text: str) -> list[int]:
    try:
        if "-" in text:
            lo, hi = text.split("-", 1)
            return list(range(int(lo), int(hi) + 1))
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot parse range {text!r}") from None


def bench_instances(args):
    """Yields (family, params text, graph, formula or None)."""
    fam = args.family
    if fam == "gn":
        for k in _parse_range(args.k_range or "3-6"):
            g, _ = gen.gen_gn(k)
            yield fam, f"k={k}", g, None
    elif fam == "gnm":
        for m in _parse_range(args.m_range or "1"):
            n = args.n or 3
            g, _ = gen.gen_gnm(n, m)
            yield fam, f"n={n};m={m}", g, None
    elif fam == "hphi":
        seed = 0 if args.seed is None else args.seed
        rng = random.Random(seed)
        n = args.n or 4
        for m in _parse_range(args.m_range or "1"):
            for i in range(args.count):
                f = gen.random_formula(rng, n, m)
                g, _ = gen.gen_hphi(f)
                yield fam, f"n={n};m={m};seed={seed};i={i}", g, f
    elif fam == "random":
        seed = 0 if args.seed is None else args.seed
        for i in range(args.count):
            g = gen.sample_random_instance(seed + i, args.profile)
            yield fam, f"profile={args.profile};seed={seed + i}", g, None
    else:
        raise UsageError(f"bench does not support family {fam!r}")


def cmd_bench(args) -> int:
    timeout = None if args.timeout_ms is None else args.timeout_ms / 1000
    buf = io.StringIO()
    buf.write("# schema=1\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(BENCH_COLUMNS)
    for fam, params, g, f in bench_instances(args):
        mt = metrics(g)
        try:
            rep = solve_auto(g, strategy=args.strategy, parallel=args.parallel,
                             deterministic=args.deterministic, timeout=timeout)
            verdict = rep.answer
            if f is not None:
                expected = cnf_brute_force_sat(f) is not None
                if expected != rep.colorable:
                    verdict += "!MISMATCH"
            row = [rep.strategy, rep.seed_size, rep.enumeration_count,
                   "-" if args.deterministic else f"{rep.wall_time * 1000:.1f}", verdict]
        except SolveTimeout:
            row = ["-", "-", "-", "-" if args.deterministic else args.timeout_ms, "TIMEOUT"]
        writer.writerow([fam, params, g.n, g.edge_count, mt.min_degree, mt.max_degree,
                         mt.diameter] + row)
    _write(args.output, buf.getvalue())
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tricolor", description="Exact 3-coloring toolkit")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    families = ["gn", "gnm", "hphi", "h1", "g2", "h2", "random"]
    g = sub.add_parser("gen", help="generate a graph family as DIMACS")
    g.add_argument("family", choices=families)
    g.add_argument("--k", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--cnf", help="DIMACS CNF input (hphi, h1, h2, g2)")
    g.add_argument("--input", help="DIMACS graph used as G_1 for g2")
    g.add_argument("--eps", help="epsilon, e.g. 1/3 or 0.4")
    g.add_argument("--seed", type=int)
    g.add_argument("--profile", choices=["small", "diam2", "artic"], default="small")
    g.add_argument("--layout", help="write the role layout to this path")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    def solver_flags(sp):
        sp.add_argument("--strategy", choices=STRATEGIES, default="auto")
        sp.add_argument("--parallel", type=int, default=1)
        sp.add_argument("--deterministic", action="store_true")
        sp.add_argument("--timeout-ms", type=int)

    s = sub.add_parser("solve", help="decide 3-colorability of a DIMACS graph")
    s.add_argument("graph")
    solver_flags(s)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a coloring file against a graph")
    v.add_argument("graph")
    v.add_argument("coloring")
    v.set_defaults(func=cmd_verify)

    st = sub.add_parser("stats", help="metrics and structural flags")
    st.add_argument("graph")
    st.add_argument("-o", "--output")
    st.set_defaults(func=cmd_stats)

    r = sub.add_parser("reduce", help="apply the reduction rules to a fixpoint")
    r.add_argument("graph")
    r.add_argument("--trace", help="write the event trace here")
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_reduce)

    b = sub.add_parser("bench", help="sweep a family and write a CSV")
    b.add_argument("family", choices=["gn", "gnm", "hphi", "random"])
    b.add_argument("--k", dest="k_range", help="k range for gn, e.g. 3-6")
    b.add_argument("--m", dest="m_range", help="clause counts, e.g. 1 or 1-3")
    b.add_argument("--n", type=int, help="variable count")
    b.add_argument("--count", type=int, default=10, help="instances per setting")
    b.add_argument("--seed", type=int)
    b.add_argument("--profile", choices=["small", "diam2", "artic"], default="small")
    solver_flags(b)
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"tricolor: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, FormatError) as e:
        print(f"tricolor: {e}", file=sys.stderr)
        return EXIT_IO
    except (PreconditionError, gen.GeneratorError, GraphError, SatError, ReductionError) as e:
        print(f"tricolor: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    except AlgorithmInvariantError as e:
        print(f"tricolor: internal invariant violated: {e}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
