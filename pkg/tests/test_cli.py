import pytest

from tricolor import generators as gen
from tricolor.cli import main
from tricolor.formats import read_coloring, read_dimacs_graph, write_dimacs_cnf, write_dimacs_graph
from tricolor.sat import CnfFormula
from tricolor.solvers import verify_coloring


@pytest.fixture
def files(tmp_path):
    def put(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return put


def test_gen_gn(tmp_path):
    out = tmp_path / "gn.col"
    assert main(["gen", "gn", "--k", "3", "-o", str(out)]) == 0
    assert read_dimacs_graph(out.read_text()).n == 37


def test_gen_gn_bad_k(capsys):
    assert main(["gen", "gn", "--k", "2"]) == 3
    assert "k >= 3" in capsys.readouterr().err


def test_gen_hphi_with_layout(files, tmp_path):
    cnf = files("f.cnf", write_dimacs_cnf(CnfFormula(3, [(1, 2, 3)])))
    out, lay = tmp_path / "h.col", tmp_path / "h.lay"
    assert main(["gen", "hphi", "--cnf", cnf, "-o", str(out), "--layout", str(lay)]) == 0
    assert read_dimacs_graph(out.read_text()).edge_count == 594
    assert "role v0 1" in lay.read_text()


@pytest.mark.parametrize("family,extra", [
    ("gnm", ["--n", "3", "--m", "1"]),
    ("h1", ["--eps", "1/2"]),
    ("h2", ["--eps", "1/3"]),
    ("g2", ["--eps", "0"]),
    ("random", ["--seed", "4", "--profile", "diam2"]),
])
def test_gen_other_families(files, tmp_path, family, extra):
    cnf = files("f.cnf", write_dimacs_cnf(CnfFormula(3, [(1, 2, 3)])))
    out = tmp_path / "g.col"
    assert main(["gen", family, "--cnf", cnf, "-o", str(out)] + extra) == 0
    assert read_dimacs_graph(out.read_text()).n > 0


def test_gen_missing_params():
    assert main(["gen", "hphi"]) == 1
    assert main(["gen", "h1", "--cnf", "x.cnf"]) == 2


def test_solve_and_verify(files, tmp_path):
    c5 = files("c5.col", write_dimacs_graph(gen.cycle(5)))
    sol = tmp_path / "c5.sol"
    assert main(["solve", c5, "-o", str(sol)]) == 0
    cf = read_coloring(sol.read_text())
    assert verify_coloring(gen.cycle(5), cf.coloring)
    assert any(c.startswith("strategy") for c in cf.comments)
    assert main(["verify", c5, str(sol)]) == 0


def test_solve_k4_exit_20(files, capsys):
    k4 = files("k4.col", write_dimacs_graph(gen.complete(4)))
    assert main(["solve", k4]) == 20
    assert capsys.readouterr().out.startswith("s UNCOLORABLE")


def test_solve_hphi(files):
    g, _ = gen.gen_hphi(CnfFormula(3, [(1, -2, 3)]))
    assert main(["solve", files("h.col", write_dimacs_graph(g)), "-o", "-"]) == 0


def test_solve_timeout(files):
    g, _ = gen.gen_hphi(CnfFormula(4, [(1, 2, 3), (-1, 2, 4)]))
    assert main(["solve", files("h.col", write_dimacs_graph(g)), "--timeout-ms", "0"]) == 4


def test_verify_failures(files):
    edge = files("e.col", "p edge 2 1\ne 1 2\n")
    assert main(["verify", edge, files("bad.sol", "s COLORABLE 3\nv 1 1\nv 2 1\n")]) == 1
    assert main(["verify", edge, files("short.sol", "s COLORABLE 3\nv 1 1\n")]) == 3


def test_stats(files, capsys):
    assert main(["stats", files("p.col", write_dimacs_graph(gen.petersen()))]) == 0
    out = capsys.readouterr().out
    assert "diameter 2" in out and "no articulation neighborhood" in out
    assert main(["stats", files("p4.col", write_dimacs_graph(gen.path(4)))]) == 0
    assert "diameter 3" in capsys.readouterr().out


def test_reduce(files, tmp_path):
    out, trace = tmp_path / "r.col", tmp_path / "r.trace"
    d = files("d.col", write_dimacs_graph(gen.diamond_graph()))
    assert main(["reduce", d, "-o", str(out), "--trace", str(trace)]) == 0
    assert read_dimacs_graph(out.read_text()) == gen.complete(3)
    assert trace.read_text() == "M 1 4\n"
    assert main(["reduce", files("k4.col", write_dimacs_graph(gen.complete(4)))]) == 20
    pet = files("p.col", write_dimacs_graph(gen.petersen()))
    assert main(["reduce", pet, "-o", str(out)]) == 0
    assert read_dimacs_graph(out.read_text()) == gen.petersen()


def _rows(text):
    lines = text.splitlines()
    assert lines[0] == "# schema=1"
    header = lines[1].split(",")
    return [dict(zip(header, l.split(","))) for l in lines[2:]]


def test_bench_gn(tmp_path):
    out = tmp_path / "b.csv"
    assert main(["bench", "gn", "--k", "3-6", "--deterministic", "-o", str(out)]) == 0
    rows = _rows(out.read_text())
    assert len(rows) == 4
    for k, row in zip(range(3, 7), rows):
        assert row["verdict"] == "COLORABLE"
        assert int(row["enumeration_count"]) <= 2 ** (3 * k)


def test_bench_hphi_matches_oracle(tmp_path):
    out = tmp_path / "b.csv"
    assert main(["bench", "hphi", "--m", "1", "--count", "10", "--seed", "2",
                 "--deterministic", "-o", str(out)]) == 0
    rows = _rows(out.read_text())
    assert len(rows) == 10
    assert all(r["verdict"] == "COLORABLE" for r in rows)


def test_bench_timeout(tmp_path):
    out = tmp_path / "b.csv"
    assert main(["bench", "hphi", "--m", "2", "--count", "1", "--timeout-ms", "0",
                 "-o", str(out)]) == 0
    assert _rows(out.read_text())[0]["verdict"] == "TIMEOUT"


def test_usage_and_io_errors(capsys):
    with pytest.raises(SystemExit) as e:
        main(["solve"])
    assert e.value.code == 1
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 1
    assert main(["solve", "/nonexistent/graph.col"]) == 2


def test_parse_error_exit_2(files):
    assert main(["solve", files("bad.col", "p edge 2 1\ne 1 3\n")]) == 2
