import itertools
import random

import numpy as np
import pytest

from tricolor import generators as gen
from tricolor.domset import is_dominating
from tricolor.graph import find_k4, is_triangle_free, metrics
from tricolor.reduce import is_irreducible
from tricolor.sat import CnfFormula, cnf_brute_force_sat
from tricolor.solvers import find_articulation_neighborhood, oracle_3color, solve_auto, verify_coloring


def test_gadget_properties():
    gadget = gen.find_clause_gadget()
    assert len(gadget.edges) == 10
    assert gen.gadget_properties_hold(gadget.edges)
    ext = gen.gadget_extendable(gadget.edges)
    for c1, c2, c3 in itertools.product((1, 2, 3), repeat=3):
        mono = c1 == c2 == c3
        assert bool(ext[9 * (c1 - 1) + 3 * (c2 - 1) + (c3 - 1)]) == (not mono)
    assert gen.gadget_extension(1, 1, 1) is None
    tail = gen.gadget_extension(1, 2, 3)
    assert tail is not None and len(tail) == 8 and tail[:3] == (1, 2, 3)


def test_gadget_is_cached():
    assert gen.find_clause_gadget() is gen.find_clause_gadget()


def test_gn_rejects_small_k():
    with pytest.raises(gen.GeneratorError):
        gen.gen_gn(2)


def test_gn_sizes_and_coloring():
    g, layout = gen.gen_gn(3)
    assert g.n == 37 == layout.n
    assert g.degree(0) == 18
    assert verify_coloring(g, gen.gn_coloring(3))
    assert is_dominating(g, gen.gn_column_dominating_set(3))
    m = metrics(g)
    assert m.diameter == 2
    assert is_triangle_free(g) and is_irreducible(g)


def test_gn_degrees_against_construction():
    # one partner sits in both the column and the row join, so it counts once
    for k in (3, 4, 5):
        g, _ = gen.gen_gn(k)
        col = gen.gn_coloring(k)
        deg = g.degrees()
        red = [v for v in range(1, g.n) if col[v] == gen.RED]
        other = [v for v in range(1, g.n) if col[v] != gen.RED]
        assert set(deg[red].tolist()) == {3 * k - 1}
        assert set(deg[other].tolist()) == {4 * k - 3}


def test_gnm_examples():
    g, layout = gen.gen_gnm(3, 1)
    assert g.n == 137 and g.edge_count == 584
    m = metrics(g)
    assert (m.diameter, m.radius) == (3, 2)
    assert is_triangle_free(g) and is_irreducible(g)
    assert solve_auto(g).colorable


def test_hphi_examples():
    f = CnfFormula(3, [(1, 2, 3)])
    g, layout = gen.gen_hphi(f)
    base, _ = gen.gen_gnm(3, 1)
    assert g.n == 137 and g.edge_count == 594 == base.edge_count + 10
    assert is_triangle_free(g) and is_irreducible(g)
    gadget_pairs = set(g.edges()) - set(base.edges())
    rows = {}
    for i in range(1, layout.row_pairs + 1):
        for j in range(1, layout.columns + 1):
            rows[layout.u(i, j)] = ("u", i)
            rows[layout.w(i, j)] = ("w", i)
    assert all(rows[a] != rows[b] for a, b in gadget_pairs)


def test_hphi_rejects_repeated_variable():
    with pytest.raises(gen.GeneratorError):
        gen.gen_hphi(CnfFormula(3, [(1, -1, 2)]))


def test_embed_and_extract():
    f = CnfFormula(3, [(1, 2, 3)])
    g, layout = gen.gen_hphi(f)
    c = gen.hphi_embed_coloring(layout, f, [True, True, True])
    assert verify_coloring(g, c)
    assert f.evaluate(gen.hphi_extract_assignment(layout, c, 3, g))
    f2 = CnfFormula(5, [(1, 2, 3), (-1, 4, 5)])
    g2, layout2 = gen.gen_hphi(f2)
    for bits in itertools.product((False, True), repeat=5):
        if f2.evaluate(bits):
            c = gen.hphi_embed_coloring(layout2, f2, bits)
            assert verify_coloring(g2, c)
            assert f2.evaluate(gen.hphi_extract_assignment(layout2, c, 5, g2))


def test_embed_rejects_unsatisfying_assignment():
    f = CnfFormula(3, [(1, 2, 3)])
    _, layout = gen.gen_hphi(f)
    with pytest.raises(gen.GeneratorError):
        gen.hphi_embed_coloring(layout, f, [False, False, False])


def test_extract_rejects_improper():
    f = CnfFormula(3, [(1, 2, 3)])
    g, layout = gen.gen_hphi(f)
    with pytest.raises(gen.ExtractionError):
        gen.hphi_extract_assignment(layout, [1] * g.n, 3, g)


def test_extract_from_solver_coloring():
    f = CnfFormula(3, [(1, 2, 3)])
    g, layout = gen.gen_hphi(f)
    rep = solve_auto(g)
    assert f.evaluate(gen.hphi_extract_assignment(layout, rep.coloring, 3, g))


def test_h1_example():
    f = CnfFormula(3, [(1, 2, 3)])
    g, layout = gen.gen_h1(f, "1/2")
    assert g.n == 145
    m = metrics(g)
    assert (m.diameter, m.radius) == (3, 2)
    c = gen.h1_embed_coloring(layout, f, [True, True, True])
    assert verify_coloring(g, c)
    with pytest.raises(gen.GeneratorError):
        gen.gen_h1(f, "1/4")


def test_g2_example():
    f = CnfFormula(3, [(1, 2, 3)])
    g1, _ = gen.gen_hphi(f)
    g, layout = gen.gen_g2(g1, 0)
    assert g.n == 3 * g1.n + 1
    m = metrics(g)
    assert (m.diameter, m.radius) == (3, 2)
    assert solve_auto(g).colorable == solve_auto(g1).colorable
    with pytest.raises(gen.GeneratorError):
        gen.gen_g2(g1, "1/2")


def test_g2_preserves_colorability_small():
    # K4 plus a pendant vertex is connected and not 3-colorable
    k4p = gen.build_graph(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)])
    g, _ = gen.gen_g2(k4p, 0)
    assert oracle_3color(g) is None
    g, _ = gen.gen_g2(gen.cycle(5), 0)
    assert oracle_3color(g) is not None


def test_h2_degenerates_to_hphi_for_small_m():
    f = CnfFormula(3, [(1, 2, 3)])
    assert gen.gen_h2(f, "1/3")[0] == gen.gen_hphi(f)[0]
    f2 = CnfFormula(3, [(1, 2, 3), (-1, -2, 3)])
    assert gen.gen_h2(f2, "1/3")[0] == gen.gen_hphi(f2)[0]


def test_h2_widens_for_large_m():
    rng = random.Random(3)
    f = gen.random_formula(rng, 3, 9)
    g, layout = gen.gen_h2(f, "1/3")
    assert layout.columns == 81
    assert g.n == 2 * (3 + 45) * 81 + 81 + 1


def test_named_graphs():
    assert gen.petersen().edge_count == 15
    assert find_k4(gen.complete(4)) is not None
    g = gen.merge_cascade_graph()
    assert (g.n, g.edge_count) == (7, 11)


def test_random_instances():
    a = gen.sample_random_instance(1, "small")
    assert a == gen.sample_random_instance(1, "small") and a.n <= 20
    g = gen.sample_random_instance(7, "artic")
    assert find_articulation_neighborhood(g) is not None
    assert metrics(gen.sample_random_instance(3, "diam2")).diameter <= 2
    with pytest.raises(gen.GeneratorError):
        gen.sample_random_instance(0, "bogus")


def test_planted_formula_is_satisfied():
    rng = random.Random(9)
    for _ in range(20):
        planted = [rng.random() < 0.5 for _ in range(8)]
        f = gen.random_formula(rng, 8, 10, planted=planted)
        assert f.evaluate(planted)
        assert cnf_brute_force_sat(f) is not None


def test_layout_dump_roles():
    _, layout = gen.gen_hphi(CnfFormula(3, [(1, 2, 3)]))
    text = layout.dump()
    assert "role v0 1" in text
    roles = layout.roles()
    assert roles["g1,1"] == layout.gadget(1, 1)
    assert np.all(layout.u_rows() >= layout.u_offset)
