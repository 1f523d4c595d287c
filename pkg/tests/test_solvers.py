import pytest
from hypothesis import given, settings

from conftest import brute_3color, small_graphs
from tricolor import generators as gen
from tricolor.graph import build_graph, metrics
from tricolor.sat import CnfFormula
from tricolor.solvers import (
    PreconditionError,
    SolveTimeout,
    find_articulation_neighborhood,
    oracle_3color,
    solve_articulation,
    solve_auto,
    solve_diam2,
    solve_diam3,
    solve_with_seed_set,
    verify_coloring,
)


def test_verify_examples():
    assert verify_coloring(gen.complete(3), [1, 2, 3])
    assert not verify_coloring(build_graph(2, [(0, 1)]), [1, 1])
    assert not verify_coloring(gen.complete(3), [1, 2])
    assert not verify_coloring(gen.complete(3), [1, 2, 4])


def test_oracle_examples():
    assert verify_coloring(gen.cycle(5), oracle_3color(gen.cycle(5)))
    assert oracle_3color(gen.complete(4)) is None
    assert verify_coloring(gen.petersen(), oracle_3color(gen.petersen()))


@settings(max_examples=300, deadline=None)
@given(small_graphs())
def test_oracle_matches_brute_force(g):
    c = oracle_3color(g)
    assert (c is not None) == brute_3color(g)
    if c is not None:
        assert verify_coloring(g, c)


def test_seed_set_examples():
    rep = solve_with_seed_set(gen.cycle(5), [0, 1, 3])
    assert rep.colorable and verify_coloring(gen.cycle(5), rep.coloring)
    rep = solve_with_seed_set(gen.complete(4), [0, 1, 2, 3])
    assert not rep.colorable
    with pytest.raises(PreconditionError):
        solve_with_seed_set(gen.cycle(5), [0, 1])


def test_seed_set_two_adjacent_on_c5_small_count():
    # two adjacent vertices do not dominate C5, so the seed adds a third
    rep = solve_with_seed_set(gen.cycle(5), [0, 1, 3])
    assert rep.enumeration_count <= 3


def test_seed_set_on_hphi():
    f = CnfFormula(3, [(1, 2, 3)])
    g, layout = gen.gen_hphi(f)
    seed = [layout.roles()["v0"]] + [layout.v(j) for j in range(1, 9)]
    rep = solve_with_seed_set(g, seed)
    assert rep.colorable and verify_coloring(g, rep.coloring)


def test_diam2_examples():
    rep = solve_diam2(gen.cycle(5))
    assert rep.colorable and rep.enumeration_count <= 4
    rep = solve_diam2(gen.petersen())
    assert rep.colorable and verify_coloring(gen.petersen(), rep.coloring)
    g, _ = gen.gen_gn(3)
    rep = solve_diam2(g)
    assert rep.colorable and rep.enumeration_count <= 2 ** 9
    with pytest.raises(PreconditionError):
        solve_diam2(gen.path(4))


def test_articulation_detection():
    assert find_articulation_neighborhood(gen.path(5)) == 2
    assert find_articulation_neighborhood(gen.petersen()) is None


def test_articulation_nine_vertex_example():
    g = gen.articulation_example()
    m = metrics(g)
    assert m.diameter == 2
    rep = solve_articulation(g, 0)
    assert rep.colorable and rep.enumeration_count == 0
    # hub red, N(hub) green, u's blue, v's red
    assert rep.coloring == [1, 3, 3, 3, 3, 2, 1, 2, 1]


def test_articulation_non_bipartite_component():
    c = [5, 6, 9, 10, 11]
    edges = [(0, 1), (0, 2), (0, 3), (0, 4), (7, 8)]
    edges += [(c[i], c[(i + 1) % 5]) for i in range(5)]
    edges += [(1, c[0]), (1, 7), (2, c[0]), (2, 8), (3, c[2]), (3, 7), (4, c[2]), (4, 8)]
    g = build_graph(12, edges)
    assert not solve_articulation(g, 0, check=False).colorable
    # the graph has diameter 3, so the checked entry point refuses it
    with pytest.raises(PreconditionError):
        solve_articulation(g, 0)


def test_articulation_random_suite_matches_oracle():
    for seed in range(40):
        g = gen.sample_random_instance(seed, "artic")
        v = find_articulation_neighborhood(g)
        rep = solve_articulation(g, v)
        assert rep.colorable == (oracle_3color(g) is not None)
        assert rep.enumeration_count == 0
        if rep.colorable:
            assert verify_coloring(g, rep.coloring)


def test_diam3_examples():
    rep = solve_diam3(gen.path(4))
    assert rep.colorable
    g, _ = gen.gen_gnm(3, 1)
    assert solve_diam3(g).colorable
    f = CnfFormula(3, [(1, 2, 3)])
    g, _ = gen.gen_hphi(f)
    rep = solve_diam3(g)
    assert rep.colorable and rep.seed_size <= 13


def test_auto_examples():
    k4_pendant = build_graph(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)])
    assert not solve_auto(k4_pendant).colorable
    g, _ = gen.gen_gn(3)
    rep = solve_auto(g)
    assert rep.colorable and verify_coloring(g, rep.coloring)
    assert solve_auto(build_graph(0, [])).colorable


@pytest.mark.parametrize("strategy", ["diam2", "seed-set"])
def test_forced_strategies(strategy):
    g = gen.petersen()
    rep = solve_auto(g, strategy=strategy)
    assert rep.colorable and verify_coloring(g, rep.coloring)


def test_forced_articulation_without_witness():
    with pytest.raises(PreconditionError):
        solve_auto(gen.petersen(), strategy="articulation")


def test_auto_random_matches_oracle():
    for seed in range(200):
        g = gen.sample_random_instance(seed, "small")
        rep = solve_auto(g)
        assert rep.colorable == (oracle_3color(g) is not None)


def test_parallel_matches_sequential():
    g, _ = gen.gen_hphi(CnfFormula(4, [(1, 2, 3), (-1, 2, 4)]))
    a = solve_auto(g)
    b = solve_auto(g, parallel=2, deterministic=True)
    c = solve_auto(g, parallel=2, deterministic=False)
    assert a.coloring == b.coloring
    assert c.colorable and verify_coloring(g, c.coloring)


def test_timeout():
    g, _ = gen.gen_hphi(CnfFormula(4, [(1, 2, 3), (-1, 2, 4)]))
    with pytest.raises(SolveTimeout):
        solve_auto(g, timeout=0.0)
    assert solve_auto(g, timeout=60).colorable
