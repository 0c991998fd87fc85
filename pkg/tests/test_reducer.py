import random

import pytest
from hypothesis import given, settings, strategies as st

from degstar import reducer as R
from degstar import verifiers as V
from degstar.embedding import toroidal_triangular_grid
from degstar.generators import random_bounded_degree, random_planar_triangulation
from degstar.graph import Graph, complete_graph, cycle_graph, grid_graph, path_graph
from degstar.lists import ListAssignment

BIG = range(100001)


def big_lists(n):
    return ListAssignment.uniform(n, BIG)


def test_parameters():
    p0 = R.GenusParameters.for_genus(0)
    assert (p0.alpha, p0.delta0, p0.alpha0) == (100000, 12, 0)
    p2 = R.GenusParameters.for_genus(2)
    assert p2.alpha0 == 73
    for g in range(0, 300):
        p = R.GenusParameters.for_genus(g)
        # exact ceilings checked against the defining inequalities
        assert (p.alpha0) ** 5 >= 48**5 * g**3 and (p.alpha0 - 1) ** 5 < 48**5 * g**3 or p.alpha0 == 0
        a = p.alpha - 100000
        assert a**5 >= 10**15 * g**3 and (a == 0 or (a - 1) ** 5 < 10**15 * g**3)
        d = p.delta0 - 12
        assert (4 * d) ** 5 >= g**2 and (d == 0 or (4 * d - 4) ** 5 < g**2)
    with pytest.raises(ValueError):
        R.GenusParameters.for_genus(-1)


def test_find_reducible_examples():
    assert R.find_reducible(complete_graph(7)) is None
    assert R.find_reducible(path_graph(2)) == (0, R.ReductionKind.DELETE, None)
    # vertex 0 of degree 5 next to vertex 1 of degree 9
    edges = [(0, w) for w in range(1, 6)] + [(1, w) for w in range(6, 14)]
    edges += [(a, b) for a in range(2, 14) for b in range(a + 1, 14) if a >= 6 or b >= 6]
    g = Graph.from_edges(14, edges)
    assert g.degree(0) == 5 and g.degree(1) == 9
    v, kind, partner = R.find_reducible(g)
    assert (v, kind, partner) == (0, R.ReductionKind.CONTRACT, 1)


def test_reduce_examples():
    core, L0, trace = R.reduce_fully(complete_graph(4), big_lists(4))
    assert core.n == 0 and len(trace) == 4
    core, _, _ = R.reduce_fully(grid_graph(3, 3))
    assert core.n == 0
    k7 = complete_graph(7)
    core, L0, trace = R.reduce_fully(k7, big_lists(7))
    assert core == k7 and len(trace) == 0 and len(L0) == 7


def test_trace_dump_lines():
    _, _, trace = R.reduce_fully(cycle_graph(4))
    lines = trace.dump().splitlines()
    assert len(lines) == 4
    assert lines[0] == "SuppressDegree2 v=0 partner=1,3 i=- nbrs=1,3 added=1-3"
    assert lines[1].endswith("added=-")  # edge 2-3 was already there


def irreducible(g):
    return R.find_reducible(g) is None


@st.composite
def small_graphs(draw):
    seed = draw(st.integers(0, 10**6))
    n = draw(st.integers(1, 25))
    return random_bounded_degree(n, draw(st.integers(1, 12)), random.Random(seed), density=draw(st.floats(0.3, 1.0)))


@settings(max_examples=150, deadline=None)
@given(small_graphs())
def test_trace_roundtrip(g):
    core, _, trace = R.reduce_fully(g)
    assert irreducible(core)
    fwd, vmap = trace.replay_forward()
    assert fwd == core
    assert all(vmap[label] == i for i, label in enumerate(trace.labels))
    assert trace.replay_backward() == g
    for rec in trace.records:
        if rec.kind is R.ReductionKind.CONTRACT:
            assert len(rec.neighbors) == 5 - rec.rule_index and rec.partner in rec.neighbors


def test_irreducible_toroidal_core_kept():
    r = toroidal_triangular_grid(4, 4)
    core, _, trace = R.reduce_fully(r.graph)
    assert core == r.graph and not trace.records


def test_select_and_assign_specials():
    p0 = R.GenusParameters.for_genus(0)
    assert R.select_special(complete_graph(5), p0) == []
    p2 = R.GenusParameters.for_genus(2)
    assert R.select_special(complete_graph(7), p2) == list(range(7))
    p48 = R.GenusParameters(genus=1, alpha=10**5, delta0=13, alpha0=48)
    g = random_bounded_degree(100, 9, random.Random(1))
    S = R.select_special(g, p48)
    assert len(S) == 48
    assert min(g.degree(v) for v in S) >= max(g.degree(v) for v in range(g.n) if v not in S)
    colors = R.assign_special_colors([0, 1], ListAssignment.uniform(2, [1, 2, 3]))
    assert colors == {0: 1, 1: 2}
    assert R.assign_special_colors([], ListAssignment([])) == {}
    L = ListAssignment.uniform(48, range(49))
    assert len(set(R.assign_special_colors(list(range(48)), L).values())) == 48
    with pytest.raises(R.InsufficientLists):
        R.assign_special_colors([0, 1], ListAssignment.uniform(2, [1, 2]))


def test_prune_lists():
    L = ListAssignment.uniform(3, range(1, 11))
    pruned = R.prune_lists(L, {0: 1, 1: 2})
    assert list(pruned[2]) == list(range(3, 11))
    assert list(pruned[0]) == list(range(1, 11))
    assert all(list(a) == list(b) for a, b in zip(R.prune_lists(L, {}), L))
    assert len(pruned[2]) >= len(L[2]) - 2


def test_color_base_branches():
    p0 = R.GenusParameters.for_genus(0)
    assert R.color_base(Graph.empty(0), [], ListAssignment([]), p0) == []
    c5 = cycle_graph(5)
    c = R.color_base(c5, [], ListAssignment.uniform(5, range(20736)), p0)
    assert V.is_distance_two(c5, c)
    hub = Graph.from_edges(151, [(0, w) for w in range(1, 151)])
    assert R.base_strategy(hub, [], p0) == ("lll", 1_837_118)
    assert R.base_strategy(c5, [], p0)[0] == "distance_two"


def test_color_base_respects_low_degree_specials():
    # a special of small degree still needs distinct colors around it
    g = complete_graph(7)
    p = R.GenusParameters(genus=2, alpha=100, delta0=13, alpha0=1)
    c = R.color_base(g, [0], ListAssignment.uniform(7, range(1, 50)), p)
    assert c[0] is None and len(set(c[1:])) == 6


def test_extend_examples():
    _, _, trace = R.reduce_fully(Graph.empty(0))
    assert R.extend_coloring(trace, [], ListAssignment([])) == []
    k7 = complete_graph(7)
    _, _, trace = R.reduce_fully(k7)
    base = list(range(7))
    assert R.extend_coloring(trace, base, big_lists(7)) == base
    core, _, trace = R.reduce_fully(complete_graph(4))
    c = R.extend_coloring(trace, [], big_lists(4))
    assert V.is_degenerate_star(complete_graph(4), c) and V.neighbors_distinct(complete_graph(4), c, 12)


def test_extend_with_tiny_lists_is_never_wrong():
    g = complete_graph(4)
    for size in range(1, 6):
        try:
            run = R.run_genus_pipeline(g, ListAssignment.uniform(4, range(size)), 0)
        except (R.NoAvailableColor, R.InsufficientLists):
            continue
        assert V.is_degenerate_star(g, run.coloring)


def test_pipeline_examples():
    grid = grid_graph(10, 10)
    run = R.run_genus_pipeline(grid, big_lists(100), 0)
    assert V.is_degenerate_star(grid, run.coloring, mode="restricted")
    assert V.neighbors_distinct(grid, run.coloring, 12)
    k7 = complete_graph(7)
    run = R.run_genus_pipeline(k7, big_lists(7), 2)
    assert sorted(run.specials) == list(range(7)) and len(set(run.coloring)) == 7
    assert run.checks["special_colors_unique"]
    assert R.color_genus_graph(Graph.empty(1), ListAssignment([[42, 43]]), 0) in ([42], [43])


def test_pipeline_on_triangulations():
    rng = random.Random(6)
    for _ in range(4):
        r = random_planar_triangulation(rng.randint(20, 80), rng)
        g = r.graph
        run = R.run_genus_pipeline(g, big_lists(g.n), 0, random.Random(1))
        assert run.trace.core.n == 0
        assert V.neighbors_distinct(g, run.coloring, 12)


def test_pipeline_on_torus_uses_specials():
    r = toroidal_triangular_grid(5, 5)
    g = r.graph
    run = R.run_genus_pipeline(g, big_lists(g.n), 2)
    assert len(run.specials) == 25
    assert len(set(run.coloring)) == 25


def test_soundness_firewall_catches_bad_output():
    with pytest.raises(R.SoundnessError):
        R.verify_output(cycle_graph(4), [1, 2, 1, 2], ListAssignment.uniform(4, range(3)))
    with pytest.raises(R.SoundnessError):
        R.verify_output(path_graph(2), [0, 5], ListAssignment.uniform(2, range(3)))
