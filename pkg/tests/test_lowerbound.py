import math
import random

import mpmath
import networkx as nx
import pytest

from degstar import lowerbound as LB
from degstar.graph import Graph, complete_graph, cycle_graph, path_graph, star_graph
from degstar.oracles import chromatic

from conftest import atlas, from_nx

P4 = LB.ForbiddenFamily.preset("p4")


def mp_p(n, f):
    mpmath.mp.dps = 50
    return 9 * (mpmath.log(n) / n) ** (mpmath.mpf(1) / f)


def mp_bound(n, f):
    mpmath.mp.dps = 50
    return 9 * mpmath.mpf(n) ** (mpmath.mpf(2 * f - 1) / f) * mpmath.log(n) ** (mpmath.mpf(1) / f)


def test_family_validation_and_presets():
    assert (P4.size, P4.order, P4.parts) == (3, 4, (2, 2))
    assert LB.ForbiddenFamily.preset("k13").parts in ((1, 3), (3, 1))
    assert LB.ForbiddenFamily.preset("c4").size == 4
    with pytest.raises(ValueError):
        LB.ForbiddenFamily((complete_graph(3),))
    with pytest.raises(ValueError):
        LB.ForbiddenFamily((path_graph(2),))
    with pytest.raises(ValueError):
        LB.ForbiddenFamily((Graph.from_edges(4, [(0, 1), (2, 3)]),))
    with pytest.raises(ValueError):
        LB.ForbiddenFamily.preset("k5")
    fam = LB.ForbiddenFamily((cycle_graph(4), path_graph(3)))
    assert fam.f_min.m == 2


def test_edge_probability_values():
    p = LB.lemma5_p(10_000, P4)
    assert not p.clamped and p.value == pytest.approx(0.876, abs=5e-4)
    small = LB.lemma5_p(100, P4)
    assert small.clamped and small.value == 1.0 and small.raw > 1
    values = [LB.lemma5_p(n, P4).raw for n in range(10, 5000, 37)]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_edge_bound_values():
    assert LB.edge_bound(10_000, P4) == pytest.approx(8.8e7, rel=0.01)
    assert 0 < LB.edge_bound(2, P4) < math.inf
    for n in (10**4, 10**6, 10**8):
        ratio = LB.edge_bound(n, P4) / (LB.lemma5_p(n, P4).raw * n * n / 2)
        assert ratio == pytest.approx(2.0)


@pytest.mark.parametrize("n", [10**3, 10**4])
@pytest.mark.parametrize("name", ["p3", "p4", "c4", "k13"])
def test_formulas_against_high_precision(n, name):
    fam = LB.ForbiddenFamily.preset(name)
    assert abs(LB.lemma5_p(n, fam).raw / float(mp_p(n, fam.size)) - 1) < 1e-9
    assert abs(LB.edge_bound(n, fam) / float(mp_bound(n, fam.size)) - 1) < 1e-9


def test_gnp():
    rng = random.Random(0)
    assert LB.gnp_sample(10, 0, rng).m == 0
    assert LB.gnp_sample(10, 1, rng).m == 45
    a = LB.gnp_sample(30, 0.3, random.Random("x"))
    assert a == LB.gnp_sample(30, 0.3, random.Random("x"))
    with pytest.raises(ValueError):
        LB.gnp_sample(3, 1.5, rng)
    m = LB.gnp_sample(100, 0.5, random.Random(3)).m
    assert abs(m - 2475) <= 5 * math.sqrt(4950 * 0.25)


def test_chi_examples():
    assert LB.chi_F_exact(complete_graph(3), P4) == 3
    assert LB.chi_F_exact(path_graph(4), P4) == 3
    assert LB.chi_F_exact(cycle_graph(4), P4) == 3
    assert LB.chi_F_exact(path_graph(4), P4, max_colors=2) is None
    assert LB.chi_F_exact(Graph.empty(0), P4) == 0
    # forbidding P3 in two classes is distance-two coloring
    assert LB.chi_F_exact(star_graph(3), LB.ForbiddenFamily.preset("p3")) == 4


def test_is_f_free():
    assert not LB.is_f_free(cycle_graph(4), [0, 1, 0, 1], P4)
    assert LB.is_f_free(cycle_graph(4), [0, 1, 0, 2], P4)
    assert not LB.is_f_free(path_graph(2), [0, 0], P4)
    c4 = LB.ForbiddenFamily.preset("c4")
    assert LB.is_f_free(cycle_graph(6), [0, 1, 0, 1, 0, 1], c4)
    assert LB.is_f_free(complete_graph(4), [0, 1, 2, 3], P4)


def test_chi_matches_oracle_on_six_vertex_graphs():
    for g in atlas(6, connected=False):
        if g.n == 0:
            continue
        assert LB.chi_F_exact(g, P4) == chromatic(g, "star").value
        assert LB.chi_F_exact(g, P4) >= chromatic(g, "proper").value


def test_genus_upper_bound():
    assert LB.genus_upper_bound(complete_graph(4)) == 5
    assert LB.genus_upper_bound(complete_graph(5)) == 9
    assert LB.genus_upper_bound(from_nx(nx.balanced_tree(2, 3))) == 13
    with pytest.raises(ValueError):
        LB.genus_upper_bound(Graph.empty(2))


def test_experiment_report():
    rep = LB.run_experiment([10], P4, 20, 7)
    row = rep["rows"][0]
    assert row["p_clamped"] and row["fraction_within_bound"] == 1.0
    assert all(s["edges"] <= row["edge_bound"] for s in row["samples"])
    rep8 = LB.run_experiment([8], P4, 4, 7, p=0.4)
    assert all(isinstance(s["chi_F"], int) for s in rep8["rows"][0]["samples"])
    assert LB.run_experiment([8, 10], P4, 0, 1)["rows"] == []
    assert LB.run_experiment([9], P4, 3, 5, p=0.5) == LB.run_experiment([9], P4, 3, 5, p=0.5)
