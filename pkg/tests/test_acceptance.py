"""Acceptance criteria, one test each.

Every test prints a single ``[acceptance N] PASS|FAIL ...`` line to the
terminal (also under captured output) before asserting.
"""

import math
import random
import time
from collections import Counter

import mpmath
import networkx as nx
import pytest

from degstar import discharging as D
from degstar import lll, lowerbound as LB, oracles, reducer as R, verifiers as V
from degstar.embedding import (
    planar_cube,
    planar_cycle,
    planar_k4,
    toroidal_k7,
    toroidal_triangular_grid,
)
from degstar.generators import random_bounded_degree, random_irreducible_embedding, random_planar_triangulation
from degstar.graph import complete_graph, cycle_graph, grid_graph, path_graph
from degstar.lists import ListAssignment
from degstar.orientation import Orientation, certify, check

from brute import has_two_class_cycle, is_degenerate_direct, two_colored_p4s
from conftest import atlas

pytestmark = pytest.mark.acceptance


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        line = f"[acceptance {number}] {'PASS' if ok else 'FAIL'} {detail}"
        with capsys.disabled():
            print("\n" + line)
        assert ok, line

    return emit


@pytest.fixture(scope="module")
def corpus():
    graphs = atlas(6)
    six = [g for g in graphs if g.n == 6]
    assert len(graphs) == 143 and len(six) == 112
    return graphs, six


def test_definition_level_equivalence(corpus, report):
    graphs, six = corpus
    start = time.perf_counter()
    disagreements = 0
    colorings = 0
    for g in graphs:
        for col in oracles.enumerate_colorings(g, 4):
            c = list(col)
            colorings += 1
            disagreements += V.is_star(g, c).violated != bool(two_colored_p4s(g, c))
            disagreements += V.is_acyclic(g, c).violated != has_two_class_cycle(g, c)
            disagreements += V.is_degenerate(g, c, mode="exhaustive").violated != (not is_degenerate_direct(g, c))
    elapsed = time.perf_counter() - start
    report(1, disagreements == 0 and elapsed < 300,
           f"{len(graphs)} graphs ({len(six)} on six vertices), {colorings} colorings, "
           f"{disagreements} disagreements, {elapsed:.1f}s")


def test_orientation_equivalence(corpus, report):
    graphs, _ = corpus
    rng = random.Random(2)
    failures = 0
    non_star = []
    for g in graphs:
        for col in oracles.enumerate_colorings(g, 4):
            c = list(col)
            out = certify(g, c)
            star = bool(V.is_star(g, c))
            if star != isinstance(out, Orientation):
                failures += 1
            elif star and not check(g, c, out):
                failures += 1
            if not star:
                non_star.append((g, c))
    passed_random = 0
    for _ in range(1000):
        g, c = rng.choice(non_star)
        o = Orientation({e: rng.choice(e) for e in g.edges()})
        passed_random += bool(check(g, c, o))
    report(2, failures == 0 and passed_random == 0,
           f"{failures} certify/star mismatches; {passed_random}/1000 random orientations "
           f"of non-star colorings passed")


def test_chromatic_ground_truth(corpus, report):
    _, six = corpus
    expected = [
        (path_graph(5), "degenerate", 2),
        (path_graph(4), "star", 3),
        (cycle_graph(5), "star", 4),
        (cycle_graph(4), "degenerate", 3),
        (cycle_graph(4), "star", 3),
        (complete_graph(4), "degenerate_star", 4),
    ]
    checker = {"degenerate": V.is_degenerate, "star": V.is_star, "degenerate_star": V.is_degenerate_star}
    bad = []
    for g, kind, value in expected:
        res = oracles.chromatic(g, kind)
        witness_ok = bool(checker[kind](g, list(res.witness)))
        exhausted = all(checker[kind](g, list(c)).violated for c in oracles.enumerate_colorings(g, value - 1))
        if res.value != value or not witness_ok or not exhausted:
            bad.append((kind, g.n, res.value))
    hierarchy_bad = 0
    for g in six:
        a = oracles.chromatic(g, "acyclic").value
        d = oracles.chromatic(g, "degenerate").value
        s = oracles.chromatic(g, "star").value
        sd = oracles.chromatic(g, "degenerate_star").value
        hierarchy_bad += not (a <= d <= sd and a <= s <= sd)
    report(3, not bad and hierarchy_bad == 0,
           f"{len(expected) - len(bad)}/{len(expected)} values confirmed; hierarchy violations on "
           f"{hierarchy_bad}/{len(six)} graphs")


def test_lll_condition(report):
    start = time.perf_counter()
    failing = [d for d in range(1, 10**4 + 1) if not lll.verify_lll_condition(d, lll.palette_size(d))]
    small = lll.verify_lll_condition(4, 4)
    elapsed = time.perf_counter() - start
    report(4, not failing and not small and elapsed < 60,
           f"condition false for {len(failing)} of 10000 degrees; (4, 4) -> {small}; {elapsed:.2f}s")


def test_resampling_colorer(report):
    rng = random.Random(5)
    done = 0
    unsound = 0
    for t in range(50):
        n = rng.randint(10, 60)
        g = random_bounded_degree(n, rng.randint(2, 5), rng)
        delta = max(g.max_degree, 1)
        L = ListAssignment.uniform(n, range(lll.palette_size(delta)))
        try:
            run = lll.resample_until_clean(g, L, random.Random(1000 + t), 10 * n)
        except lll.RoundBudgetExhausted:
            continue
        done += 1
        c = run.coloring
        ok = (
            V.is_proper(g, c)
            and V.is_star(g, c)
            and V.neighbors_distinct(g, c, math.isqrt(delta))
            and V.is_degenerate(g, c, mode="restricted")
            and all(col in L[v] for v, col in enumerate(c))
        )
        unsound += not ok
    report(5, done >= 48 and unsound == 0, f"{done}/50 runs finished within 10n rounds; {unsound} unsound outputs")


def test_genus_pipeline(report):
    start = time.perf_counter()
    rng = random.Random(17)
    instances = [grid_graph(10, 10)]
    instances += [random_planar_triangulation(rng.randint(30, 200), rng).graph for _ in range(20)]
    problems = []
    max_core_degree = 0
    for i, g in enumerate(instances):
        L = ListAssignment.uniform(g.n, range(100001))
        c = R.color_genus_graph(g, L, 0, random.Random(i))
        if not V.is_degenerate_star(g, c, mode="restricted") or not V.neighbors_distinct(g, c, 12):
            problems.append(("coloring", i))
        core, _, _ = R.reduce_fully(g, L)
        if R.find_reducible(core) is not None:
            problems.append(("reducible core", i))
        G = nx.Graph()
        G.add_nodes_from(range(core.n))
        G.add_edges_from(core.edges())
        if nx.check_planarity(G)[0]:
            max_core_degree = max(max_core_degree, core.max_degree)
            if core.max_degree > 12:
                problems.append(("core degree", i))
    elapsed = time.perf_counter() - start
    report(6, not problems and elapsed < 600,
           f"{len(instances)} planar instances, problems={problems}, "
           f"largest planar core degree {max_core_degree}, {elapsed:.1f}s")


def test_discharging_audit(report):
    corpus = {
        "K4": planar_k4(),
        "C3": planar_cycle(3),
        "cube": planar_cube(),
        "K7 torus": toroidal_k7(),
        "grid 3x3 torus": toroidal_triangular_grid(3, 3),
        "grid 4x6 torus": toroidal_triangular_grid(4, 6),
        "grid 7x5 torus": toroidal_triangular_grid(7, 5),
    }
    euler_bad = []
    rejected = []
    audited = 0
    negative = 0
    from degstar.embedding import euler_genus

    for name, r in corpus.items():
        if D.initial_charges(r).total != 6 * euler_genus(r) - 12:
            euler_bad.append(name)
        try:
            rep = D.audit(r)
        except D.ReducibleInput:
            rejected.append(name)
            continue
        audited += 1
        negative += len(rep.violations)
    rng = random.Random(9)
    for _ in range(40):
        r = random_irreducible_embedding(rng)
        if D.initial_charges(r).total != 6 * euler_genus(r) - 12:
            euler_bad.append("random")
        rep = D.audit(r)
        audited += 1
        negative += len(rep.violations)
    ok = not euler_bad and sorted(rejected) == ["C3", "K4", "cube"] and negative == 0
    report(7, ok, f"Euler identity failures {euler_bad}; rejected {sorted(rejected)}; "
                  f"{audited} irreducible audits, {negative} negative charges")


def test_lower_bound_lab(report):
    p4 = LB.ForbiddenFamily.preset("p4")
    mismatches = 0
    graphs = [g for g in atlas(7, connected=False) if g.n > 0]
    for g in graphs:
        mismatches += LB.chi_F_exact(g, p4) != oracles.chromatic(g, "star").value
    sigma = math.sqrt(4950 * 0.25)
    counts = [LB.gnp_sample(100, 0.5, random.Random(f"acceptance/{t}")).m for t in range(100)]
    outliers = sum(abs(m - 2475) > 5 * sigma for m in counts)
    mean_ok = abs(sum(counts) / 100 - 2475) <= 5 * sigma / 10
    mpmath.mp.dps = 50
    worst = 0.0
    for n in (10**3, 10**4):
        f = p4.size
        p_ref = 9 * (mpmath.log(n) / n) ** (mpmath.mpf(1) / f)
        b_ref = 9 * mpmath.mpf(n) ** (mpmath.mpf(2 * f - 1) / f) * mpmath.log(n) ** (mpmath.mpf(1) / f)
        worst = max(worst, abs(LB.lemma5_p(n, p4).raw / float(p_ref) - 1),
                    abs(LB.edge_bound(n, p4) / float(b_ref) - 1))
    ok = mismatches == 0 and outliers == 0 and mean_ok and worst < 1e-9
    report(8, ok, f"{mismatches} mismatches on {len(graphs)} graphs up to 7 vertices; "
                  f"{outliers}/100 edge counts beyond 5 sigma; worst formula error {worst:.1e}")
