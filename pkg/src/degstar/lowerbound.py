"""Random-graph probes for lower bounds on F-free chromatic numbers.

A coloring is *F-free* for a family of connected bipartite graphs when it
is proper and no two color classes together contain a subgraph isomorphic
to a member of the family.  With the family ``{P4}`` this is star coloring.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from degstar.graph import Graph, cycle_graph, path_graph, star_graph


@dataclass(frozen=True)
class ForbiddenFamily:
    graphs: tuple[Graph, ...]
    name: str = "custom"

    def __post_init__(self):
        if not self.graphs:
            raise ValueError("family must not be empty")
        for h in self.graphs:
            if h.n < 3:
                raise ValueError("family members need at least three vertices")
            if not h.is_connected():
                raise ValueError("family members must be connected")
            if _bipartition(h) is None:
                raise ValueError("family members must be bipartite")

    @classmethod
    def preset(cls, name: str) -> "ForbiddenFamily":
        table = {
            "p3": path_graph(3),
            "p4": path_graph(4),
            "c4": cycle_graph(4),
            "k13": star_graph(3),
        }
        if name not in table:
            raise ValueError(f"unknown family {name!r}; expected one of {sorted(table)}")
        return cls((table[name],), name)

    @property
    def f_min(self) -> Graph:
        return min(self.graphs, key=lambda h: (h.m, h.n))

    @property
    def size(self) -> int:
        """Edge count of the sparsest member."""
        return self.f_min.m

    @property
    def order(self) -> int:
        return self.f_min.n

    @property
    def parts(self) -> tuple[int, int]:
        a, b = _bipartition(self.f_min)
        return len(a), len(b)


def _bipartition(g: Graph):
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] != -1:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in g.adj[v]:
                if side[w] == -1:
                    side[w] = 1 - side[v]
                    stack.append(w)
                elif side[w] == side[v]:
                    return None
    return [v for v in range(g.n) if side[v] == 0], [v for v in range(g.n) if side[v] == 1]


@dataclass(frozen=True)
class EdgeProbability:
    value: float
    raw: float
    clamped: bool


def lemma5_p(n: int, fam: ForbiddenFamily) -> EdgeProbability:
    """``9 (ln n / n) ** (1 / |E(F)|)``, clamped to 1."""
    if n < 2:
        raise ValueError("n must be at least 2")
    raw = 9 * (math.log(n) / n) ** (1 / fam.size)
    return EdgeProbability(min(raw, 1.0), raw, raw > 1)


def edge_bound(n: int, fam: ForbiddenFamily) -> float:
    """``9 n ** ((2f - 1) / f) * (ln n) ** (1 / f)`` with ``f = |E(F)|``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    f = fam.size
    return 9 * n ** ((2 * f - 1) / f) * math.log(n) ** (1 / f)


def gnp_sample(n: int, p: float, rng: random.Random) -> Graph:
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def genus_upper_bound(g: Graph) -> int:
    """Every cellular embedding of a connected graph has Euler genus at most ``m - 1``."""
    if not g.is_connected():
        raise ValueError("graph must be connected")
    return max(g.m - 1, 0)


# -- exact F-free chromatic number ------------------------------------------------

def _embeds_through(host: dict[int, set[int]], pattern: Graph, v: int) -> bool:
    """Does ``host`` contain a copy of ``pattern`` (not necessarily induced) using ``v``?"""
    for anchor in range(pattern.n):
        if len(host.get(v, ())) < pattern.degree(anchor):
            continue
        seq = _bfs_order(pattern, anchor)
        pos = {x: i for i, x in enumerate(seq)}
        back = [[pos[w] for w in pattern.adj[x] if pos[w] < i] for i, x in enumerate(seq)]
        if _extend(host, pattern, seq, back, [v]):
            return True
    return False


def _bfs_order(h: Graph, root: int = 0) -> list[int]:
    order = [root]
    seen = {root}
    for x in order:
        for w in sorted(h.adj[x]):
            if w not in seen:
                seen.add(w)
                order.append(w)
    return order


def _extend(host, pattern, seq, back, image) -> bool:
    i = len(image)
    if i == len(seq):
        return True
    # candidates: neighbors of the image of an earlier pattern neighbor
    anchor = image[back[i][0]]
    used = set(image)
    need = pattern.degree(seq[i])
    for cand in sorted(host[anchor]):
        if cand in used or len(host[cand]) < need:
            continue
        if all(cand in host[image[j]] for j in back[i]):
            image.append(cand)
            if _extend(host, pattern, seq, back, image):
                return True
            image.pop()
    return False


def _two_class_host(g: Graph, colors: Sequence[int], upto: int, a: int, b: int) -> dict[int, set[int]]:
    host: dict[int, set[int]] = {}
    for u in range(upto + 1):
        if colors[u] not in (a, b):
            continue
        host[u] = {w for w in g.adj[u] if w <= upto and colors[w] in (a, b) and colors[w] != colors[u]}
    return host


def is_f_free(g: Graph, colors: Sequence[int], fam: ForbiddenFamily) -> bool:
    """Proper and free of two-colored family members."""
    if any(colors[u] == colors[v] for u, v in g.edges()):
        return False
    palette = sorted(set(colors))
    for i, a in enumerate(palette):
        for b in palette[i + 1:]:
            host = _two_class_host(g, colors, g.n - 1, a, b)
            for v in host:
                if any(_embeds_through(host, h, v) for h in fam.graphs):
                    return False
    return True


def chi_F_exact(g: Graph, fam: ForbiddenFamily, max_colors: int | None = None) -> int | None:
    """Least number of colors of an F-free coloring, or None if above ``max_colors``."""
    n = g.n
    if n == 0:
        return 0
    limit = n if max_colors is None else min(max_colors, n)
    colors = [-1] * n

    def ok(v: int) -> bool:
        col = colors[v]
        for w in g.adj[v]:
            if w < v and colors[w] == col:
                return False
        for other in {colors[w] for w in g.adj[v] if w < v}:
            host = _two_class_host(g, colors, v, col, other)
            if any(_embeds_through(host, h, v) for h in fam.graphs):
                return False
        return True

    def rec(v: int, used: int, k: int) -> bool:
        if v == n:
            return True
        for col in range(min(used + 1, k)):
            colors[v] = col
            if ok(v) and rec(v + 1, max(used, col + 1), k):
                return True
        colors[v] = -1
        return False

    for k in range(1, limit + 1):
        if rec(0, 0, k):
            return k
    return None


# -- experiment driver -----------------------------------------------------------

def trial_seed(seed: int, n: int, t: int) -> str:
    return f"{seed}/{n}/{t}"


def run_experiment(
    n_values: Iterable[int],
    fam: ForbiddenFamily,
    trials: int,
    seed: int,
    p: float | None = None,
    exact_max_n: int = 12,
) -> dict:
    """Sample ``trials`` graphs per ``n`` and tabulate edge counts and exact values."""
    report = {"family": fam.name, "seed": seed, "trials": trials, "rows": []}
    if trials <= 0:
        return report
    for n in n_values:
        prob = lemma5_p(n, fam)
        use_p = prob.value if p is None else p
        bound = edge_bound(n, fam)
        samples = []
        for t in range(trials):
            g = gnp_sample(n, use_p, random.Random(trial_seed(seed, n, t)))
            row = {"trial": t, "edges": g.m, "within_bound": g.m <= bound}
            row["genus_upper_bound"] = genus_upper_bound(g) if g.is_connected() else None
            if n <= exact_max_n:
                row["chi_F"] = chi_F_exact(g, fam)
            samples.append(row)
        chis = [s["chi_F"] for s in samples if "chi_F" in s]
        reference = n / (2 * fam.order)
        report["rows"].append({
            "n": n,
            "p": use_p,
            "p_raw": prob.raw,
            "p_clamped": prob.clamped,
            "edge_bound": bound,
            "fraction_within_bound": sum(s["within_bound"] for s in samples) / trials,
            "mean_edges": sum(s["edges"] for s in samples) / trials,
            "chi_F_mean": sum(chis) / len(chis) if chis else None,
            "chi_F_over_reference": (sum(chis) / len(chis)) / reference if chis else None,
            "samples": samples,
        })
    return report
