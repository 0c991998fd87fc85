"""Seeded random instances: bounded-degree graphs, planar triangulations, dense embeddings."""

from __future__ import annotations

import random

import numpy as np
from scipy.spatial import Delaunay

from degstar.embedding import RotationSystem, random_rotation, rotation_from_positions
from degstar.graph import Graph, complete_bipartite


def random_bounded_degree(n: int, max_degree: int, rng: random.Random, density: float = 0.8) -> Graph:
    """Random simple graph with maximum degree at most ``max_degree``.

    Edges are proposed uniformly at random until about ``density * n * max_degree / 2``
    are placed or proposals keep failing.
    """
    if n < 2 or max_degree < 1:
        return Graph.empty(n)
    target = int(density * n * max_degree / 2)
    deg = [0] * n
    edges: set[tuple[int, int]] = set()
    misses = 0
    while len(edges) < target and misses < 50 * n:
        u, v = rng.sample(range(n), 2)
        e = (min(u, v), max(u, v))
        if e in edges or deg[u] >= max_degree or deg[v] >= max_degree:
            misses += 1
            continue
        edges.add(e)
        deg[u] += 1
        deg[v] += 1
    return Graph.from_edges(n, edges)


def random_planar_triangulation(n: int, rng: random.Random) -> RotationSystem:
    """Delaunay triangulation of ``n`` random points in the unit square, with its planar rotation."""
    if n < 3:
        raise ValueError("need at least three points")
    pts = np.array([[rng.random(), rng.random()] for _ in range(n)])
    tri = Delaunay(pts)
    edges = set()
    for a, b, c in tri.simplices:
        for u, v in ((a, b), (b, c), (a, c)):
            u, v = int(u), int(v)
            edges.add((min(u, v), max(u, v)))
    g = Graph.from_edges(n, edges)
    return rotation_from_positions(g, [tuple(p) for p in pts])


def random_min_degree_graph(n: int, min_degree: int, rng: random.Random) -> Graph:
    """Random edges are added until every vertex has degree at least ``min_degree``."""
    if min_degree >= n:
        raise ValueError("min_degree must be below n")
    adj = [set() for _ in range(n)]
    while True:
        low = [v for v in range(n) if len(adj[v]) < min_degree]
        if not low:
            break
        u = rng.choice(low)
        choices = [w for w in range(n) if w != u and w not in adj[u]]
        w = rng.choice(choices)
        adj[u].add(w)
        adj[w].add(u)
    return Graph.from_edges(n, {(min(u, w), max(u, w)) for u in range(n) for w in adj[u]})


def random_irreducible_embedding(rng: random.Random) -> RotationSystem:
    """A random rotation of a graph with no reducible vertex.

    Alternates between complete bipartite graphs whose small side has degree
    12, 11 or 10 (so degree-3, 4 and 5 vertices carry charge traffic) and
    graphs of minimum degree six.
    """
    kind = rng.randrange(4)
    if kind == 0:
        g = complete_bipartite(3, rng.randint(12, 16))
    elif kind == 1:
        g = complete_bipartite(4, rng.randint(11, 14))
    elif kind == 2:
        g = complete_bipartite(5, rng.randint(10, 13))
    else:
        g = random_min_degree_graph(rng.randint(8, 20), 6, rng)
        if not g.is_connected():
            return random_irreducible_embedding(rng)
    return random_rotation(g, rng)
