"""Exact chromatic numbers of small graphs by exhaustive canonical search.

Colorings are enumerated as restricted growth strings (vertex ``v`` gets a
color at most one more than the largest color used on ``0..v-1``), so each
partition into color classes is visited once.  Every property checked here
is hereditary: a violation on the colored prefix survives any extension, so
partial colorings are pruned with the same verifiers that judge full ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

from degstar import verifiers
from degstar.graph import Graph

KINDS = ("proper", "acyclic", "star", "degenerate", "degenerate_star", "distance_two")
DEFAULT_MAX_VERTICES = 12


class FeasibilityRefused(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    value: int
    witness: tuple[int, ...]
    stats: dict = field(default_factory=dict, compare=False)


def _checker(kind: str) -> Callable[[Graph, list[int]], verifiers.Verdict]:
    table = {
        "proper": verifiers.is_proper,
        "acyclic": verifiers.is_acyclic,
        "star": verifiers.is_star,
        "degenerate": verifiers.is_degenerate,
        "degenerate_star": verifiers.is_degenerate_star,
        "distance_two": verifiers.is_distance_two,
    }
    try:
        return table[kind]
    except KeyError:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}") from None


def _search(g: Graph, k: int, accept_prefix, stats) -> Iterator[tuple[int, ...]]:
    n = g.n
    colors = [-1] * n
    earlier = [[w for w in g.adj[v] if w < v] for v in range(n)]

    def rec(v: int, used: int):
        if v == n:
            yield tuple(colors)
            return
        for col in range(min(used + 1, k)):
            if any(colors[w] == col for w in earlier[v]):
                continue
            colors[v] = col
            stats["nodes"] = stats.get("nodes", 0) + 1
            if accept_prefix(v, colors):
                yield from rec(v + 1, max(used, col + 1))
        colors[v] = -1

    yield from rec(0, 0)


def enumerate_colorings(g: Graph, max_colors: int) -> Iterator[tuple[int, ...]]:
    """Every proper coloring with at most ``max_colors`` classes, one per partition."""
    return _search(g, max_colors, lambda v, colors: True, {})


def chromatic(g: Graph, kind: str, max_vertices: int = DEFAULT_MAX_VERTICES) -> OracleResult:
    """Least number of colors admitting a coloring of the given kind."""
    check = _checker(kind)
    if g.n > max_vertices:
        raise FeasibilityRefused(f"{g.n} vertices exceed the feasibility guard {max_vertices}")
    if g.n == 0:
        return OracleResult(0, (), {"nodes_per_k": {}})
    prefixes = [g.induced(range(v + 1))[0] for v in range(g.n)]

    def accept_prefix(v, colors):
        if kind == "proper":
            return True  # properness is enforced during generation
        return bool(check(prefixes[v], colors[: v + 1]))

    nodes_per_k = {}
    for k in range(1, g.n + 1):
        stats: dict = {}
        found = next(_search(g, k, accept_prefix, stats), None)
        nodes_per_k[k] = stats.get("nodes", 0)
        if found is not None:
            verdict = check(g, list(found))
            if verdict.violated:  # cannot happen for hereditary checks
                raise AssertionError(f"oracle witness fails its own verifier: {verdict}")
            return OracleResult(k, found, {"nodes_per_k": nodes_per_k})
    raise AssertionError("a rainbow coloring always exists")
