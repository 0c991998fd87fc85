"""Orientation certificates for star colorings.

A proper coloring is a star coloring iff the edges can be oriented so that at
every vertex the in-neighbors carry pairwise distinct colors and no color is
both an in-color and an out-color.  :func:`certify` builds such an
orientation from a star coloring; :func:`check` validates one.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from degstar.graph import Graph
from degstar.verifiers import VALID, Verdict, _require_proper, is_star, violated


def _key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Orientation:
    """Head endpoint for every edge, keyed by ``(min, max)``."""

    head: Mapping[tuple[int, int], int]

    def head_of(self, u: int, v: int) -> int:
        return self.head[_key(u, v)]

    def in_neighbors(self, g: Graph, v: int) -> set[int]:
        return {u for u in g.adj[v] if self.head[_key(u, v)] == v}

    def out_neighbors(self, g: Graph, v: int) -> set[int]:
        return {u for u in g.adj[v] if self.head[_key(u, v)] == u}

    def covers(self, g: Graph) -> bool:
        return set(self.head) == set(g.edges()) and all(
            self.head[(u, v)] in (u, v) for u, v in g.edges()
        )

    @classmethod
    def from_heads(cls, pairs: Iterable[tuple[int, int, int]]) -> "Orientation":
        head = {}
        for u, v, h in pairs:
            if h not in (u, v):
                raise ValueError(f"head {h} is not an endpoint of ({u}, {v})")
            head[_key(u, v)] = h
        return cls(head)


def in_colors(g: Graph, c: Sequence[int], o: Orientation, v: int) -> set[int]:
    return {c[u] for u in o.in_neighbors(g, v)}


def out_colors(g: Graph, c: Sequence[int], o: Orientation, v: int) -> set[int]:
    return {c[u] for u in o.out_neighbors(g, v)}


def certify(g: Graph, c: Sequence[int]) -> Orientation | Verdict:
    """Orientation whose tails are star roots, or the violating two-colored P4.

    Each two-class subgraph of a star coloring is a star forest; every edge
    is directed away from the root of its star.  The root of a single-edge
    star is its lower-indexed endpoint.
    """
    _require_proper(g, c)
    star = is_star(g, c)
    if star.violated:
        return star
    by_pair: dict[tuple[int, int], list[tuple[int, int]]] = defaultdict(list)
    for u, v in g.edges():
        by_pair[_key(c[u], c[v])].append((u, v))
    head: dict[tuple[int, int], int] = {}
    for pair in sorted(by_pair):
        edges = by_pair[pair]
        deg: dict[int, int] = defaultdict(int)
        for u, v in edges:
            deg[u] += 1
            deg[v] += 1
        for u, v in edges:
            if deg[u] >= 2:
                root = u
            elif deg[v] >= 2:
                root = v
            else:
                root = min(u, v)
            head[(u, v)] = v if root == u else u
    return Orientation(head)


def check(g: Graph, c: Sequence[int], o: Orientation) -> Verdict:
    """Valid iff ``|N^-(v)| = |C^-(v)|`` and ``C^-(v)`` misses ``C^+(v)`` at every vertex."""
    for v in range(g.n):
        ins = o.in_neighbors(g, v)
        cin = {c[u] for u in ins}
        if len(cin) != len(ins):
            return violated((v,), "in-neighbors share a color")
        if cin & out_colors(g, c, o, v):
            return violated((v,), "color is both in-color and out-color")
    return VALID


def parse_orientation(text: str) -> Orientation:
    triples = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] != "o" or len(parts) != 4:
            raise ValueError(f"line {lineno}: cannot parse {raw!r}")
        triples.append(tuple(int(x) for x in parts[1:]))
    return Orientation.from_heads(triples)


def format_orientation(o: Orientation) -> str:
    return "".join(f"o {u} {v} {o.head[(u, v)]}\n" for u, v in sorted(o.head))
