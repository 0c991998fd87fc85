"""Simple undirected graphs and the edits used by the reduction pipeline.

Vertices are the dense integers ``0..n-1``.  Every edit returns a new graph
together with a :class:`VertexMap` from old to new indices; survivors keep
their relative order.
"""

from __future__ import annotations

import itertools
from array import array
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping


class GraphError(ValueError):
    """Malformed graph input or an edit whose precondition fails."""


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise GraphError(f"adjacency has {len(self.adj)} rows for n={self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(frozenset(s) for s in nbrs))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, tuple(frozenset() for _ in range(n)))

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, in lexicographic order."""
        for u in range(self.n):
            for v in sorted(self.adj[u]):
                if u < v:
                    yield (u, v)

    @cached_property
    def m(self) -> int:
        return sum(len(s) for s in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @cached_property
    def max_degree(self) -> int:
        return max((len(s) for s in self.adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    @cached_property
    def csr(self) -> tuple[array, array]:
        """Sorted compressed adjacency ``(indptr, indices)`` for the kernels."""
        indptr = array("q", [0])
        indices = array("q")
        for v in range(self.n):
            indices.extend(sorted(self.adj[v]))
            indptr.append(len(indices))
        return indptr, indices

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", "VertexMap"]:
        """Subgraph induced by ``vertices``, renumbered in increasing order."""
        keep = sorted(set(vertices))
        vmap = VertexMap({old: new for new, old in enumerate(keep)})
        return self._relabel(vmap, len(keep)), vmap

    def _relabel(self, vmap: "VertexMap", n_new: int) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n_new)]
        for old, new in vmap.items():
            nbrs[new].update(vmap[w] for w in self.adj[old] if w in vmap)
        return Graph(n_new, tuple(frozenset(s) for s in nbrs))

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in self.adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def validate(self) -> None:
        """Raise :class:`GraphError` unless adjacency is symmetric and loop-free."""
        for v, nb in enumerate(self.adj):
            if v in nb:
                raise GraphError(f"self-loop at {v}")
            for w in nb:
                if not 0 <= w < self.n:
                    raise GraphError(f"neighbor {w} of {v} out of range")
                if v not in self.adj[w]:
                    raise GraphError(f"asymmetric adjacency {v}->{w}")


@dataclass(frozen=True)
class VertexMap:
    """Partial injective map from old vertex indices to new ones."""

    mapping: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if len(set(self.mapping.values())) != len(self.mapping):
            raise GraphError("vertex map is not injective")

    def __getitem__(self, v: int) -> int:
        return self.mapping[v]

    def __contains__(self, v: int) -> bool:
        return v in self.mapping

    def __len__(self) -> int:
        return len(self.mapping)

    def get(self, v: int, default=None):
        return self.mapping.get(v, default)

    def items(self):
        return self.mapping.items()

    def then(self, other: "VertexMap") -> "VertexMap":
        """Apply ``self`` first, then ``other``."""
        return VertexMap({a: other[b] for a, b in self.mapping.items() if b in other})

    def inverse(self) -> "VertexMap":
        return VertexMap({b: a for a, b in self.mapping.items()})

    @classmethod
    def identity(cls, n: int) -> "VertexMap":
        return cls({v: v for v in range(n)})


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range for n={g.n}")


def _drop_map(n: int, v: int) -> VertexMap:
    return VertexMap({w: (w if w < v else w - 1) for w in range(n) if w != v})


def delete_vertex(g: Graph, v: int) -> tuple[Graph, VertexMap]:
    _check_vertex(g, v)
    vmap = _drop_map(g.n, v)
    return g._relabel(vmap, g.n - 1), vmap


def suppress_degree2(g: Graph, v: int) -> tuple[Graph, VertexMap]:
    """Delete a degree-2 vertex and join its two neighbors (if not already adjacent)."""
    _check_vertex(g, v)
    if g.degree(v) != 2:
        raise GraphError(f"vertex {v} has degree {g.degree(v)}, expected 2")
    a, b = sorted(g.adj[v])
    vmap = _drop_map(g.n, v)
    h = g._relabel(vmap, g.n - 1)
    return add_edge(h, vmap[a], vmap[b]), vmap


def contract_edge(g: Graph, u: int, v: int) -> tuple[Graph, VertexMap]:
    """Merge ``v`` into ``u``; parallel edges collapse.

    ``u`` survives (at its renumbered index) and ``v`` is left unmapped.
    """
    _check_vertex(g, u)
    _check_vertex(g, v)
    if not g.has_edge(u, v):
        raise GraphError(f"({u}, {v}) is not an edge")
    vmap = _drop_map(g.n, v)
    h = g._relabel(vmap, g.n - 1)
    nu = vmap[u]
    extra = {vmap[w] for w in g.adj[v] if w != u}
    nbrs = list(h.adj)
    nbrs[nu] = nbrs[nu] | extra
    for w in extra:
        nbrs[w] = nbrs[w] | {nu}
    return Graph(h.n, tuple(nbrs)), vmap


def add_edge(g: Graph, u: int, v: int) -> Graph:
    if u == v:
        raise GraphError(f"self-loop at {u}")
    if g.has_edge(u, v):
        return g
    nbrs = list(g.adj)
    nbrs[u] = nbrs[u] | {v}
    nbrs[v] = nbrs[v] | {u}
    return Graph(g.n, tuple(nbrs))


def common_neighbors(g: Graph, u: int, v: int) -> frozenset[int]:
    _check_vertex(g, u)
    _check_vertex(g, v)
    if u == v:
        raise GraphError("common_neighbors needs two distinct vertices")
    return g.adj[u] & g.adj[v]


def special_pairs(g: Graph, delta: int) -> set[tuple[int, int]]:
    """Non-adjacent pairs at distance two with at least sqrt(delta) common neighbors.

    ``count >= sqrt(delta)`` is decided as ``count**2 >= delta``.
    """
    out = set()
    for x in range(g.n):
        counts: dict[int, int] = {}
        for w in g.adj[x]:
            for y in g.adj[w]:
                if y > x:
                    counts[y] = counts.get(y, 0) + 1
        for y, c in counts.items():
            if y not in g.adj[x] and c * c >= delta:
                out.add((x, y))
    return out


# -- named graphs -------------------------------------------------------------

def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def star_graph(leaves: int) -> Graph:
    return complete_bipartite(1, leaves)


def grid_graph(rows: int, cols: int) -> Graph:
    def idx(r, c):
        return r * cols + c

    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((idx(r, c), idx(r, c + 1)))
            if r + 1 < rows:
                edges.append((idx(r, c), idx(r + 1, c)))
    return Graph.from_edges(rows * cols, edges)


def cube_graph() -> Graph:
    return Graph.from_edges(8, [(u, u ^ (1 << b)) for u in range(8) for b in range(3) if u < u ^ (1 << b)])


# -- edge-list text format ----------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse ``p <n> <m>`` followed by ``m`` lines ``e <u> <v>`` (0-based)."""
    n = m = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "p" and len(parts) == 3:
                if n is not None:
                    raise GraphError(f"line {lineno}: duplicate header")
                n, m = int(parts[1]), int(parts[2])
            elif parts[0] == "e" and len(parts) == 3:
                if n is None:
                    raise GraphError(f"line {lineno}: edge before header")
                u, v = int(parts[1]), int(parts[2])
                if u == v:
                    raise GraphError(f"line {lineno}: self-loop at {u}")
                key = (min(u, v), max(u, v))
                if key in seen:
                    raise GraphError(f"line {lineno}: duplicate edge {key}")
                seen.add(key)
                edges.append((u, v))
            else:
                raise GraphError(f"line {lineno}: cannot parse {raw!r}")
        except ValueError as exc:
            if isinstance(exc, GraphError):
                raise
            raise GraphError(f"line {lineno}: {exc}") from None
    if n is None:
        raise GraphError("missing 'p <n> <m>' header")
    if len(edges) != m:
        raise GraphError(f"header announces {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def format_edge_list(g: Graph) -> str:
    lines = [f"p {g.n} {g.m}"]
    lines.extend(f"e {u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"
