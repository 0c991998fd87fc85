"""Reduce-color-extend pipeline for graphs of bounded Euler genus.

A vertex is *reducible* when its degree is at most two, or its degree is
``5 - i`` and it has a neighbor of degree at most ``9 + i`` for some
``i`` in ``{0, 1, 2}``.  Reducible vertices are removed one at a time
(deleted, suppressed, or contracted into that neighbor) until none is left.
The irreducible core is colored: its highest-degree vertices ("specials")
get private colors, the rest a distance-two or resampled coloring.  The
removed vertices are then put back in reverse order, each colored so that a
running star-certifying orientation (all new edges pointing at the restored
vertex) stays valid and low-degree vertices keep rainbow neighborhoods.

All vertex ids in a :class:`ReductionTrace` are labels of the input graph.
"""

from __future__ import annotations

import enum
import heapq
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from degstar import lll, verifiers
from degstar.graph import Graph, VertexMap, contract_edge, delete_vertex, suppress_degree2
from degstar.lists import ListAssignment
from degstar.orientation import Orientation, certify

DISTANCE_TWO_MAX_DEGREE = 144
RAINBOW_DEGREE = 12


class ReductionKind(str, enum.Enum):
    DELETE = "DeleteLowDegree"
    SUPPRESS = "SuppressDegree2"
    CONTRACT = "ContractIntoNeighbor"


class NoAvailableColor(RuntimeError):
    pass


class InsufficientLists(ValueError):
    pass


class SoundnessError(AssertionError):
    """A pipeline output failed its post-verification."""


# -- parameters ----------------------------------------------------------------

def ceil_root(value: int, k: int) -> int:
    """Smallest integer ``r >= 0`` with ``r ** k >= value``."""
    if value <= 0:
        return 0
    r = int(round(value ** (1.0 / k)))
    while r**k < value:
        r += 1
    while r > 0 and (r - 1) ** k >= value:
        r -= 1
    return r


@dataclass(frozen=True)
class GenusParameters:
    genus: int
    alpha: int
    delta0: int
    alpha0: int
    distance_two_max_degree: int = DISTANCE_TWO_MAX_DEGREE
    rainbow_degree: int = RAINBOW_DEGREE

    @classmethod
    def for_genus(cls, g: int, **overrides) -> "GenusParameters":
        if g < 0:
            raise ValueError("genus must be non-negative")
        # ceil(1000 g^(3/5)) is the least N with N^5 >= 10^15 g^3
        alpha = ceil_root(10**15 * g**3, 5) + 100000
        delta0 = -(-ceil_root(g**2, 5) // 4) + 12
        alpha0 = ceil_root(48**5 * g**3, 5)
        return cls(g, alpha, delta0, alpha0, **overrides)


# -- reduction -----------------------------------------------------------------

@dataclass(frozen=True)
class ReductionRecord:
    kind: ReductionKind
    vertex: int
    partner: int | tuple[int, int] | None
    neighbors: tuple[int, ...]
    added_edges: tuple[tuple[int, int], ...] = ()
    rule_index: int | None = None

    @property
    def list_note(self) -> str:
        if self.kind is ReductionKind.CONTRACT:
            return f"merged vertex keeps the list of {self.partner}"
        return "lists unchanged"

    def dump(self) -> str:
        partner = self.partner
        if isinstance(partner, tuple):
            partner = ",".join(map(str, partner))
        return (
            f"{self.kind.value} v={self.vertex} partner={'-' if partner is None else partner}"
            f" i={'-' if self.rule_index is None else self.rule_index}"
            f" nbrs={','.join(map(str, self.neighbors)) or '-'}"
            f" added={','.join(f'{a}-{b}' for a, b in self.added_edges) or '-'}"
        )


@dataclass
class ReductionTrace:
    original: Graph
    records: list[ReductionRecord]
    core: Graph
    labels: tuple[int, ...]  # core index -> original label

    @property
    def vertex_map(self) -> VertexMap:
        """Original label -> core index for surviving vertices."""
        return VertexMap({old: new for new, old in enumerate(self.labels)})

    def __len__(self) -> int:
        return len(self.records)

    def dump(self) -> str:
        return "".join(r.dump() + "\n" for r in self.records)

    def replay_forward(self) -> tuple[Graph, VertexMap]:
        """Re-apply the records with the graph-core edits; returns the core and its map."""
        g = self.original
        vmap = VertexMap.identity(g.n)
        for rec in self.records:
            v = vmap[rec.vertex]
            if rec.kind is ReductionKind.DELETE:
                g, step = delete_vertex(g, v)
            elif rec.kind is ReductionKind.SUPPRESS:
                g, step = suppress_degree2(g, v)
            else:
                g, step = contract_edge(g, vmap[rec.partner], v)
            vmap = vmap.then(step)
        return g, vmap

    def replay_backward(self) -> Graph:
        """Undo every record starting from the core; returns the input graph."""
        adj = {self.labels[i]: {self.labels[w] for w in self.core.adj[i]} for i in range(self.core.n)}
        for rec in reversed(self.records):
            _undo(adj, rec)
        return Graph(self.original.n, tuple(frozenset(adj.get(v, ())) for v in range(self.original.n)))


def _undo(adj: dict[int, set[int]], rec: ReductionRecord) -> None:
    for a, b in rec.added_edges:
        adj[a].discard(b)
        adj[b].discard(a)
    adj[rec.vertex] = set(rec.neighbors)
    for w in rec.neighbors:
        adj[w].add(rec.vertex)


def _reducible(adj: Mapping[int, set[int]], v: int):
    d = len(adj[v])
    if d <= 1:
        return ReductionKind.DELETE, None, None
    if d == 2:
        return ReductionKind.SUPPRESS, tuple(sorted(adj[v])), None
    if d <= 5:
        i = 5 - d
        for u in sorted(adj[v]):
            if len(adj[u]) <= 9 + i:
                return ReductionKind.CONTRACT, u, i
    return None


def find_reducible(g: Graph):
    """Lowest-index reducible vertex as ``(vertex, kind, partner)``, or None."""
    adj = {v: set(g.adj[v]) for v in range(g.n)}
    for v in range(g.n):
        hit = _reducible(adj, v)
        if hit is not None:
            return v, hit[0], hit[1]
    return None


def is_reducible(g: Graph, v: int) -> bool:
    return _reducible({w: set(g.adj[w]) for w in range(g.n)}, v) is not None


def reduce_fully(g: Graph, L: ListAssignment | None = None):
    """Reduce until no vertex is reducible.

    Returns ``(core, core_lists, trace)``; the core is renumbered in label
    order and each core vertex keeps the list of the input vertex it is
    labeled by (a contraction keeps the surviving endpoint's label).
    """
    adj = {v: set(g.adj[v]) for v in range(g.n)}
    records = []
    heap = list(range(g.n))
    queued = set(heap)
    while heap:
        v = heapq.heappop(heap)
        queued.discard(v)
        if v not in adj:
            continue
        hit = _reducible(adj, v)
        if hit is None:
            continue
        kind, partner, i = hit
        nbrs = tuple(sorted(adj[v]))
        added = []
        if kind is ReductionKind.SUPPRESS:
            a, b = partner
            if b not in adj[a]:
                adj[a].add(b)
                adj[b].add(a)
                added.append((a, b))
        elif kind is ReductionKind.CONTRACT:
            u = partner
            for w in nbrs:
                if w != u and w not in adj[u]:
                    adj[u].add(w)
                    adj[w].add(u)
                    added.append((min(u, w), max(u, w)))
        for w in nbrs:
            adj[w].discard(v)
        del adj[v]
        records.append(ReductionRecord(kind, v, partner, nbrs, tuple(added), i))
        touched = set(nbrs)
        for w in nbrs:
            touched |= adj[w]
        for w in touched:
            if w not in queued:
                queued.add(w)
                heapq.heappush(heap, w)
    labels = tuple(sorted(adj))
    index = {old: new for new, old in enumerate(labels)}
    core = Graph(len(labels), tuple(frozenset(index[w] for w in adj[v]) for v in labels))
    trace = ReductionTrace(g, records, core, labels)
    core_lists = L.subset(labels) if L is not None else None
    return core, core_lists, trace


# -- coloring the core -----------------------------------------------------------

def select_special(core: Graph, params: GenusParameters) -> list[int]:
    """The ``min(alpha0, n)`` vertices of largest degree; ties go to lower index."""
    order = sorted(range(core.n), key=lambda v: (-core.degree(v), v))
    return order[: min(params.alpha0, core.n)]


def assign_special_colors(specials: Sequence[int], L) -> dict[int, int]:
    """Pairwise distinct list colors for the specials, chosen greedily in order."""
    used: set[int] = set()
    out = {}
    for v in specials:
        if len(L[v]) <= len(specials):
            raise InsufficientLists(
                f"list of special vertex {v} has {len(L[v])} colors, need more than {len(specials)}"
            )
        col = L[v].first_not_in(used)
        if col is None:
            raise InsufficientLists(f"no free color for special vertex {v}")
        used.add(col)
        out[v] = col
    return out


def prune_lists(L: ListAssignment, special_colors: Mapping[int, int]) -> ListAssignment:
    """Drop the specials' colors from every non-special list."""
    return L.minus(special_colors.values(), keep=special_colors.keys())


def base_strategy(core: Graph, specials: Sequence[int], params: GenusParameters) -> tuple[str, int]:
    """Branch used by :func:`color_base` and the list size it asks for."""
    rest, _ = core.induced(set(range(core.n)) - set(specials))
    delta = rest.max_degree
    if delta <= params.distance_two_max_degree:
        return "distance_two", params.distance_two_max_degree**2
    return "lll", lll.palette_size(delta)


def color_base(
    core: Graph,
    specials: Sequence[int],
    L: ListAssignment,
    params: GenusParameters,
    rng: random.Random | None = None,
    max_rounds: int | None = None,
) -> list[int | None]:
    """Color the non-special core vertices from their (pruned) lists.

    Returns one entry per core vertex, ``None`` at the specials.  In the
    distance-two branch two vertices must differ when they share a neighbor
    that is non-special or has degree at most ``rainbow_degree``, so every
    such neighbor ends up with a rainbow neighborhood in the full core.
    """
    special = set(specials)
    keep = [v for v in range(core.n) if v not in special]
    if not keep:
        return [None] * core.n
    strategy, _ = base_strategy(core, specials, params)
    colors: list[int | None] = [None] * core.n
    if strategy == "distance_two":
        for v in keep:
            forbidden = {colors[w] for w in core.adj[v]}
            for x in core.adj[v]:
                if x in special and core.degree(x) > params.rainbow_degree:
                    continue
                forbidden.update(colors[y] for y in core.adj[x])
            forbidden.discard(None)
            col = L[v].first_not_in(forbidden)
            if col is None:
                raise InsufficientLists(f"distance-two coloring ran out of colors at core vertex {v}")
            colors[v] = col
        return colors
    rest, vmap = core.induced(keep)
    rng = rng or random.Random(0)
    budget = max_rounds if max_rounds is not None else 10 * rest.n + 100
    run = lll.resample_until_clean(rest, L.subset(keep), rng, budget)
    for old, new in vmap.items():
        colors[old] = run.coloring[new]
    return colors


# -- extension -----------------------------------------------------------------

def extend_coloring(
    trace: ReductionTrace,
    base: Sequence[int],
    L: ListAssignment,
    rainbow_degree: int = RAINBOW_DEGREE,
) -> list[int]:
    """Color the removed vertices, last removed first.

    ``base`` colors the core (core indices); ``L`` is indexed by input
    labels.  Each restored vertex avoids its neighbors' colors, the
    in-colors of its neighbors, and any color that would repeat in the
    neighborhood of a neighbor of degree at most ``rainbow_degree``.
    """
    core = trace.core
    if len(base) != core.n:
        raise ValueError("base coloring must cover the core")
    cert = certify(core, list(base)) if core.n else Orientation({})
    if not isinstance(cert, Orientation):
        raise ValueError(f"base coloring is not a star coloring: {cert.witness}")
    labels = trace.labels
    color: dict[int, int] = {labels[i]: base[i] for i in range(core.n)}
    head: dict[tuple[int, int], int] = {
        (labels[a], labels[b]) if labels[a] < labels[b] else (labels[b], labels[a]): labels[h]
        for (a, b), h in cert.head.items()
    }
    adj = {labels[i]: {labels[w] for w in core.adj[i]} for i in range(core.n)}

    def key(a, b):
        return (a, b) if a < b else (b, a)

    for rec in reversed(trace.records):
        for a, b in rec.added_edges:
            head.pop(key(a, b), None)
        _undo(adj, rec)
        v = rec.vertex
        forbidden = set()
        for x in adj[v]:
            forbidden.add(color[x])
            for y in adj[x]:
                if y == v:
                    continue
                if head[key(x, y)] == x:
                    forbidden.add(color[y])
                if len(adj[x]) <= rainbow_degree:
                    forbidden.add(color[y])
        col = L[v].first_not_in(forbidden)
        if col is None:
            raise NoAvailableColor(f"no admissible color left for vertex {v}")
        color[v] = col
        for x in adj[v]:
            head[key(v, x)] = v
    return [color[v] for v in range(trace.original.n)]


# -- full pipeline ---------------------------------------------------------------

@dataclass
class GenusRun:
    coloring: list[int]
    params: GenusParameters
    trace: ReductionTrace
    specials: list[int]
    special_colors: dict[int, int]
    strategy: str
    checks: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        kinds = Counter(r.kind.value for r in self.trace.records)
        return {
            "genus": self.params.genus,
            "alpha": self.params.alpha,
            "delta0": self.params.delta0,
            "alpha0": self.params.alpha0,
            "reductions": len(self.trace),
            "reductions_by_kind": dict(sorted(kinds.items())),
            "core_vertices": self.trace.core.n,
            "core_edges": self.trace.core.m,
            "core_max_degree": self.trace.core.max_degree,
            "specials": sorted(self.specials),
            "base_strategy": self.strategy,
            "colors_used": len(set(self.coloring)),
            "checks": self.checks,
        }


def verify_output(g: Graph, coloring: Sequence[int], L: ListAssignment, rainbow_degree: int = RAINBOW_DEGREE,
                  special_colors: Mapping[int, int] | None = None) -> dict:
    """Run the post-conditions; raise :class:`SoundnessError` on any failure."""
    checks = {}
    for name, verdict in (
        ("proper", verifiers.is_proper(g, coloring)),
        ("star", verifiers.is_star(g, coloring)),
        ("neighbors_distinct", verifiers.neighbors_distinct(g, coloring, rainbow_degree)),
    ):
        if verdict.violated:
            raise SoundnessError(f"{name} check failed: {verdict}")
        checks[name] = verdict.status.value
    classes = sum(1 for k in Counter(coloring).values() if k >= 2)
    mode = "exhaustive" if classes <= verifiers.DEFAULT_MAX_CLASSES else "restricted"
    deg = verifiers.is_degenerate(g, coloring, mode=mode)
    if deg.violated:
        raise SoundnessError(f"degenerate check failed: {deg}")
    checks["degenerate"] = deg.status.value
    for v, col in enumerate(coloring):
        if col not in L[v]:
            raise SoundnessError(f"vertex {v} colored {col} outside its list")
    if special_colors:
        counts = Counter(coloring)
        for v, col in special_colors.items():
            if counts[col] != 1:
                raise SoundnessError(f"special color {col} of vertex {v} used {counts[col]} times")
        checks["special_colors_unique"] = True
    return checks


def run_genus_pipeline(
    g: Graph,
    L: ListAssignment,
    genus: int,
    rng: random.Random | None = None,
    params: GenusParameters | None = None,
    max_rounds: int | None = None,
) -> GenusRun:
    if len(L) != g.n:
        raise ValueError("one list per vertex is required")
    params = params or GenusParameters.for_genus(genus)
    rng = rng or random.Random(0)
    core, core_lists, trace = reduce_fully(g, L)
    specials = select_special(core, params)
    special_colors = assign_special_colors(specials, core_lists)
    by_label = {trace.labels[v]: col for v, col in special_colors.items()}
    pruned = prune_lists(L, by_label)
    strategy, _ = base_strategy(core, specials, params)
    base = color_base(core, specials, pruned.subset(trace.labels), params, rng, max_rounds)
    for v, col in special_colors.items():
        base[v] = col
    coloring = extend_coloring(trace, base, pruned, params.rainbow_degree)
    checks = verify_output(g, coloring, L, params.rainbow_degree, by_label)
    return GenusRun(coloring, params, trace, [trace.labels[v] for v in specials], by_label, strategy, checks)


def color_genus_graph(g: Graph, L: ListAssignment, genus: int, rng: random.Random | None = None,
                      params: GenusParameters | None = None) -> list[int]:
    return run_genus_pipeline(g, L, genus, rng, params).coloring
