"""Exact, witness-producing checkers for the coloring notions.

Convention: a graph is *k-degenerate* when every subgraph has a vertex of
degree strictly less than ``k``.  A coloring is *degenerate* when, for every
``k``, the union of any ``k`` color classes induces a k-degenerate subgraph.
:func:`degeneracy` returns the usual degeneracy number ``d``; a graph is
k-degenerate in the convention above iff ``d <= k - 1``.

Colorings are sequences of non-negative integers indexed by vertex.
"""

from __future__ import annotations

import enum
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from degstar import kernels
from degstar.graph import Graph

DEFAULT_MAX_CLASSES = 20


class Status(enum.Enum):
    VALID_EXHAUSTIVE = "ValidExhaustive"
    VALID_RESTRICTED = "ValidRestricted"
    VIOLATED = "Violated"


@dataclass(frozen=True)
class Verdict:
    status: Status
    witness: tuple[int, ...] | None = None
    reason: str = ""
    detail: dict = field(default_factory=dict, compare=False)

    def __bool__(self) -> bool:
        return self.status is not Status.VIOLATED

    @property
    def violated(self) -> bool:
        return self.status is Status.VIOLATED

    def to_json(self) -> dict:
        out = {"status": self.status.value}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if self.reason:
            out["reason"] = self.reason
        if self.detail:
            out["detail"] = self.detail
        return out


VALID = Verdict(Status.VALID_EXHAUSTIVE)


def violated(witness: Iterable[int], reason: str, **detail) -> Verdict:
    return Verdict(Status.VIOLATED, tuple(witness), reason, detail)


class ImproperColoring(ValueError):
    """A check that presupposes a proper coloring was handed an improper one."""


class ExhaustiveRefused(ValueError):
    """Exhaustive degeneracy search declined: too many color classes."""


def _colors(g: Graph, c: Sequence[int | None]):
    if len(c) != g.n:
        raise ValueError(f"coloring has {len(c)} entries for {g.n} vertices")
    if any(x is None for x in c):
        raise ValueError("coloring is partial")
    return kernels.int_array(c)


def _require_proper(g: Graph, c) -> None:
    v = is_proper(g, c)
    if v.violated:
        raise ImproperColoring(f"coloring is not proper: edge {v.witness}")


def is_proper(g: Graph, c: Sequence[int]) -> Verdict:
    _colors(g, c)
    for u, v in g.edges():
        if c[u] == c[v]:
            return violated((u, v), "monochromatic edge")
    return VALID


def is_acyclic(g: Graph, c: Sequence[int]) -> Verdict:
    """Every pair of classes induces a forest; witness is a two-colored cycle."""
    _require_proper(g, c)
    by_pair: dict[tuple[int, int], list[tuple[int, int]]] = defaultdict(list)
    for u, v in g.edges():
        key = (c[u], c[v]) if c[u] < c[v] else (c[v], c[u])
        by_pair[key].append((u, v))
    for key in sorted(by_pair):
        parent: dict[int, int] = {}

        def find(x):
            root = x
            while parent.get(root, root) != root:
                root = parent[root]
            while x != root:
                parent[x], x = root, parent.get(x, x)
            return root

        forest: dict[int, list[int]] = defaultdict(list)
        for u, v in by_pair[key]:
            ru, rv = find(u), find(v)
            if ru == rv:
                return violated(_forest_path(forest, v, u), "two-colored cycle", classes=list(key))
            parent[ru] = rv
            forest[u].append(v)
            forest[v].append(u)
    return VALID


def _forest_path(forest: dict[int, list[int]], src: int, dst: int) -> list[int]:
    prev = {src: src}
    stack = [src]
    while stack:
        x = stack.pop()
        if x == dst:
            break
        for y in forest[x]:
            if y not in prev:
                prev[y] = x
                stack.append(y)
    path = [dst]
    while path[-1] != src:
        path.append(prev[path[-1]])
    return path


def is_star(g: Graph, c: Sequence[int]) -> Verdict:
    """No path on four vertices uses exactly two colors; witness is that path."""
    arr = _colors(g, c)
    _require_proper(g, c)
    indptr, indices = g.csr
    p4 = kernels.first_bicolored_p4(indptr, indices, arr)
    if p4 is not None:
        return violated(p4, "two-colored P4")
    return VALID


def _nonsingleton_classes(c: Sequence[int]) -> list[int]:
    counts = Counter(c)
    return sorted(col for col, k in counts.items() if k >= 2)


def is_degenerate(
    g: Graph,
    c: Sequence[int],
    mode: str = "exhaustive",
    max_classes: int = DEFAULT_MAX_CLASSES,
) -> Verdict:
    """Check that every union of k classes is k-degenerate.

    Only classes with at least two vertices are searched: a class with a
    single vertex ``x`` can be dropped from any violating union, since
    removing ``x`` from a core of minimum degree ``>= k`` leaves one of
    minimum degree ``>= k - 1`` on ``k - 1`` classes.  Unions of more than
    ``max_degree`` classes cannot host a k-core and are skipped.  With those
    two reductions ``exhaustive`` mode is still complete; it refuses when
    more than ``max_classes`` classes remain.

    ``restricted`` mode grows class sets greedily from pairs ``(i, j)``
    where a vertex of color ``i`` sees two vertices of color ``j``.  It
    only reports real cores but may miss some, hence ``ValidRestricted``.
    """
    arr = _colors(g, c)
    _require_proper(g, c)
    classes = _nonsingleton_classes(c)
    index = {col: i for i, col in enumerate(classes)}
    cls = kernels.int_array(index.get(x, -1) for x in c)
    indptr, indices = g.csr
    max_k = min(g.max_degree, len(classes))
    if mode == "exhaustive":
        if len(classes) > max_classes:
            raise ExhaustiveRefused(
                f"{len(classes)} non-singleton classes exceed max_classes={max_classes}"
            )
        hit = kernels.degenerate_search(indptr, indices, cls, len(classes), max_k)
        if hit is None:
            return VALID
        subset, core = hit
        return violated(core, "degeneracy core", classes=[classes[i] for i in subset])
    if mode == "restricted":
        hit = _restricted_search(g, arr, cls, classes, max_k)
        if hit is None:
            return Verdict(Status.VALID_RESTRICTED)
        subset, core = hit
        return violated(core, "degeneracy core", classes=subset)
    raise ValueError(f"unknown mode {mode!r}")


def _restricted_search(g, arr, cls, classes, max_k):
    indptr, indices = g.csr
    members: dict[int, list[int]] = defaultdict(list)
    for v in range(g.n):
        if cls[v] >= 0:
            members[arr[v]].append(v)
    seeds = set()
    for x in range(g.n):
        if cls[x] < 0:
            continue
        seen = Counter(arr[w] for w in g.adj[x] if cls[w] >= 0)
        for col, k in seen.items():
            if k >= 2:
                seeds.add((min(arr[x], col), max(arr[x], col)))
    for seed in sorted(seeds):
        chosen = list(seed)
        mask = bytearray(g.n)
        for col in chosen:
            for v in members[col]:
                mask[v] = 1
        while True:
            core = kernels.peel(indptr, indices, mask, len(chosen))
            if core:
                return sorted(chosen), core
            if len(chosen) >= max_k:
                break
            gain: Counter = Counter()
            for v in range(g.n):
                if mask[v]:
                    for w in g.adj[v]:
                        if not mask[w] and cls[w] >= 0:
                            gain[arr[w]] += 1
            if not gain:
                break
            best = min(gain, key=lambda col: (-gain[col], col))
            chosen.append(best)
            for v in members[best]:
                mask[v] = 1
    return None


def is_degenerate_star(
    g: Graph,
    c: Sequence[int],
    mode: str = "exhaustive",
    max_classes: int = DEFAULT_MAX_CLASSES,
) -> Verdict:
    star = is_star(g, c)
    if star.violated:
        return star
    return is_degenerate(g, c, mode=mode, max_classes=max_classes)


def is_distance_two(g: Graph, c: Sequence[int]) -> Verdict:
    """Proper, and vertices with a common neighbor differ; witness ``(x, w, y)``."""
    arr = _colors(g, c)
    proper = is_proper(g, c)
    if proper.violated:
        return proper
    indptr, indices = g.csr
    hit = kernels.distance_two_conflict(indptr, indices, arr)
    if hit is not None:
        return violated(hit, "equal colors at distance two")
    return VALID


def neighbors_distinct(g: Graph, c: Sequence[int], threshold: int) -> Verdict:
    """Vertices of degree <= threshold see pairwise distinct colors; witness ``(v, a, b)``."""
    _colors(g, c)
    for v in range(g.n):
        if g.degree(v) > threshold:
            continue
        seen: dict[int, int] = {}
        for w in sorted(g.adj[v]):
            if c[w] in seen:
                return violated((v, seen[c[w]], w), "repeated color in neighborhood")
            seen[c[w]] = w
    return VALID


def class_edge_profile(
    g: Graph,
    c: Sequence[int],
    S: Iterable[int],
    i: int,
    within: Iterable[int] | None = None,
) -> dict[int, int]:
    """``{j: |E(S, C_j)|}`` for every other class ``j``.

    With ``within``, classes and edges are those of the induced subgraph on
    that vertex set.
    """
    S = set(S)
    if not S:
        raise ValueError("S must be nonempty")
    if any(c[v] != i for v in S):
        raise ValueError(f"S is not contained in color class {i}")
    allowed = set(range(g.n)) if within is None else set(within)
    if not S <= allowed:
        raise ValueError("S must lie inside the restricting vertex set")
    profile = {col: 0 for col in {c[v] for v in allowed} if col != i}
    for v in S:
        for w in g.adj[v]:
            if w in allowed:
                profile[c[w]] += 1
    return dict(sorted(profile.items()))


def degeneracy(g: Graph) -> int:
    indptr, indices = g.csr
    return kernels.degeneracy(indptr, indices)


def color_classes(c: Sequence[int]) -> dict[int, list[int]]:
    out: dict[int, list[int]] = defaultdict(list)
    for v, col in enumerate(c):
        out[col].append(v)
    return dict(out)


# -- coloring text format -----------------------------------------------------

def parse_coloring(text: str, n: int | None = None) -> list[int | None]:
    """Parse ``c <vertex> <color>`` lines; unassigned vertices come back as None."""
    pairs: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] != "c" or len(parts) != 3:
            raise ValueError(f"line {lineno}: cannot parse {raw!r}")
        v, col = int(parts[1]), int(parts[2])
        if v < 0 or col < 0:
            raise ValueError(f"line {lineno}: negative vertex or color")
        if v in pairs:
            raise ValueError(f"line {lineno}: vertex {v} colored twice")
        pairs[v] = col
    size = n if n is not None else (max(pairs) + 1 if pairs else 0)
    if pairs and max(pairs) >= size:
        raise ValueError(f"vertex {max(pairs)} out of range for n={size}")
    return [pairs.get(v) for v in range(size)]


def format_coloring(c: Sequence[int]) -> str:
    return "".join(f"c {v} {col}\n" for v, col in enumerate(c) if col is not None)
