"""Rotation systems (orientable combinatorial embeddings) and face tracing.

Face-tracing convention: the dart following ``(u, v)`` on its face is
``(v, w)`` where ``w`` is the successor of ``u`` in the cyclic order at ``v``.
Reversing every rotation traces the mirror embedding, which has the same
genus.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from degstar.graph import Graph, GraphError

Dart = tuple[int, int]


class EmbeddingError(ValueError):
    """Invalid rotation system or an operation that needs a connected graph."""


@dataclass(frozen=True)
class RotationSystem:
    graph: Graph
    rot: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.rot) != self.graph.n:
            raise EmbeddingError("one rotation per vertex is required")
        for v, order in enumerate(self.rot):
            if len(order) != len(set(order)) or set(order) != self.graph.adj[v]:
                raise EmbeddingError(f"rotation at {v} is not a permutation of its neighbors")

    @classmethod
    def from_rotations(cls, rot: Sequence[Sequence[int]]) -> "RotationSystem":
        """Build graph and embedding from per-vertex cyclic neighbor orders."""
        n = len(rot)
        edges = set()
        for v, order in enumerate(rot):
            for w in order:
                if not 0 <= w < n:
                    raise EmbeddingError(f"neighbor {w} of {v} out of range")
                if w == v:
                    raise EmbeddingError(f"self-loop at {v}")
                edges.add((min(v, w), max(v, w)))
        for v, order in enumerate(rot):
            for w in order:
                if v not in rot[w]:
                    raise EmbeddingError(f"edge {v}-{w} missing from the rotation at {w}")
        try:
            g = Graph.from_edges(n, edges)
        except GraphError as exc:
            raise EmbeddingError(str(exc)) from None
        return cls(g, tuple(tuple(o) for o in rot))

    @cached_property
    def _succ(self) -> tuple[dict[int, int], ...]:
        return tuple(
            {order[i]: order[(i + 1) % len(order)] for i in range(len(order))} for order in self.rot
        )

    def successor(self, v: int, u: int) -> int:
        """Neighbor after ``u`` in the cyclic order at ``v``."""
        return self._succ[v][u]

    def predecessor(self, v: int, u: int) -> int:
        order = self.rot[v]
        return order[order.index(u) - 1]

    def reversed(self) -> "RotationSystem":
        return RotationSystem(self.graph, tuple(tuple(reversed(o)) for o in self.rot))

    def relabeled(self, perm: Sequence[int]) -> "RotationSystem":
        """Rename vertex ``v`` to ``perm[v]``."""
        n = self.graph.n
        rot: list[tuple[int, ...]] = [()] * n
        for v, order in enumerate(self.rot):
            rot[perm[v]] = tuple(perm[w] for w in order)
        return RotationSystem.from_rotations(rot)


@dataclass(frozen=True)
class FaceSet:
    """Facial walks as cyclic sequences of darts."""

    embedding: RotationSystem
    faces: tuple[tuple[Dart, ...], ...]

    def degree(self, f: int) -> int:
        return len(self.faces[f])

    def walk(self, f: int) -> tuple[int, ...]:
        """Vertices of face ``f`` in order (tail of each dart)."""
        return tuple(u for u, _ in self.faces[f])

    @cached_property
    def face_of_dart(self) -> dict[Dart, int]:
        return {d: i for i, face in enumerate(self.faces) for d in face}

    def __len__(self) -> int:
        return len(self.faces)


def trace_faces(r: RotationSystem) -> FaceSet:
    g = r.graph
    if g.n == 0:
        return FaceSet(r, ())
    if g.m == 0:
        if g.n != 1:
            raise EmbeddingError("graph is not connected")
        # a lone vertex on the sphere bounds one face with an empty walk
        return FaceSet(r, ((),))
    darts = [(u, v) for u in range(g.n) for v in r.rot[u]]
    seen: set[Dart] = set()
    faces = []
    for start in darts:
        if start in seen:
            continue
        face = []
        d = start
        while d not in seen:
            seen.add(d)
            face.append(d)
            u, v = d
            d = (v, r.successor(v, u))
        if d != start:
            raise EmbeddingError("face tracing did not close up")
        faces.append(tuple(face))
    return FaceSet(r, tuple(faces))


def euler_genus(r: RotationSystem) -> int:
    g = r.graph
    if not g.is_connected():
        raise EmbeddingError("euler_genus needs a connected graph")
    if g.n == 0:
        return 0
    fs = trace_faces(r)
    return 2 - g.n + g.m - len(fs)


def face_incidences(fs: FaceSet) -> tuple[list[list[tuple[int, int]]], list[tuple[int, ...]]]:
    """Per vertex, its ``(face, position)`` corners; per face, the degree sequence along the walk."""
    g = fs.embedding.graph
    corners: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    degrees = []
    for f, face in enumerate(fs.faces):
        walk = [u for u, _ in face]
        for pos, u in enumerate(walk):
            corners[u].append((f, pos))
        degrees.append(tuple(g.degree(u) for u in walk))
    return corners, degrees


# -- constructions -------------------------------------------------------------

def rotation_from_positions(g: Graph, pos: Sequence[tuple[float, float]]) -> RotationSystem:
    """Counter-clockwise neighbor order around each point of a straight-line drawing."""
    rot = []
    for v in range(g.n):
        x0, y0 = pos[v]
        rot.append(tuple(sorted(g.adj[v], key=lambda w: math.atan2(pos[w][1] - y0, pos[w][0] - x0))))
    return RotationSystem(g, tuple(rot))


def planar_k4() -> RotationSystem:
    return RotationSystem.from_rotations([(1, 2, 3), (0, 3, 2), (0, 1, 3), (0, 2, 1)])


def planar_cycle(n: int) -> RotationSystem:
    return RotationSystem.from_rotations([((i - 1) % n, (i + 1) % n) for i in range(n)])


def planar_cube() -> RotationSystem:
    from degstar.graph import cube_graph

    # outer square 0,1,3,2 at the corners, inner square 4,5,7,6 shrunk
    pos = {0: (-2, -2), 1: (2, -2), 3: (2, 2), 2: (-2, 2),
           4: (-1, -1), 5: (1, -1), 7: (1, 1), 6: (-1, 1)}
    return rotation_from_positions(cube_graph(), [pos[v] for v in range(8)])


def toroidal_k7() -> RotationSystem:
    """Triangular embedding of K7 on the torus: 14 faces, Euler genus 2."""
    return RotationSystem.from_rotations(
        [tuple((i + s) % 7 for s in (1, 3, 2, 6, 4, 5)) for i in range(7)]
    )


def toroidal_triangular_grid(rows: int, cols: int) -> RotationSystem:
    """6-regular triangulation of the torus on a ``rows x cols`` grid (both >= 3)."""
    if rows < 3 or cols < 3:
        raise ValueError("rows and cols must be at least 3 for a simple graph")

    def idx(r, c):
        return (r % rows) * cols + (c % cols)

    steps = [(0, 1), (1, 0), (1, -1), (0, -1), (-1, 0), (-1, 1)]
    rot = [tuple(idx(r + dr, c + dc) for dr, dc in steps) for r in range(rows) for c in range(cols)]
    return RotationSystem.from_rotations(rot)


def random_rotation(g: Graph, rng: random.Random) -> RotationSystem:
    rot = []
    for v in range(g.n):
        order = sorted(g.adj[v])
        rng.shuffle(order)
        rot.append(tuple(order))
    return RotationSystem(g, tuple(rot))


# -- rotation-system text format ----------------------------------------------

def parse_rotation_system(text: str) -> RotationSystem:
    """Parse ``r <n>`` then ``v <id>: <nb1> <nb2> ...`` lines."""
    n = None
    rot: dict[int, tuple[int, ...]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("r "):
            if n is not None:
                raise EmbeddingError(f"line {lineno}: duplicate header")
            n = int(line.split()[1])
            continue
        if not line.startswith("v ") or ":" not in line:
            raise EmbeddingError(f"line {lineno}: cannot parse {raw!r}")
        if n is None:
            raise EmbeddingError(f"line {lineno}: rotation before header")
        head, tail = line[2:].split(":", 1)
        v = int(head)
        if v in rot:
            raise EmbeddingError(f"line {lineno}: vertex {v} listed twice")
        rot[v] = tuple(int(x) for x in tail.split())
    if n is None:
        raise EmbeddingError("missing 'r <n>' header")
    if set(rot) - set(range(n)):
        raise EmbeddingError("vertex id out of range")
    return RotationSystem.from_rotations([rot.get(v, ()) for v in range(n)])


def format_rotation_system(r: RotationSystem) -> str:
    lines = [f"r {r.graph.n}"]
    lines.extend(f"v {v}: " + " ".join(map(str, order)) for v, order in enumerate(r.rot))
    return "\n".join(lines) + "\n"
