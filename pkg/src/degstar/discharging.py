"""Charge bookkeeping for the bounded-degree core argument.

Vertices start with ``deg - 6`` and faces with ``2 deg - 6``; on a connected
rotation system of Euler genus ``g`` these sum to exactly ``6g - 12``.
Specials are raised to ``deg / 2``.  Charge then moves by four rules:

R1  a face of length >= 4 sends 1 to each degree-3 vertex on it (once per corner);
R2  such a face also sends 1 to the middle vertex of each consecutive triple
    along its walk with degrees (4|5, 11, 4|5);
R3  a vertex of degree >= 11 sends 1 to a degree-3 neighbor whose edge
    borders two triangular face sides, and 1/2 to other degree-3 neighbors
    and to every neighbor of degree 4 or 5;
R4  a vertex of degree 10 sends 1/5 to each neighbor of degree 5.

Rules only make sense when no vertex is reducible, so reducible inputs are
rejected.  All arithmetic uses :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable

from degstar.embedding import FaceSet, RotationSystem, euler_genus, trace_faces
from degstar.reducer import _reducible

Node = tuple[str, int]  # ("v", vertex) or ("f", face)


class ReducibleInput(ValueError):
    def __init__(self, vertex: int, kind: str):
        super().__init__(f"vertex {vertex} is reducible ({kind})")
        self.vertex = vertex
        self.kind = kind


@dataclass(frozen=True)
class Transfer:
    source: Node
    sink: Node
    amount: Fraction
    rule: str

    def to_json(self) -> dict:
        return {
            "source": f"{self.source[0]}{self.source[1]}",
            "sink": f"{self.sink[0]}{self.sink[1]}",
            "amount": str(self.amount),
            "rule": self.rule,
        }


@dataclass(frozen=True)
class ChargeLedger:
    vertex_charge: tuple[Fraction, ...]
    face_charge: tuple[Fraction, ...]
    transfers: tuple[Transfer, ...] = field(default=())

    @property
    def total(self) -> Fraction:
        return sum(self.vertex_charge, Fraction(0)) + sum(self.face_charge, Fraction(0))


def initial_charges(emb: RotationSystem, faces: FaceSet | None = None) -> ChargeLedger:
    faces = faces or trace_faces(emb)
    g = emb.graph
    return ChargeLedger(
        tuple(Fraction(g.degree(v) - 6) for v in range(g.n)),
        tuple(Fraction(2 * faces.degree(f) - 6) for f in range(len(faces))),
    )


def modified_charges(ledger: ChargeLedger, special_set: Iterable[int], emb: RotationSystem) -> ChargeLedger:
    """Specials get half their degree; everything else is unchanged."""
    charges = list(ledger.vertex_charge)
    for v in set(special_set):
        charges[v] = Fraction(emb.graph.degree(v), 2)
    return replace(ledger, vertex_charge=tuple(charges))


def first_reducible(emb: RotationSystem):
    g = emb.graph
    adj = {v: set(g.adj[v]) for v in range(g.n)}
    for v in range(g.n):
        hit = _reducible(adj, v)
        if hit is not None:
            return v, hit[0].value
    return None


def _moves(emb: RotationSystem, faces: FaceSet) -> list[Transfer]:
    g = emb.graph
    deg = g.degree
    out = []
    one, half, fifth = Fraction(1), Fraction(1, 2), Fraction(1, 5)
    for f, face in enumerate(faces.faces):
        if len(face) < 4:
            continue
        walk = [u for u, _ in face]
        L = len(walk)
        for pos, u in enumerate(walk):
            if deg(u) == 3:
                out.append(Transfer(("f", f), ("v", u), one, "R1"))
            if deg(u) == 11 and deg(walk[pos - 1]) in (4, 5) and deg(walk[(pos + 1) % L]) in (4, 5):
                out.append(Transfer(("f", f), ("v", u), one, "R2"))
    face_of = faces.face_of_dart
    for x in range(g.n):
        dx = deg(x)
        if dx >= 11:
            for y in sorted(g.adj[x]):
                dy = deg(y)
                if dy == 3:
                    triangles = len(faces.faces[face_of[(x, y)]]) == 3 and len(faces.faces[face_of[(y, x)]]) == 3
                    out.append(Transfer(("v", x), ("v", y), one if triangles else half, "R3"))
                elif dy in (4, 5):
                    out.append(Transfer(("v", x), ("v", y), half, "R3"))
        elif dx == 10:
            for y in sorted(g.adj[x]):
                if deg(y) == 5:
                    out.append(Transfer(("v", x), ("v", y), fifth, "R4"))
    return out


def apply_discharging(emb: RotationSystem, ledger: ChargeLedger, faces: FaceSet | None = None) -> ChargeLedger:
    hit = first_reducible(emb)
    if hit is not None:
        raise ReducibleInput(*hit)
    faces = faces or trace_faces(emb)
    vc = list(ledger.vertex_charge)
    fc = list(ledger.face_charge)
    moves = _moves(emb, faces)
    for t in moves:
        for node, sign in ((t.source, -1), (t.sink, 1)):
            target = vc if node[0] == "v" else fc
            target[node[1]] += sign * t.amount
    return ChargeLedger(tuple(vc), tuple(fc), ledger.transfers + tuple(moves))


@dataclass
class AuditReport:
    genus: int
    euler_total: Fraction
    modified_total: Fraction
    final_total: Fraction
    min_vertex_charge: Fraction | None
    min_face_charge: Fraction | None
    violations: list[Node]
    max_degree: int
    ledger: ChargeLedger

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self, verbose: bool = False) -> dict:
        out = {
            "genus": self.genus,
            "euler_total": str(self.euler_total),
            "expected_euler_total": 6 * self.genus - 12,
            "modified_total": str(self.modified_total),
            "final_total": str(self.final_total),
            "min_vertex_charge": None if self.min_vertex_charge is None else str(self.min_vertex_charge),
            "min_face_charge": None if self.min_face_charge is None else str(self.min_face_charge),
            "violations": [f"{k}{i}" for k, i in self.violations],
            "max_degree": self.max_degree,
            "transfers": len(self.ledger.transfers),
        }
        if verbose:
            out["transfer_log"] = [t.to_json() for t in self.ledger.transfers]
        return out


def audit(emb: RotationSystem, special_set: Iterable[int] = ()) -> AuditReport:
    """Run the whole charge chain and list every vertex or face ending below zero."""
    genus = euler_genus(emb)
    faces = trace_faces(emb)
    start = initial_charges(emb, faces)
    mod = modified_charges(start, special_set, emb)
    final = apply_discharging(emb, mod, faces)
    bad = [("v", v) for v, ch in enumerate(final.vertex_charge) if ch < 0]
    bad += [("f", f) for f, ch in enumerate(final.face_charge) if ch < 0]
    return AuditReport(
        genus,
        start.total,
        mod.total,
        final.total,
        min(final.vertex_charge, default=None),
        min(final.face_charge, default=None),
        bad,
        emb.graph.max_degree,
        final,
    )
