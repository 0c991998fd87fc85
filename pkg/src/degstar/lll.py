"""Resampling colorer for bounded-degree graphs and the Local Lemma arithmetic.

The colorer samples a uniform list coloring, then repeatedly picks one
forbidden configuration and recolors exactly its vertices, until none is
left.  Forbidden configurations:

``A``  monochromatic edge
``T``  path ``x1 x2 x3`` with ``deg(x2) <= sqrt(delta)`` and ``c(x1) = c(x3)``
``S``  special pair (distance two, ``>= sqrt(delta)`` common neighbors) with equal colors
``B``  path on four vertices using exactly two colors
``D``  a degeneracy core: induced subgraph of minimum degree ``>=`` its number of colors

A coloring with none of them is a degenerate star coloring in which every
vertex of degree at most ``sqrt(delta)`` sees pairwise distinct colors.
Kind ``D`` is searched only once ``A``, ``T``, ``S`` and ``B`` are gone.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Mapping

from degstar import kernels, verifiers
from degstar.graph import Graph, special_pairs
from degstar.lists import ListAssignment

KIND_PRIORITY = {"A": 0, "T": 1, "S": 2, "B": 3, "D": 4}


@dataclass(frozen=True, order=True)
class PatternViolation:
    """One forbidden configuration; paths (kinds T and B) keep their vertex order."""

    kind: str
    vertices: tuple[int, ...]

    def sort_key(self):
        return (KIND_PRIORITY[self.kind], self.vertices)

    def to_json(self):
        return {"kind": self.kind, "vertices": list(self.vertices)}


class RoundBudgetExhausted(RuntimeError):
    def __init__(self, coloring, violations, rounds):
        super().__init__(f"{len(violations)} violations left after {rounds} rounds")
        self.coloring = coloring
        self.violations = violations
        self.rounds = rounds


def palette_size(delta: int) -> int:
    """``ceil(1000 * delta ** 1.5)`` in exact integer arithmetic."""
    if delta < 0:
        raise ValueError("delta must be non-negative")
    target = 10**6 * delta**3
    r = math.isqrt(target)
    return r if r * r == target else r + 1


def sample_coloring(L: ListAssignment, rng: random.Random) -> list[int]:
    for v, lst in enumerate(L):
        if len(lst) == 0:
            raise ValueError(f"empty list at vertex {v}")
    return [lst.choice(rng) for lst in L]


def _sqrt_at_least(count: int, delta: int) -> bool:
    return count * count >= delta


def find_violations(g: Graph, c, delta: int) -> list[PatternViolation]:
    """All A/T/S/B configurations, or else any degeneracy core (kind D)."""
    found: set[PatternViolation] = set()
    for u, v in g.edges():
        if c[u] == c[v]:
            found.add(PatternViolation("A", (u, v)))
    for x2 in range(g.n):
        d = g.degree(x2)
        if d * d > delta:
            continue
        nb = sorted(g.adj[x2])
        for i, x1 in enumerate(nb):
            for x3 in nb[i + 1:]:
                if c[x1] == c[x3]:
                    found.add(PatternViolation("T", (x1, x2, x3)))
    for x, y in special_pairs(g, delta):
        if c[x] == c[y]:
            found.add(PatternViolation("S", (x, y)))
    indptr, indices = g.csr
    for path in kernels.all_bicolored_p4(indptr, indices, kernels.int_array(c)):
        path = tuple(path)
        found.add(PatternViolation("B", min(path, path[::-1])))
    if not found:
        verdict = verifiers.is_degenerate(g, c, mode="restricted")
        if verdict.violated:
            found.add(PatternViolation("D", tuple(sorted(verdict.witness))))
    return sorted(found, key=PatternViolation.sort_key)


def resample(c: list[int], violation: PatternViolation, L: ListAssignment, rng: random.Random) -> list[int]:
    """New coloring with the violation's vertices redrawn from their lists."""
    out = list(c)
    for v in violation.vertices:
        out[v] = L[v].choice(rng)
    return out


@dataclass
class ResampleRun:
    coloring: list[int]
    rounds: int
    violations_per_round: list[int] = field(default_factory=list)
    delta: int = 0

    def to_json(self):
        return {
            "rounds": self.rounds,
            "violations_per_round": self.violations_per_round,
            "delta": self.delta,
        }


def resample_until_clean(
    g: Graph,
    L: ListAssignment,
    rng: random.Random,
    max_rounds: int,
    delta: int | None = None,
) -> ResampleRun:
    """Run the resampling loop and keep per-round statistics."""
    if len(L) != g.n:
        raise ValueError("one list per vertex is required")
    delta = g.max_degree if delta is None else delta
    c = sample_coloring(L, rng)
    history = []
    rounds = 0
    while True:
        bad = find_violations(g, c, delta)
        history.append(len(bad))
        if not bad:
            return ResampleRun(c, rounds, history, delta)
        if rounds >= max_rounds:
            raise RoundBudgetExhausted(c, bad, rounds)
        c = resample(c, bad[0], L, rng)
        rounds += 1


def moser_tardos_color(g: Graph, L: ListAssignment, rng: random.Random, max_rounds: int) -> list[int]:
    return resample_until_clean(g, L, rng, max_rounds).coloring


# -- Local Lemma condition -------------------------------------------------------

EVENT_TYPES = ("A", "B", "C", "D", "E", "F", "I", "J", "K", "L", "M", "S", "T")


@dataclass(frozen=True)
class LLLBudget:
    """Per-type probability exponents, event sizes and dependency bounds.

    ``P(X) = alpha ** -exponent[X]`` and the weight is ``weight_factor * P(X)``.
    A dependency bound is ``coef * delta ** (half_power / 2)``; types without
    an explicit entry use ``100 * delta ** (size - 1)``.
    """

    exponent: Mapping[str, int] = field(default_factory=lambda: {
        "A": 1, "S": 1, "T": 1,
        "B": 2, "C": 2,
        "D": 4, "E": 4, "F": 4, "M": 4,
        "J": 5,
        "I": 6, "K": 6, "L": 6,
    })
    size: Mapping[str, int] = field(default_factory=lambda: {
        "A": 2, "B": 4, "C": 4,
        "D": 7, "E": 7, "F": 7, "M": 7,
        "J": 9,
        "I": 10, "K": 10, "L": 10,
    })
    special_bounds: Mapping[str, tuple[int, int]] = field(default_factory=lambda: {
        "J": (90, 15), "S": (10, 3), "T": (30, 3),
    })
    weight_factor: int = 2

    def bound(self, kind: str) -> tuple[int, int]:
        if kind in self.special_bounds:
            return self.special_bounds[kind]
        return 100, 2 * (self.size[kind] - 1)


@dataclass(frozen=True)
class Surd:
    """Exact value ``coef * sqrt(rad)``."""

    coef: int
    rad: int = 1

    def __post_init__(self):
        r = math.isqrt(self.rad)
        if r * r == self.rad and self.rad != 1:
            object.__setattr__(self, "coef", self.coef * r)
            object.__setattr__(self, "rad", 1)

    def __float__(self):
        return self.coef * math.sqrt(self.rad)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.rad == 1 and self.coef == other
        if isinstance(other, Surd):
            return self.coef * self.coef * self.rad == other.coef * other.coef * other.rad and (
                (self.coef >= 0) == (other.coef >= 0)
            )
        return NotImplemented

    def __hash__(self):
        return hash((self.coef, self.rad))


def _delta_power(delta: int, half_power: int) -> tuple[int, int]:
    """``delta ** (half_power / 2)`` as ``(integer part, sqrt factor present)``."""
    return delta ** (half_power // 2), half_power % 2


def dependency_bounds(delta: int, budget: LLLBudget | None = None) -> dict[str, Surd]:
    """Upper bounds on how many events of each type one event depends on."""
    if delta < 1:
        raise ValueError("delta must be at least 1")
    budget = budget or LLLBudget()
    out = {}
    for kind in EVENT_TYPES:
        coef, hp = budget.bound(kind)
        base, odd = _delta_power(delta, hp)
        out[kind] = Surd(coef * base, delta if odd else 1)
    return out


def _sign(p: int, q: int, d: int) -> int:
    """Sign of ``p + q * sqrt(d)``."""
    if p >= 0 and q >= 0:
        return int(p > 0 or q > 0)
    if p <= 0 and q <= 0:
        return -1
    lhs, rhs = p * p, q * q * d
    if lhs == rhs:
        return 0
    return (1 if lhs > rhs else -1) * (1 if p > 0 else -1)


def verify_lll_condition(delta: int, alpha: int, budget: LLLBudget | None = None) -> bool:
    """Decide whether the Local Lemma product is at least 1/2, exactly.

    The product is ``prod_X (1 - bound_X * w_X)`` with ``w_X = 2 alpha^-e_X``.
    It is evaluated in ``Z[sqrt(delta)]`` over the common denominator
    ``alpha ** sum(e_X)``.  The check fails when a weight is not below 1 or a
    factor is not positive, since the product bound is then meaningless.
    """
    if delta < 1:
        raise ValueError("delta must be at least 1")
    if alpha < 2:
        raise ValueError("alpha must be at least 2")
    budget = budget or LLLBudget()
    p, q = 1, 0  # running numerator p + q*sqrt(delta)
    denom = 1
    for kind in EVENT_TYPES:
        e = budget.exponent[kind]
        scale = alpha**e
        if budget.weight_factor >= scale:
            return False
        coef, hp = budget.bound(kind)
        base, odd = _delta_power(delta, hp)
        sub = budget.weight_factor * coef * base
        # factor numerator over alpha**e: scale - sub * sqrt(delta)**odd
        fp, fq = (scale, -sub) if odd else (scale - sub, 0)
        if _sign(fp, fq, delta) <= 0:
            return False
        p, q = p * fp + q * fq * delta, p * fq + q * fp
        denom *= scale
    # product >= 1/2  <=>  2 (p + q sqrt(delta)) - denom >= 0
    return _sign(2 * p - denom, 2 * q, delta) >= 0
