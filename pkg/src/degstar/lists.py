"""Admissible-color lists.

Lists in the interesting regime hold 10^5 or more colors per vertex, so a
list is stored as a base collection (usually a ``range``) minus a small set
of removed colors, and identical lists are shared between vertices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True)
class ColorList:
    base: range | tuple[int, ...]
    removed: frozenset[int] = frozenset()

    @classmethod
    def of(cls, colors: Iterable[int]) -> "ColorList":
        if isinstance(colors, range) and colors.step == 1:
            return cls(colors)
        if isinstance(colors, ColorList):
            return colors
        return cls(tuple(sorted(set(colors))))

    def __len__(self) -> int:
        if not self.removed:
            return len(self.base)
        return len(self.base) - sum(1 for c in self.removed if c in self.base)

    def __contains__(self, color: int) -> bool:
        return color in self.base and color not in self.removed

    def __iter__(self) -> Iterator[int]:
        for c in self.base:
            if c not in self.removed:
                yield c

    def minus(self, colors: Iterable[int]) -> "ColorList":
        drop = frozenset(c for c in colors if c in self.base)
        if not drop - self.removed:
            return self
        return ColorList(self.base, self.removed | drop)

    def choice(self, rng: random.Random) -> int:
        """Uniform color from the list."""
        size = len(self)
        if size == 0:
            raise ValueError("cannot sample from an empty list")
        if not self.removed:
            return self.base[rng.randrange(len(self.base))]
        if 2 * size >= len(self.base):
            while True:
                c = self.base[rng.randrange(len(self.base))]
                if c not in self.removed:
                    return c
        return sorted(self)[rng.randrange(size)]

    def first_not_in(self, forbidden) -> int | None:
        """Smallest listed color outside ``forbidden`` (a container)."""
        for c in self:
            if c not in forbidden:
                return c
        return None

    def describe(self):
        if isinstance(self.base, range) and not self.removed:
            return {"range": [self.base.start, self.base.stop]}
        return sorted(self)


class ListAssignment(Sequence[ColorList]):
    """Per-vertex admissible colors."""

    def __init__(self, lists: Iterable[ColorList | Iterable[int]]):
        self._lists = tuple(c if isinstance(c, ColorList) else ColorList.of(c) for c in lists)

    @classmethod
    def uniform(cls, n: int, colors: Iterable[int]) -> "ListAssignment":
        shared = ColorList.of(colors)
        return cls([shared] * n)

    def __getitem__(self, v):
        return self._lists[v]

    def __len__(self) -> int:
        return len(self._lists)

    def __repr__(self):
        return f"ListAssignment(n={len(self)})"

    def min_size(self) -> int:
        return min((len(x) for x in self._lists), default=0)

    def subset(self, vertices: Sequence[int]) -> "ListAssignment":
        return ListAssignment([self._lists[v] for v in vertices])

    def minus(self, colors: Iterable[int], keep: Iterable[int] = ()) -> "ListAssignment":
        """Remove ``colors`` from every list except those of vertices in ``keep``."""
        colors = frozenset(colors)
        keep = set(keep)
        cache: dict[int, ColorList] = {}
        out = []
        for v, lst in enumerate(self._lists):
            if v in keep:
                out.append(lst)
                continue
            key = id(lst)
            if key not in cache:
                cache[key] = lst.minus(colors)
            out.append(cache[key])
        return ListAssignment(out)
