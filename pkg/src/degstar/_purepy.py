"""Pure-Python kernels.  Reference semantics for ``_speedups.pyx``.

All functions take a sorted CSR adjacency ``(indptr, indices)`` and per-vertex
integer arrays; they never see :class:`degstar.graph.Graph` objects.
"""

from itertools import combinations


def first_bicolored_p4(indptr, indices, color):
    """First path a-b-c-d using exactly two colors, scanning middle edges b<c."""
    n = len(indptr) - 1
    for b in range(n):
        cb = color[b]
        for i in range(indptr[b], indptr[b + 1]):
            c = indices[i]
            if c <= b:
                continue
            cc = color[c]
            if cb == cc:
                continue
            a = -1
            for j in range(indptr[b], indptr[b + 1]):
                x = indices[j]
                if x != c and color[x] == cc:
                    a = x
                    break
            if a < 0:
                continue
            for j in range(indptr[c], indptr[c + 1]):
                d = indices[j]
                if d != b and color[d] == cb:
                    return (a, b, c, d)
    return None


def all_bicolored_p4(indptr, indices, color):
    """Every two-colored P4 exactly once, as ``(a, b, c, d)`` with ``b < c``."""
    n = len(indptr) - 1
    out = []
    for b in range(n):
        cb = color[b]
        for i in range(indptr[b], indptr[b + 1]):
            c = indices[i]
            if c <= b or color[c] == cb:
                continue
            cc = color[c]
            left = [indices[j] for j in range(indptr[b], indptr[b + 1])
                    if indices[j] != c and color[indices[j]] == cc]
            if not left:
                continue
            right = [indices[j] for j in range(indptr[c], indptr[c + 1])
                     if indices[j] != b and color[indices[j]] == cb]
            for a in left:
                for d in right:
                    out.append((a, b, c, d))
    return out


def peel(indptr, indices, member, k):
    """Repeatedly drop members with fewer than ``k`` member neighbors; return survivors."""
    n = len(indptr) - 1
    alive = bytearray(member)
    deg = [0] * n
    stack = []
    for v in range(n):
        if alive[v]:
            d = 0
            for i in range(indptr[v], indptr[v + 1]):
                if alive[indices[i]]:
                    d += 1
            deg[v] = d
            if d < k:
                stack.append(v)
    while stack:
        v = stack.pop()
        if not alive[v]:
            continue
        alive[v] = 0
        for i in range(indptr[v], indptr[v + 1]):
            w = indices[i]
            if alive[w]:
                deg[w] -= 1
                if deg[w] == k - 1:
                    stack.append(w)
    return [v for v in range(n) if alive[v]]


def degenerate_search(indptr, indices, cls, nclasses, max_k):
    """First class subset (size 2..max_k, lexicographic) whose union has a k-core.

    ``cls[v]`` is the class index of ``v`` or -1 when ``v`` is not a candidate.
    Returns ``(subset, core)`` or ``None``.
    """
    n = len(indptr) - 1
    members = [[] for _ in range(nclasses)]
    for v in range(n):
        if cls[v] >= 0:
            members[cls[v]].append(v)
    for k in range(2, min(max_k, nclasses) + 1):
        for subset in combinations(range(nclasses), k):
            mask = bytearray(n)
            for c in subset:
                for v in members[c]:
                    mask[v] = 1
            core = peel(indptr, indices, mask, k)
            if core:
                return subset, core
    return None


def distance_two_conflict(indptr, indices, color):
    """First ``(x, w, y)`` with ``x < y`` both adjacent to ``w`` and equally colored."""
    n = len(indptr) - 1
    best = None
    for w in range(n):
        seen = {}
        for i in range(indptr[w], indptr[w + 1]):
            x = indices[i]
            cx = color[x]
            if cx in seen:
                cand = (seen[cx], w, x)
                if best is None or (cand[0], cand[2], cand[1]) < (best[0], best[2], best[1]):
                    best = cand
            else:
                seen[cx] = x
    return best


def degeneracy(indptr, indices):
    """Largest minimum degree over all subgraphs (standard convention)."""
    n = len(indptr) - 1
    if n == 0:
        return 0
    deg = [indptr[v + 1] - indptr[v] for v in range(n)]
    maxd = max(deg)
    buckets = [set() for _ in range(maxd + 1)]
    for v in range(n):
        buckets[deg[v]].add(v)
    removed = bytearray(n)
    best = 0
    d = 0
    for _ in range(n):
        d = max(d - 1, 0)
        while not buckets[d]:
            d += 1
        v = min(buckets[d])
        buckets[d].discard(v)
        removed[v] = 1
        best = max(best, d)
        for i in range(indptr[v], indptr[v + 1]):
            w = indices[i]
            if not removed[w]:
                buckets[deg[w]].discard(w)
                deg[w] -= 1
                buckets[deg[w]].add(w)
    return best
