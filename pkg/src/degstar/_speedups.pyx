# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; same contracts as ``degstar._purepy``."""

from libc.stdlib cimport malloc, calloc, free

ctypedef long long i64


def first_bicolored_p4(const i64[:] indptr, const i64[:] indices, const i64[:] color):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t b, c, i, j, a, d
    cdef i64 cb, cc
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
                if indices[j] != c and color[indices[j]] == cc:
                    a = indices[j]
                    break
            if a < 0:
                continue
            for j in range(indptr[c], indptr[c + 1]):
                d = indices[j]
                if d != b and color[d] == cb:
                    return (a, b, c, d)
    return None


def all_bicolored_p4(const i64[:] indptr, const i64[:] indices, const i64[:] color):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t b, c, i, j, jj, a, d
    cdef i64 cb, cc
    out = []
    for b in range(n):
        cb = color[b]
        for i in range(indptr[b], indptr[b + 1]):
            c = indices[i]
            if c <= b:
                continue
            cc = color[c]
            if cb == cc:
                continue
            for j in range(indptr[b], indptr[b + 1]):
                a = indices[j]
                if a == c or color[a] != cc:
                    continue
                for jj in range(indptr[c], indptr[c + 1]):
                    d = indices[jj]
                    if d != b and color[d] == cb:
                        out.append((a, b, c, d))
    return out


cdef Py_ssize_t _peel(const i64[:] indptr, const i64[:] indices, unsigned char* alive,
                      i64* deg, i64* stack, Py_ssize_t n, i64 k) nogil:
    """Peel in place; return the number of survivors."""
    cdef Py_ssize_t v, w, i, top = 0, left = 0
    cdef i64 dg
    for v in range(n):
        if alive[v]:
            dg = 0
            for i in range(indptr[v], indptr[v + 1]):
                if alive[indices[i]]:
                    dg += 1
            deg[v] = dg
            left += 1
            if dg < k:
                stack[top] = v
                top += 1
    while top > 0:
        top -= 1
        v = stack[top]
        if not alive[v]:
            continue
        alive[v] = 0
        left -= 1
        for i in range(indptr[v], indptr[v + 1]):
            w = indices[i]
            if alive[w]:
                deg[w] -= 1
                if deg[w] == k - 1:
                    stack[top] = w
                    top += 1
    return left


def peel(const i64[:] indptr, const i64[:] indices, member, i64 k):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef unsigned char* alive = <unsigned char*> malloc(n + 1)
    cdef i64* deg = <i64*> malloc((n + 1) * sizeof(i64))
    # each vertex is pushed at most twice (initial + threshold crossing)
    cdef i64* stack = <i64*> malloc((2 * n + 1) * sizeof(i64))
    cdef Py_ssize_t v
    try:
        for v in range(n):
            alive[v] = 1 if member[v] else 0
        _peel(indptr, indices, alive, deg, stack, n, k)
        return [v for v in range(n) if alive[v]]
    finally:
        free(alive)
        free(deg)
        free(stack)


def degenerate_search(const i64[:] indptr, const i64[:] indices, const i64[:] cls,
                      Py_ssize_t nclasses, Py_ssize_t max_k):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t k, t, v, pos
    cdef Py_ssize_t top
    if max_k > nclasses:
        max_k = nclasses
    if max_k < 2:
        return None
    cdef unsigned char* alive = <unsigned char*> calloc(n + 1, 1)
    cdef i64* deg = <i64*> malloc((n + 1) * sizeof(i64))
    cdef i64* stack = <i64*> malloc((2 * n + 1) * sizeof(i64))
    cdef i64* idx = <i64*> malloc((max_k + 1) * sizeof(i64))
    # class-sorted vertex lists
    cdef i64* start = <i64*> calloc(nclasses + 1, sizeof(i64))
    cdef i64* verts = <i64*> malloc((n + 1) * sizeof(i64))
    cdef i64* fill = <i64*> calloc(nclasses + 1, sizeof(i64))
    try:
        for v in range(n):
            if cls[v] >= 0:
                start[cls[v] + 1] += 1
        for t in range(nclasses):
            start[t + 1] += start[t]
        for v in range(n):
            if cls[v] >= 0:
                verts[start[cls[v]] + fill[cls[v]]] = v
                fill[cls[v]] += 1
        for k in range(2, max_k + 1):
            for t in range(k):
                idx[t] = t
            while True:
                for v in range(n):
                    alive[v] = 0
                for t in range(k):
                    for pos in range(start[idx[t]], start[idx[t] + 1]):
                        alive[verts[pos]] = 1
                if _peel(indptr, indices, alive, deg, stack, n, k) > 0:
                    subset = tuple(idx[t] for t in range(k))
                    core = [v for v in range(n) if alive[v]]
                    return subset, core
                # next combination in lexicographic order
                t = k - 1
                while t >= 0 and idx[t] == nclasses - k + t:
                    t -= 1
                if t < 0:
                    break
                idx[t] += 1
                for pos in range(t + 1, k):
                    idx[pos] = idx[pos - 1] + 1
        return None
    finally:
        free(alive)
        free(deg)
        free(stack)
        free(idx)
        free(start)
        free(verts)
        free(fill)


def distance_two_conflict(const i64[:] indptr, const i64[:] indices, const i64[:] color):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t w, i, j, x, y
    cdef Py_ssize_t bx = -1, by = -1, bw = -1
    for w in range(n):
        for i in range(indptr[w], indptr[w + 1]):
            x = indices[i]
            if bx >= 0 and x > bx:
                break
            for j in range(i + 1, indptr[w + 1]):
                y = indices[j]
                if color[x] == color[y]:
                    if bx < 0 or (x, y, w) < (bx, by, bw):
                        bx, by, bw = x, y, w
                    break
    if bx < 0:
        return None
    return (bx, bw, by)


def degeneracy(const i64[:] indptr, const i64[:] indices):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    if n == 0:
        return 0
    cdef unsigned char* alive = <unsigned char*> malloc(n + 1)
    cdef i64* deg = <i64*> malloc((n + 1) * sizeof(i64))
    cdef i64* stack = <i64*> malloc((2 * n + 1) * sizeof(i64))
    cdef Py_ssize_t v
    cdef i64 k = 1
    try:
        # largest k whose k-core is nonempty
        while True:
            for v in range(n):
                alive[v] = 1
            if _peel(indptr, indices, alive, deg, stack, n, k) == 0:
                return k - 1
            k += 1
    finally:
        free(alive)
        free(deg)
        free(stack)
