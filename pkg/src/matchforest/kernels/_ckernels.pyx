# cython: language_level=3
"""Compiled bitmask kernels. Same contract as ``_pykernels``."""

from libc.stdlib cimport malloc, free

ctypedef unsigned long long u64

cdef enum:
    K_MATCHING = 0
    K_BRANCHING = 1
    K_MF = 2
    K_PMF = 3
    K_MEC = 4
    K_MCF = 5


cdef int _find(int* root, int x) noexcept nogil:
    while root[x] != x:
        root[x] = root[root[x]]
        x = root[x]
    return x


cdef bint _valid(int kind, int n, int m, int* tails, int* heads, char* is_edge,
                 u64 mask, int* count, int* parent) noexcept nogil:
    cdef int p, v, x, steps, a, b
    cdef u64 reach, full
    cdef bint changed
    if kind == K_MEC:
        reach = 0
        for p in range(m):
            if (mask >> p) & 1 and is_edge[p]:
                reach |= (<u64>1 << tails[p]) | (<u64>1 << heads[p])
        changed = True
        while changed:
            changed = False
            for p in range(m):
                if (mask >> p) & 1 and not is_edge[p]:
                    if (reach >> tails[p]) & 1 and not (reach >> heads[p]) & 1:
                        reach |= <u64>1 << heads[p]
                        changed = True
        full = (<u64>1 << n) - 1 if n < 64 else <u64>0xFFFFFFFFFFFFFFFF
        return reach == full

    for v in range(n):
        count[v] = 0
        parent[v] = -1
    for p in range(m):
        if (mask >> p) & 1:
            if is_edge[p]:
                if kind == K_BRANCHING:
                    return False
                count[tails[p]] += 1
                count[heads[p]] += 1
            else:
                if kind == K_MATCHING:
                    return False
                count[heads[p]] += 1
                parent[heads[p]] = tails[p]

    if kind == K_MCF:
        for v in range(n):
            if count[v] < 1:
                return False
            parent[v] = v
        for p in range(m):
            if (mask >> p) & 1:
                a = _find(parent, tails[p])
                b = _find(parent, heads[p])
                if a == b:
                    return False
                parent[a] = b
        return True

    for v in range(n):
        if count[v] > 1:
            return False
        if kind == K_PMF and count[v] != 1:
            return False
    if kind == K_MATCHING:
        return True
    for v in range(n):
        x = v
        steps = 0
        while parent[x] != -1:
            x = parent[x]
            steps += 1
            if steps > n:
                return False
    return True


def structure_table(int kind, int n, tails, heads, is_edge):
    cdef int m = len(tails)
    cdef int p
    cdef u64 mask, size
    if m > 30:
        raise ValueError("too many elements for an exhaustive table")
    size = <u64>1 << m
    out = bytearray(size)
    cdef unsigned char[:] view = out
    cdef int* t = <int*>malloc(sizeof(int) * (m + 1))
    cdef int* h = <int*>malloc(sizeof(int) * (m + 1))
    cdef char* e = <char*>malloc(sizeof(char) * (m + 1))
    cdef int* count = <int*>malloc(sizeof(int) * (n + 1))
    cdef int* parent = <int*>malloc(sizeof(int) * (n + 1))
    try:
        for p in range(m):
            t[p] = tails[p]
            h[p] = heads[p]
            e[p] = 1 if is_edge[p] else 0
        with nogil:
            for mask in range(size):
                if _valid(kind, n, m, t, h, e, mask, count, parent):
                    view[mask] = 1
    finally:
        free(t)
        free(h)
        free(e)
        free(count)
        free(parent)
    return out


cdef class _Search:
    cdef const unsigned char[:] table
    cdef int k
    cdef bint exact
    cdef Py_ssize_t limit
    cdef u64 parts[64]
    cdef list results

    def __init__(self, table, int k, bint exact, Py_ssize_t limit):
        self.table = table
        self.k = k
        self.exact = exact
        self.limit = limit
        self.results = []

    cdef void _record(self, int depth):
        self.results.append(tuple([self.parts[i] for i in range(depth)]))

    cdef bint _rec(self, u64 rest, int depth):
        # returns True when the result limit is reached
        cdef u64 s
        if self.exact and depth == self.k - 1:
            if self.table[rest]:
                self.parts[depth] = rest
                self._record(depth + 1)
                return self.limit > 0 and len(self.results) >= self.limit
            return False
        if depth == self.k:
            self._record(depth)
            return self.limit > 0 and len(self.results) >= self.limit
        s = rest
        while True:
            if self.table[s]:
                self.parts[depth] = s
                if self._rec(rest & ~s, depth + 1):
                    return True
            if s == 0:
                break
            s = (s - 1) & rest
        return False


def search_partitions(table, int m, int k, bint exact=True, Py_ssize_t limit=0):
    if k < 1:
        return []
    if k > 64:
        raise ValueError("k too large")
    cdef _Search srch = _Search(table, k, exact, limit)
    srch._rec((<u64>1 << m) - 1, 0)
    return srch.results
