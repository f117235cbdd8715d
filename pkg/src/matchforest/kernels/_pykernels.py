"""Pure-Python bitmask kernels. Reference semantics for ``_ckernels.pyx``.

Elements are global positions ``0..m-1``; ``is_edge[p]`` marks edges, whose
two endpoints are ``tails[p]`` and ``heads[p]``. A subset is an int mask.
"""

MATCHING, BRANCHING, MF, PMF, MEC, MCF = range(6)


def _valid(kind, n, tails, heads, is_edge, mask):
    m = len(tails)
    if kind == MEC:
        reach = 0
        arcs = []
        for p in range(m):
            if mask >> p & 1:
                if is_edge[p]:
                    reach |= (1 << tails[p]) | (1 << heads[p])
                else:
                    arcs.append(p)
        changed = True
        while changed:
            changed = False
            for p in arcs:
                if reach >> tails[p] & 1 and not reach >> heads[p] & 1:
                    reach |= 1 << heads[p]
                    changed = True
        return reach == (1 << n) - 1

    count = [0] * n
    parent = [-1] * n
    for p in range(m):
        if mask >> p & 1:
            if is_edge[p]:
                if kind == BRANCHING:
                    return False
                count[tails[p]] += 1
                count[heads[p]] += 1
            else:
                if kind == MATCHING:
                    return False
                count[heads[p]] += 1
                parent[heads[p]] = tails[p]

    if kind == MCF:
        if min(count, default=1) < 1:
            return False
        root = list(range(n))

        def find(x):
            while root[x] != x:
                root[x] = root[root[x]]
                x = root[x]
            return x

        for p in range(m):
            if mask >> p & 1:
                a, b = find(tails[p]), find(heads[p])
                if a == b:
                    return False
                root[a] = b
        return True

    if max(count, default=0) > 1:
        return False
    if kind == PMF and min(count, default=1) != 1:
        return False
    if kind == MATCHING:
        return True
    # in-degree <= 1 here, so a cycle shows up as a parent chain longer than n
    for v in range(n):
        x = v
        steps = 0
        while parent[x] != -1:
            x = parent[x]
            steps += 1
            if steps > n:
                return False
    return True


def structure_table(kind, n, tails, heads, is_edge):
    """bytearray of length ``2**m``; entry ``mask`` is 1 iff that subset is valid."""
    m = len(tails)
    out = bytearray(1 << m)
    for mask in range(1 << m):
        if _valid(kind, n, tails, heads, is_edge, mask):
            out[mask] = 1
    return out


def search_partitions(table, m, k, exact=True, limit=0):
    """Ordered k-tuples of pairwise disjoint valid masks.

    With ``exact`` the parts must cover all ``m`` elements (a partition);
    otherwise any disjoint family (a packing). Submasks are tried from the
    largest down. ``limit`` > 0 stops after that many results.
    """
    full = (1 << m) - 1
    results = []
    parts = []

    def rec(rest, depth):
        if exact and depth == k - 1:
            if table[rest]:
                results.append(tuple(parts) + (rest,))
            return
        if depth == k:
            results.append(tuple(parts))
            return
        s = rest
        while True:
            if table[s]:
                parts.append(s)
                rec(rest & ~s, depth + 1)
                parts.pop()
                if limit and len(results) >= limit:
                    return
            if s == 0:
                break
            s = (s - 1) & rest

    if k >= 1:
        rec(full, 0)
    return results
