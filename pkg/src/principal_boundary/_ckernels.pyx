# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the integer kernels in ``_pykernels``."""
from libc.stdlib cimport malloc, free


def count_bounded(long total, bounds):
    cdef long s, bound, running, i
    cdef object[:] dummy
    if total < 0:
        return 0
    # Python ints keep counts exact; the loop bookkeeping is in C.
    ways = [0] * (total + 1)
    ways[0] = 1
    for b in bounds:
        bound = b
        if bound < 0:
            return 0
        new = [0] * (total + 1)
        running = 0
        acc = 0
        for s in range(total + 1):
            acc += ways[s]
            if s - bound - 1 >= 0:
                acc -= ways[s - bound - 1]
            new[s] = acc
        ways = new
    return ways[total]


cdef void _fill(long *current, long parts, long i, long remaining, long cap,
                long bound, list out):
    cdef long x, top, k
    if i == parts - 1:
        if bound < 0 or remaining <= bound:
            current[i] = remaining
            out.append(tuple([current[k] for k in range(parts)]))
        return
    top = remaining if remaining < cap else cap
    for x in range(top + 1):
        current[i] = x
        _fill(current, parts, i + 1, remaining - x, cap, bound, out)


def compositions(long total, long parts, long bound=-1):
    cdef long cap
    cdef long *current
    if parts <= 0:
        return [()] if total == 0 else []
    cap = total if bound < 0 else (bound if bound < total else total)
    out = []
    current = <long *> malloc(parts * sizeof(long))
    if current == NULL:
        raise MemoryError()
    try:
        _fill(current, parts, 0, total, cap, bound, out)
    finally:
        free(current)
    return out


cdef long _find(long *parent, long x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def union_find(long n, left, right):
    cdef long *parent
    cdef long *seen
    cdef long a, b, ra, rb, x, root, count
    parent = <long *> malloc((n if n > 0 else 1) * sizeof(long))
    seen = <long *> malloc((n if n > 0 else 1) * sizeof(long))
    if parent == NULL or seen == NULL:
        free(parent)
        free(seen)
        raise MemoryError()
    try:
        for x in range(n):
            parent[x] = x
            seen[x] = -1
        for a, b in zip(left, right):
            ra = _find(parent, a)
            rb = _find(parent, b)
            if ra != rb:
                if ra < rb:
                    parent[rb] = ra
                else:
                    parent[ra] = rb
        labels = [0] * n
        count = 0
        for x in range(n):
            root = _find(parent, x)
            if seen[root] < 0:
                seen[root] = count
                count += 1
            labels[x] = seen[root]
        return labels
    finally:
        free(parent)
        free(seen)
