"""Pure Python versions of the integer kernels.

These are the reference implementations; ``_ckernels.pyx`` mirrors them
line for line and is used instead when it has been compiled.
"""


def count_bounded(total, bounds):
    """Number of integer vectors 0 <= x_i <= bounds[i] with sum ``total``."""
    if total < 0:
        return 0
    ways = [0] * (total + 1)
    ways[0] = 1
    for bound in bounds:
        if bound < 0:
            return 0
        new = [0] * (total + 1)
        running = 0
        # sliding window sum over ways[s - bound .. s]
        for s in range(total + 1):
            running += ways[s]
            if s - bound - 1 >= 0:
                running -= ways[s - bound - 1]
            new[s] = running
        ways = new
    return ways[total]


def compositions(total, parts, bound=-1):
    """All weak compositions of ``total`` into ``parts`` entries, lex order.

    Entries are capped at ``bound`` when it is nonnegative.
    """
    if parts <= 0:
        return [()] if total == 0 else []
    cap = total if bound < 0 else min(bound, total)
    out = []
    current = [0] * parts

    def fill(i, remaining):
        if i == parts - 1:
            if bound < 0 or remaining <= bound:
                current[i] = remaining
                out.append(tuple(current))
            return
        for x in range(min(cap, remaining) + 1):
            current[i] = x
            fill(i + 1, remaining - x)

    fill(0, total)
    return out


def union_find(n, left, right):
    """Class labels of ``range(n)`` under the relation left[k] ~ right[k].

    Labels are renumbered 0, 1, ... in order of first appearance.
    """
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in zip(left, right):
        ra, rb = find(a), find(b)
        if ra != rb:
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb
    labels = [0] * n
    seen = {}
    for x in range(n):
        root = find(x)
        if root not in seen:
            seen[root] = len(seen)
        labels[x] = seen[root]
    return labels
