"""Shared enumerations and mutation helpers for the test suite."""
from __future__ import annotations

import itertools
from functools import lru_cache

from principal_boundary.configs import enumerate_type1, enumerate_type2
from principal_boundary.stratum import validate_stratum
from principal_boundary.twisted import ResidueLabel


def partitions(total, largest=None):
    largest = total if largest is None else largest
    if total == 0:
        yield ()
        return
    for first in range(min(total, largest), 0, -1):
        for rest in partitions(total - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def abelian_strata(max_total):
    out = []
    for total in range(2, max_total + 1, 2):
        for mu in partitions(total):
            out.append(validate_stratum("abelian", mu))
    return tuple(out)


@lru_cache(maxsize=None)
def type1_corpus(max_total):
    found = []
    for s in abelian_strata(max_total):
        for i1, i2 in itertools.permutations(range(s.n), 2):
            for p in range(1, s.genus + 1):
                found.extend(enumerate_type1(s, i1, i2, p))
    return tuple(found)


@lru_cache(maxsize=None)
def type2_corpus(max_total):
    found = []
    for s in abelian_strata(max_total):
        for size in range(1, s.n + 1):
            for designated in itertools.combinations(range(s.n), size):
                found.extend(enumerate_type2(s, designated))
    return tuple(found)


def mutations(t):
    """Every single-field change of a twisted differential, with a description."""
    for k, e in enumerate(t.edges):
        for side in (0, 1):
            for delta in (-1, 1):
                orders = list(e.orders)
                orders[side] += delta
                yield f"edge {k} order {side} {delta:+d}", t.replace_edge(k, orders=tuple(orders))
            for label in ResidueLabel:
                if label is not e.residues[side]:
                    res = list(e.residues)
                    res[side] = label
                    yield f"edge {k} residue {side} -> {label.value}", t.replace_edge(k, residues=tuple(res))
    for i, v in enumerate(t.vertices):
        for delta in (-1, 1):
            if v.genus + delta >= 0:
                yield f"vertex {i} genus {delta:+d}", t.replace_vertex(i, genus=v.genus + delta)
        for j, (idx, order) in enumerate(v.markings):
            for delta in (-1, 1):
                marks = list(v.markings)
                marks[j] = (idx, order + delta)
                yield f"vertex {i} marking {idx} {delta:+d}", t.replace_vertex(i, markings=tuple(marks))
