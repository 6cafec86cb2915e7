import itertools
import random

import pytest

from principal_boundary.configs import (CYL, TypeIConfig, TypeIIConfig, block_order, config_graph,
                                        count_Z, enumerate_type1, enumerate_type2, fig8, holes,
                                        newborn_order)
from principal_boundary.errors import (ArityMismatchError, ConfigError, DegreeMismatchError,
                                       OrderRangeError)
from principal_boundary.stratum import validate_stratum

from corpus import abelian_strata, type1_corpus, type2_corpus


def brute_count_Z(m1, m2, poles):
    """Tuples in the box 0 <= a'_i <= n_i - 2 meeting both angle sums."""
    hits = 0
    for a1 in itertools.product(*(range(n - 1) for n in poles)):
        a2 = [n - 2 - x for n, x in zip(poles, a1)]
        if sum(x + 1 for x in a1) == m1 + 1 and sum(x + 1 for x in a2) == m2 + 1:
            hits += 1
    return hits


# -- type I -----------------------------------------------------------------

def test_h11_two_saddles():
    s = validate_stratum("abelian", [1, 1])
    (c,) = enumerate_type1(s, 0, 1, 2)
    assert c.angles == ((0, 0), (0, 0)) and c.genera == (1, 1) and c.parts == ((), ())


def test_h13_three_saddles_is_empty():
    assert enumerate_type1(validate_stratum("abelian", [1, 3]), 0, 1, 3) == []


def test_h22_one_saddle():
    (c,) = enumerate_type1(validate_stratum("abelian", [2, 2]), 0, 1, 1)
    assert c.angles == ((2, 2),) and c.genera == (3,)


def test_h4_has_no_type1():
    # a single zero cannot be joined to a different zero
    with pytest.raises(ConfigError):
        enumerate_type1(validate_stratum("abelian", [4]), 0, 1, 1)


def test_type1_invariants_over_corpus():
    corpus = type1_corpus(8)
    assert len(corpus) > 1000
    for c in corpus:
        c.check()
        g = (sum(c.mu) + 2) // 2
        assert sum(a + 1 for a, _ in c.angles) == c.m1 + 1
        assert sum(b + 1 for _, b in c.angles) == c.m2 + 1
        assert sum(c.genera) == g
        for (a, b), part, gi in zip(c.angles, c.parts, c.genera):
            assert 2 * gi - 2 == sum(c.mu[j] for j in part) + a + b


def test_type1_enumeration_is_strictly_increasing():
    for s in abelian_strata(8):
        for i1, i2 in itertools.permutations(range(s.n), 2):
            for p in range(1, s.genus + 1):
                keys = [c.key() for c in enumerate_type1(s, i1, i2, p)]
                assert keys == sorted(set(keys))


def brute_type1(s, i1, i2, p):
    """Independent enumeration: all angle pairs, all owner maps, genera forced."""
    m1, m2 = s.orders[i1], s.orders[i2]
    rest = [j for j in range(s.n) if j not in (i1, i2)]
    found = set()
    for a1 in itertools.product(range(m1 + 1), repeat=p):
        if sum(x + 1 for x in a1) != m1 + 1:
            continue
        for a2 in itertools.product(range(m2 + 1), repeat=p):
            if sum(x + 1 for x in a2) != m2 + 1:
                continue
            for owners in itertools.product(range(p), repeat=len(rest)):
                parts = [tuple(j for j, o in zip(rest, owners) if o == i) for i in range(p)]
                degs = [sum(s.orders[j] for j in parts[i]) + a1[i] + a2[i] for i in range(p)]
                if any(d % 2 for d in degs):
                    continue
                genera = tuple(d // 2 + 1 for d in degs)
                if sum(genera) == s.genus:
                    found.add((tuple(zip(a1, a2)), tuple(parts), genera))
    return found


def test_type1_matches_brute_force():
    for s in abelian_strata(7):
        for i1, i2 in itertools.permutations(range(s.n), 2):
            for p in range(1, s.genus + 1):
                got = {c.key() for c in enumerate_type1(s, i1, i2, p)}
                assert got == brute_type1(s, i1, i2, p), (s, i1, i2, p)


def test_type1_json_round_trip():
    for c in type1_corpus(6):
        assert TypeIConfig.from_json(c.to_json()) == c


def test_type1_from_json_rejects_inconsistent_m1():
    data = {"mu": [1, 1], "angles": [[0, 0], [0, 0]], "m1": 2}
    with pytest.raises(ConfigError):
        TypeIConfig.from_json(data)


# -- count_Z ----------------------------------------------------------------

@pytest.mark.parametrize("m1,m2,poles,expected", [
    (1, 1, [2, 2], 1), (1, 3, [2, 2, 2], 0), (2, 2, [3, 3], 2)])
def test_count_Z_examples(m1, m2, poles, expected):
    assert count_Z(m1, m2, poles) == expected


def test_count_Z_oracle():
    rng = random.Random(2024)
    checked = 0
    while checked < 300:
        poles = [rng.randint(2, 6) for _ in range(rng.randint(2, 4))]
        total = sum(poles) - 2
        m1 = rng.randint(1, total - 1)
        assert count_Z(m1, total - m1, poles) == brute_count_Z(m1, total - m1, poles)
        checked += 1


def test_count_Z_errors():
    with pytest.raises(DegreeMismatchError):
        count_Z(1, 1, [2, 3])
    with pytest.raises(OrderRangeError):
        count_Z(0, 2, [2, 2])
    with pytest.raises(OrderRangeError):
        count_Z(1, 1, [1, 3])


# -- newborn orders ---------------------------------------------------------

@pytest.mark.parametrize("pattern,c,a,b,expected", [
    ("i", [0], None, None, 2), ("ii", [], None, 0, 1), ("iii", [2], 1, 0, 7),
    ("i", [1, 3], None, None, 8)])
def test_newborn_order(pattern, c, a, b, expected):
    assert newborn_order(pattern, c, a, b) == expected


@pytest.mark.parametrize("pattern,c,a,b", [
    ("i", [], None, None), ("i", [0], 1, None), ("ii", [0], None, None),
    ("ii", [0], 1, 1), ("iii", [0], None, 1), ("iv", [0], None, None)])
def test_newborn_arity(pattern, c, a, b):
    with pytest.raises(ArityMismatchError):
        newborn_order(pattern, c, a, b)


# -- type II ----------------------------------------------------------------

def mixed_cycle():
    """Two pair-of-holes surfaces, two cylinders and two figure-eights."""
    cycle = (holes(0, 0, 1), holes(0, 0, 1), CYL, fig8(0, 0, 1), CYL, fig8(0, 0, 1))
    c = TypeIIConfig((2, 1, 2, 3), cycle, (0, 1, 2, 3))
    c.check()
    return c


def alternating_tori():
    """Two tori and two cylinders alternating; four simple newborn zeros."""
    cycle = (holes(0, 0, 1), CYL, holes(0, 0, 1), CYL)
    c = TypeIIConfig((1, 1, 1, 1), cycle, (0, 1, 2, 3))
    c.check()
    return c


def test_mixed_cycle_block_patterns():
    assert mixed_cycle().block_patterns() == ["iii", "ii", "i", "ii"]


def test_alternating_tori_graph_has_six_vertices():
    g = config_graph(alternating_tori())
    assert len(g.vertices) == 6 and g.betti == 1
    assert sorted(v.genus for v in g.vertices) == [0, 0, 0, 0, 1, 1]


def test_alternating_tori_is_enumerated():
    s = validate_stratum("abelian", [1, 1, 1, 1])
    found = enumerate_type2(s, [0, 1, 2, 3])
    assert alternating_tori().canonical() in found


def test_h2_single_cylinder_and_torus():
    found = enumerate_type2(validate_stratum("abelian", [2]), [0])
    cycles = [c.cycle for c in found]
    assert (CYL, fig8(0, 0, 1)) in cycles
    assert all(len(c.cycle) <= 4 for c in found)


def test_adjacent_cylinders_rejected():
    c = TypeIIConfig((2,), (CYL, fig8(0, 0, 1), CYL), (0,))
    with pytest.raises(ConfigError):
        c.check()


def test_simple_zero_needs_holes():
    # pattern (i) alone gives order >= 2
    for c in enumerate_type2(validate_stratum("abelian", [1, 1]), [0]):
        assert any(getattr(e, "is_holes", False) for e in c.cycle)


def test_type2_invariants_over_corpus():
    corpus = type2_corpus(6)
    assert len(corpus) > 200
    for c in corpus:
        c.check()
        g = (sum(c.mu) + 2) // 2
        assert sum(s.genus for s in c.surfaces()) == g - 1
        orders = sorted(block_order(c.cycle, b) for b in c.blocks())
        assert orders == sorted(c.mu[j] for j in c.newborn)
        assert c.canonical() == c
        for r in range(len(c.cycle)):
            assert c.rotated(r).canonical() == c


def test_type2_enumeration_is_duplicate_free():
    for s in abelian_strata(6):
        for size in range(1, s.n + 1):
            for designated in itertools.combinations(range(s.n), size):
                keys = [c.key() for c in enumerate_type2(s, designated)]
                assert len(keys) == len(set(keys))


def test_type2_json_round_trip():
    for c in type2_corpus(6):
        assert TypeIIConfig.from_json(c.to_json()) == c


def test_graph_shapes():
    s = validate_stratum("abelian", [1, 1])
    (c,) = enumerate_type1(s, 0, 1, 2)
    g = config_graph(c)
    assert len(g.vertices) == 3 and g.betti == 0
    assert all(0 in e.ends for e in g.edges)
    (c1,) = enumerate_type1(validate_stratum("abelian", [2, 2]), 0, 1, 1)
    assert len(config_graph(c1).edges) == 1
    for c in type2_corpus(6):
        assert config_graph(c).betti == 1
