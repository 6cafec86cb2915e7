import random

import pytest

from principal_boundary.configs import enumerate_type1
from principal_boundary.errors import ConfigError
from principal_boundary.stratum import Kind, validate_stratum
from principal_boundary.twisted import (FREE, MINUS, PLUS, ZERO, Q22_CASES, Edge, TwistedDiff,
                                        Vertex, build_q22_boundary, build_type1, build_type2,
                                        check_genus13, genus13_diff, validate)

from corpus import mutations, type1_corpus, type2_corpus
from test_configs import mixed_cycle, alternating_tori


def degree_ok(t):
    unit = 2 if t.kind is Kind.ABELIAN else 4
    return all(sum(t.vertex_orders(i)) == unit * v.genus - unit for i, v in enumerate(t.vertices))


def test_alternating_tori_valid_and_shaped():
    t = build_type2(alternating_tori())
    assert validate(t).valid
    for i, v in enumerate(t.vertices):
        if v.genus == 0:
            assert sorted(t.vertex_orders(i)) == [-2, -1, 1]


def test_alternating_tori_broken_edge_order():
    t = build_type2(alternating_tori())
    k = next(k for k, e in enumerate(t.edges) if e.orders == (-1, -1))
    report = validate(t.replace_edge(k, orders=(-1, -2)))
    assert not report.valid and "1" in report.conditions()


def test_simple_poles_need_opposite_residues():
    t = build_type2(alternating_tori())
    k = next(k for k, e in enumerate(t.edges) if e.orders == (-1, -1))
    report = validate(t.replace_edge(k, residues=(PLUS, PLUS)))
    assert "2" in report.conditions()


def test_mixed_cycle_graph():
    c = mixed_cycle()
    t = build_type2(c)
    assert validate(t).valid
    assert len(t.vertices) == 8
    assert sum(1 for v in t.vertices if v.genus == 0) == len(c.newborn) == 4


def test_h11_type1_star():
    (c,) = enumerate_type1(validate_stratum("abelian", [1, 1]), 0, 1, 2)
    t = build_type1(c)
    assert validate(t).valid
    assert sorted(t.vertex_orders(0)) == [-2, -2, 1, 1]
    assert [t.vertex_orders(i) for i in (1, 2)] == [[0], [0]]
    assert all(e.residues == (ZERO, ZERO) for e in t.edges)


def test_h22_type1_single_tail():
    (c,) = enumerate_type1(validate_stratum("abelian", [2, 2]), 0, 1, 1)
    t = build_type1(c)
    assert sorted(t.vertex_orders(0)) == [-6, 2, 2]
    assert t.vertices[1].genus == 3 and t.vertex_orders(1) == [4]


def test_marked_point_star():
    # p = 1, m1 = m2 = 0: R carries (0, 0, -2) and the tail node order 0
    t = TwistedDiff((Vertex(0, ((0, 0), (1, 0)), "R"), Vertex(1, (), "C1")),
                    (Edge((0, 1), (-2, 0), (ZERO, ZERO)),), Kind.ABELIAN, (0, 0))
    assert validate(t).valid


def test_type1_block_single_fig8():
    from principal_boundary.configs import CYL, TypeIIConfig, fig8
    c = TypeIIConfig((2,), (CYL, fig8(0, 0, 1)), (0,))
    t = build_type2(c)
    r = next(i for i, v in enumerate(t.vertices) if v.genus == 0)
    assert sorted(t.vertex_orders(r)) == [-2, -1, -1, 2]
    assert validate(t).valid


def test_all_builds_validate_with_exact_degrees():
    for c in type1_corpus(8):
        t = build_type1(c)
        assert validate(t).valid, c
        assert degree_ok(t)
    for c in type2_corpus(6):
        t = build_type2(c)
        assert validate(t).valid, c
        assert degree_ok(t)
        assert sum(1 for v in t.vertices if v.genus == 0) == len(set(c.newborn))


def test_every_single_mutation_is_rejected_small():
    for c in type1_corpus(4) + type2_corpus(4):
        t = build_type1(c) if hasattr(c, "angles") else build_type2(c)
        for what, m in mutations(t):
            assert not validate(m).valid, (c, what)


def test_random_mutations_rejected():
    rng = random.Random(99)
    pool = [build_type1(c) for c in type1_corpus(8)] + [build_type2(c) for c in type2_corpus(6)]
    for _ in range(500):
        t = rng.choice(pool)
        what, m = rng.choice(list(mutations(t)))
        assert not validate(m).valid, what


def test_json_round_trip():
    for c in type2_corpus(4):
        t = build_type2(c)
        assert TwistedDiff.from_json(t.to_json()) == t
    with pytest.raises(ConfigError):
        TwistedDiff.from_json({"vertices": [{"genus": "x"}], "edges": []})


def test_disconnected_graph_reported():
    t = TwistedDiff((Vertex(1, ((0, 0),)), Vertex(1, ())), (), Kind.ABELIAN, (0,))
    assert "graph" in validate(t).conditions()


def test_parallel_edges_must_agree():
    t = TwistedDiff((Vertex(0, ((0, 4),)), Vertex(2, ())),
                    (Edge((0, 1), (-3, 1), (ZERO, ZERO)), Edge((0, 1), (1, -3), (ZERO, ZERO))),
                    Kind.ABELIAN, (4,))
    assert "3" in validate(t).conditions()


def test_separating_node_needs_zero_residue():
    (c,) = enumerate_type1(validate_stratum("abelian", [2, 2]), 0, 1, 1)
    t = build_type1(c).replace_edge(0, residues=(PLUS, ZERO))
    assert validate(t).conditions() & {"GRC", "residue"}


def test_cycle_signs_alternate():
    t = build_type2(alternating_tori())
    k = next(k for k, e in enumerate(t.edges) if e.orders == (-1, -1))
    flipped = t.replace_edge(k, residues=tuple(reversed(t.edges[k].residues)))
    assert "alternation" in validate(flipped).conditions()


# -- quadratic boundary graphs ----------------------------------------------

@pytest.mark.parametrize("case", Q22_CASES)
def test_q22_valid(case):
    t = build_q22_boundary(case)
    assert t.kind is Kind.QUADRATIC
    assert validate(t).valid
    assert degree_ok(t)


def test_q22_edge_shapes():
    assert sorted(e.orders for e in build_q22_boundary("fig22_left").edges) == [(-1, -3)] * 2
    assert [e.orders for e in build_q22_boundary("fig22_middle").edges] == [(-2, -2)] * 3
    assert sorted(e.orders for e in build_q22_boundary("fig22_right").edges) == [(-1, -3)] * 4


def test_q22_vertex_signatures():
    left = build_q22_boundary("fig22_left")
    assert sorted(left.vertex_orders(0)) == [-1, -1, 2]
    assert sorted(left.vertex_orders(1)) == [-3, -3, 2]
    mid = build_q22_boundary("fig22_middle")
    assert all(sorted(mid.vertex_orders(i)) == [-2, -2, -2, 2] for i in (0, 1))
    right = build_q22_boundary("fig22_right")
    assert sorted(right.vertex_orders(0)) == [-1] * 4
    assert all(sorted(right.vertex_orders(i)) == [-3, -3, 2] for i in (1, 2))


def test_q22_unknown_case():
    with pytest.raises(ConfigError):
        build_q22_boundary("fig22_top")


def test_q22_middle_widths_must_match():
    t = build_q22_boundary("fig22_middle").replace_edge(0, residues=(PLUS, MINUS))
    assert "residue" in validate(t).conditions()


@pytest.mark.parametrize("case", Q22_CASES)
def test_q22_order_mutations(case):
    t = build_q22_boundary(case)
    for what, m in mutations(t):
        if "residue" not in what:
            assert not validate(m).valid, what


def test_genus13_valid():
    report = check_genus13()
    assert report.valid, report.to_json()
    t = genus13_diff()
    assert sorted(t.vertex_orders(0)) == sorted((30, -2, -2, -4, -4, -6, -16))
    assert sorted(t.vertex_orders(1)) == sorted((8, -2, -2, -4, -4))
    assert sum(v.genus for v in t.vertices) + t.betti() == 13


def test_genus13_bad_r2_degree():
    report = check_genus13({"R2": (8, -2, -2, -4, -2)})
    assert not report.valid and "degree" in report.conditions()


def test_genus13_r1_odd_pole():
    report = check_genus13({"R1": (30, -2, -2, -3, -4, -6, -16)})
    assert not report.valid
    assert report.conditions() & {"1", "degree"}


def test_genus13_wrong_length():
    assert not check_genus13({"R1": (30, -2)}).valid


def test_genus13_every_order_mutation():
    base = genus13_diff()
    for name in ("R1", "R2", "S1", "S2", "S3", "S4", "S5"):
        from principal_boundary.twisted import GENUS13_SIGNATURES
        sig = list(GENUS13_SIGNATURES[name])
        for j in range(len(sig)):
            for delta in (-1, 1):
                changed = sig[:j] + [sig[j] + delta] + sig[j + 1:]
                assert not check_genus13({name: changed}).valid, (name, j, delta)
    for what, m in mutations(base):
        if "residue" not in what:
            assert not validate(m).valid, what
