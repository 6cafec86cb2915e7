import itertools
import xml.etree.ElementTree as ET

import pytest

from principal_boundary import _kernels
from principal_boundary.errors import ConfigError, InadmissibleError, NotTypeIError
from principal_boundary.flatsurf import (DomainComplex, analyze, build_type1_surface,
                                         build_type2_surface, reconstruct_config)
from principal_boundary.svg import emit_svg


def angle_data(max_total):
    """All (m1, m2, angles) with m1 + m2 <= max_total, straight from the angle sums."""
    for m1 in range(max_total + 1):
        for m2 in range(max_total + 1 - m1):
            for p in range(1, min(m1, m2) + 2):
                for a1 in _kernels.compositions(m1 + 1 - p, p, -1):
                    for a2 in _kernels.compositions(m2 + 1 - p, p, -1):
                        yield m1, m2, tuple(zip(a1, a2))


def counts(d):
    firsts = sum(1 for x in d.domains if x.type == "first")
    seconds = sum(1 for x in d.domains if x.type == "second")
    cylinders = sum(1 for x in d.domains if x.type == "cylinder")
    return firsts, seconds, cylinders


def test_two_saddles_two_double_poles():
    d = build_type1_surface([(0, 0), (0, 0)])
    assert counts(d) == (0, 4, 0)
    r = analyze(d)
    assert sorted(p.order for p in r.poles) == [2, 2]
    assert all(len(p.domains) == 2 and p.residue_zero for p in r.poles)
    assert r.genus == 0 and not r.issues
    # total angle 2*pi*(m+1) with m = 1 at both ends of the two saddles
    assert r.angle("s1") == r.angle("s2") == 4


def test_single_saddle_with_first_type_planes():
    d = build_type1_surface([(1, 1)])
    assert counts(d) == (4, 2, 0)
    r = analyze(d)
    assert [p.order for p in r.poles] == [4]
    assert len(r.poles[0].domains) == 6


def test_minimal_case():
    d = build_type1_surface([(0, 0)])
    assert counts(d) == (0, 2, 0)
    assert analyze(d).pole_orders() == [2]


@pytest.mark.parametrize("angles", [[], [(0, -1)], [(1,)]])
def test_inadmissible_type1(angles):
    with pytest.raises(InadmissibleError):
        build_type1_surface(angles)


def test_type2_single_figure_eight():
    d = build_type2_surface([0], [0])
    assert counts(d) == (0, 2, 2)
    r = analyze(d)
    assert sorted((p.order, p.kind) for p in r.poles) == [(1, "cylinder"), (1, "cylinder"),
                                                         (2, "half_planes")]
    assert not r.issues and r.genus == 0
    assert [p.residue_zero for p in r.poles if p.kind == "cylinder"] == [False, False]
    assert r.angle("s") == 2 * (2 + 1)


def test_type2_decorated():
    r = analyze(build_type2_surface([1], [1]))
    (big,) = [p for p in r.poles if p.kind == "half_planes"]
    assert big.order == 4 and len(big.domains) == 6


def test_type2_needs_a_surface():
    with pytest.raises(InadmissibleError):
        build_type2_surface([], [])
    with pytest.raises(InadmissibleError):
        build_type2_surface([1], [])


def test_type2_census():
    for k in range(1, 4):
        for c1 in itertools.product(range(3), repeat=k):
            for c2 in itertools.product(range(3), repeat=k):
                if any((a + b) % 2 for a, b in zip(c1, c2)):
                    continue
                r = analyze(build_type2_surface(c1, c2))
                assert not r.issues and r.genus == 0
                newborn = sum(a + b + 2 for a, b in zip(c1, c2))
                assert r.angle("s") == 2 * (newborn + 1)
                planes = sorted(p.order for p in r.poles if p.kind == "half_planes")
                assert planes == sorted(a + b + 2 for a, b in zip(c1, c2))


def test_census_up_to_eight():
    seen = 0
    for m1, m2, angles in angle_data(8):
        d = build_type1_surface(angles)
        firsts, seconds, _ = counts(d)
        assert firsts + seconds == 2 * sum(a + b + 1 for a, b in angles)
        r = analyze(d)
        assert not r.issues, (angles, r.issues)
        assert r.angle("s1") == 2 * (m1 + 1) and r.angle("s2") == 2 * (m2 + 1)
        # the pole between saddles i and i+1 sits among S_i- and its planes
        for i, (a, b) in enumerate(angles, start=1):
            (pole,) = [q for q in r.poles if f"S{i}-" in q.domains]
            assert pole.order == a + b + 2
        assert len(r.poles) == len(angles)
        assert all(2 * (p.order - 1) == len(p.domains) for p in r.poles)
        assert r.genus == 0
        assert reconstruct_config(d) == angles
        seen += 1
    assert seen > 500


def test_reconstruct_rejects_cylinders():
    with pytest.raises(NotTypeIError):
        reconstruct_config(build_type2_surface([0], [0]))


def test_reconstruct_after_relabeling():
    d = build_type1_surface([(2, 0), (0, 1)])
    rename = {x.name: f"D{i}" for i, x in enumerate(reversed(d.domains))}
    domains = tuple(type(x)(rename[x.name], x.kind, x.type,
                            tuple((lab.replace(x.name, rename[x.name], 1), role)
                                  for lab, role in x.edges), x.corners)
                    for x in reversed(d.domains))
    relabel = {}
    for x in d.domains:
        for lab, _ in x.edges:
            relabel[lab] = lab.replace(x.name, rename[x.name], 1)
    pairs = tuple((relabel[a], relabel[b]) for a, b in d.identifications)
    moved = DomainComplex(domains, pairs, d.basepoints)
    got = reconstruct_config(moved)
    assert got in (((2, 0), (0, 1)), ((0, 1), (2, 0)))


def swapped(d, i, j, cross):
    pairs = list(d.identifications)
    (a, b), (c, e) = pairs[i], pairs[j]
    pairs[i], pairs[j] = ((a, e), (c, b)) if cross else ((a, c), (b, e))
    return DomainComplex(d.domains, tuple(pairs), d.basepoints)


@pytest.mark.parametrize("angles", [[(0, 0), (0, 0)], [(1, 0)], [(1, 1)], [(2, 1), (0, 3)]])
def test_every_regluing_is_flagged(angles):
    d = build_type1_surface(angles)
    base = analyze(d)
    n = len(d.identifications)
    for i, j in itertools.combinations(range(n), 2):
        for cross in (True, False):
            r = analyze(swapped(d, i, j, cross))
            assert r.issues or r.cone_angles != base.cone_angles or r.genus != 0


def test_half_line_swap_changes_geometry():
    d = build_type1_surface([(1, 1)])
    lefts = [k for k, (a, _) in enumerate(d.identifications) if a.endswith(".L")]
    r = analyze(swapped(d, lefts[0], lefts[1], True))
    assert r.issues


def test_unmatched_edge_and_empty_complex():
    d = build_type1_surface([(0, 0)])
    broken = DomainComplex(d.domains, d.identifications[1:], d.basepoints)
    assert any("not glued" in msg for msg in analyze(broken).issues)
    with pytest.raises(ConfigError):
        analyze(DomainComplex((), (), ()))


def test_json_round_trip():
    for angles in ([(0, 0), (1, 2)], [(3, 0)]):
        d = build_type1_surface(angles)
        assert DomainComplex.from_json(d.to_json()) == d
    with pytest.raises(ConfigError):
        DomainComplex.from_json({"domains": [{"name": "x"}]})


def test_build_is_deterministic():
    assert build_type1_surface([(1, 2), (0, 0)]) == build_type1_surface([(1, 2), (0, 0)])


# -- drawings ---------------------------------------------------------------

SVG = "{http://www.w3.org/2000/svg}"


def test_two_saddle_drawing_has_four_boxes():
    root = ET.fromstring(emit_svg(build_type1_surface([(0, 0), (0, 0)])))
    assert root.tag == SVG + "svg" and root.get("version") == "1.1"
    boxes = [g for g in root.findall(SVG + "g") if g.get("id") != "legend"]
    assert len(boxes) == 4
    assert all(g.find(SVG + "rect") is not None for g in boxes)
    legend = root.find(f"{SVG}g[@id='legend']")
    assert len(legend.findall(SVG + "text")) == 6


def test_every_complex_draws_well_formed():
    for angles in ([(0, 0)], [(2, 1), (0, 0)], [(1, 1), (1, 1), (0, 2)]):
        d = build_type1_surface(angles)
        text = emit_svg(d)
        root = ET.fromstring(text)
        assert len([g for g in root.findall(SVG + "g") if g.get("id") != "legend"]) == len(d.domains)
        assert emit_svg(d) == text
    ET.fromstring(emit_svg(build_type2_surface([1, 0], [1, 2])))


def test_empty_drawing_is_refused():
    with pytest.raises(ConfigError):
        emit_svg(DomainComplex((), (), ()))
