"""Half-plane decompositions of meromorphic differentials on P^1.

Cutting a differential along the horizontal rays through its zeros leaves
half-planes and half-infinite cylinders.  A half-plane of the first type has
one zero on its boundary with a ray to each side; one of the second type has
a ray into a zero, a saddle connection, and a ray out of the other end.

The complexes here are purely combinatorial: domain boundaries are lists of
edges and gluings are a perfect matching on edges.  Domains are numbered in
the order the construction visits them.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Sequence

from . import _kernels
from .errors import ConfigError, InadmissibleError, NotTypeIError

ROLES = ("half_line_left", "saddle", "half_line_right", "circle")
# Gluings are translations: rays keep their direction and an upper plane
# meets a lower one.  A cylinder circle closes up along a saddle.
COMPATIBLE = {
    ("half_line_left", "half_line_left"), ("half_line_right", "half_line_right"),
    ("saddle", "saddle"), ("saddle", "circle"), ("circle", "saddle"),
}


@dataclass(frozen=True)
class Domain:
    name: str
    kind: str          # upper, lower, cylinder
    type: str          # first, second, cylinder
    edges: tuple[tuple[str, str], ...]  # (label, role) from left to right
    corners: tuple[str, ...]            # basepoint between consecutive edges

    def to_json(self) -> dict:
        return {"name": self.name, "kind": self.kind, "type": self.type,
                "edges": [list(e) for e in self.edges], "corners": list(self.corners)}


@dataclass(frozen=True)
class DomainComplex:
    domains: tuple[Domain, ...]
    identifications: tuple[tuple[str, str], ...]  # pairs of edge labels
    basepoints: tuple[str, ...]

    def edge_owner(self) -> dict[str, tuple[int, int]]:
        out = {}
        for d, dom in enumerate(self.domains):
            for e, (label, _) in enumerate(dom.edges):
                if label in out:
                    raise ConfigError(f"edge label {label!r} used twice")
                out[label] = (d, e)
        return out

    def partner(self) -> dict[str, str]:
        out = {}
        for a, b in self.identifications:
            out[a] = b
            out[b] = a
        return out

    def index(self, name: str) -> int:
        for i, d in enumerate(self.domains):
            if d.name == name:
                return i
        raise KeyError(name)

    def to_json(self) -> dict:
        return {"domains": [d.to_json() for d in self.domains],
                "identifications": [list(p) for p in self.identifications],
                "basepoints": list(self.basepoints)}

    @classmethod
    def from_json(cls, data: dict) -> "DomainComplex":
        try:
            domains = tuple(Domain(d["name"], d["kind"], d["type"],
                                   tuple((e[0], e[1]) for e in d["edges"]),
                                   tuple(d.get("corners", ()))) for d in data["domains"])
            pairs = tuple((a, b) for a, b in data["identifications"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"malformed complex: {exc}") from exc
        return cls(domains, pairs, tuple(data.get("basepoints", ())))


class _Builder:
    def __init__(self):
        self.domains: list[Domain] = []
        self.pairs: list[tuple[str, str]] = []

    def second(self, name, kind, left, right, saddle_ends=("s1", "s2")):
        self.domains.append(Domain(name, kind, "second",
                                   ((f"{name}.L", "half_line_left"),
                                    (f"{name}.g", "saddle"),
                                    (f"{name}.R", "half_line_right")),
                                   saddle_ends))
        return name

    def first(self, name, kind, point):
        self.domains.append(Domain(name, kind, "first",
                                   ((f"{name}.L", "half_line_left"),
                                    (f"{name}.R", "half_line_right")),
                                   (point,)))
        return name

    def cylinder(self, name, point):
        self.domains.append(Domain(name, "cylinder", "cylinder",
                                   ((f"{name}.c", "circle"),), (point,)))
        return name

    def glue(self, a, b):
        self.pairs.append((a, b))

    def done(self, basepoints) -> DomainComplex:
        return DomainComplex(tuple(self.domains), tuple(self.pairs), tuple(basepoints))


def build_type1_surface(angles: Sequence[Sequence[int]]) -> DomainComplex:
    """Half-plane complex of the zero-residue differential with these angles.

    For every saddle gamma_i there are upper and lower second-type planes
    S_i+ and S_i-.  Turning clockwise around sigma1 from gamma_i one meets
    a'_i pairs of first-type planes F before gamma_{i+1}; turning
    counterclockwise around sigma2 one meets a''_i pairs G.
    """
    angles = [tuple(int(x) for x in pair) for pair in angles]
    if not angles or any(len(pair) != 2 or min(pair) < 0 for pair in angles):
        raise InadmissibleError("angle data must be a nonempty list of nonnegative pairs")
    p = len(angles)
    b = _Builder()
    for i, (a1, a2) in enumerate(angles, start=1):
        b.second(f"S{i}+", "upper", None, None)
        b.second(f"S{i}-", "lower", None, None)
        for j in range(1, a1 + 1):
            b.first(f"F{i}.{j}+", "upper", "s1")
            b.first(f"F{i}.{j}-", "lower", "s1")
        for j in range(1, a2 + 1):
            b.first(f"G{i}.{j}+", "upper", "s2")
            b.first(f"G{i}.{j}-", "lower", "s2")
    for i, (a1, a2) in enumerate(angles, start=1):
        nxt = i % p + 1
        b.glue(f"S{i}+.g", f"S{i}-.g")
        # around sigma1: S_i- | F+ F- ... | S_{i+1}+
        cur = f"S{i}-.L"
        for j in range(1, a1 + 1):
            b.glue(cur, f"F{i}.{j}+.L")
            b.glue(f"F{i}.{j}+.R", f"F{i}.{j}-.R")
            cur = f"F{i}.{j}-.L"
        b.glue(cur, f"S{nxt}+.L")
        # around sigma2: S_i- | G+ G- ... | S_{i+1}+
        cur = f"S{i}-.R"
        for j in range(1, a2 + 1):
            b.glue(cur, f"G{i}.{j}+.R")
            b.glue(f"G{i}.{j}+.L", f"G{i}.{j}-.L")
            cur = f"G{i}.{j}-.R"
        b.glue(cur, f"S{nxt}+.R")
    return b.done(("s1", "s2"))


def build_type2_surface(c1: Sequence[int], c2: Sequence[int]) -> DomainComplex:
    """Complex of the differential of a type (i) block with k figure-eights.

    ``c1[i]``/``c2[i]`` are the angle decorations c'_i, c''_i between
    gamma_i and gamma_{i+1}.  The saddles gamma_1 and gamma_{k+1} bound the
    two half-infinite cylinders.
    """
    c1, c2 = [int(x) for x in c1], [int(x) for x in c2]
    k = len(c1)
    if k < 1:
        raise InadmissibleError("a type (i) block needs at least one figure-eight surface")
    if len(c2) != k or min(c1 + c2) < 0:
        raise InadmissibleError("c' and c'' must be nonnegative lists of equal length")
    b = _Builder()
    ends = ("s", "s")
    b.cylinder("C0", "s")
    for i in range(1, k + 1):
        b.second(f"S{i}+", "upper", None, None, ends)
        b.second(f"S{i + 1}-", "lower", None, None, ends)
        for j in range(1, c1[i - 1] + 1):
            b.first(f"F{i}.{j}-", "lower", "s")
            b.first(f"F{i}.{j}+", "upper", "s")
        for j in range(1, c2[i - 1] + 1):
            b.first(f"G{i}.{j}-", "lower", "s")
            b.first(f"G{i}.{j}+", "upper", "s")
    b.cylinder(f"C{k + 1}", "s")
    b.glue("C0.c", "S1+.g")
    for i in range(2, k + 1):
        b.glue(f"S{i}+.g", f"S{i}-.g")
    b.glue(f"S{k + 1}-.g", f"C{k + 1}.c")
    for i in range(1, k + 1):
        cur = f"S{i}+.L"
        for j in range(1, c1[i - 1] + 1):
            b.glue(cur, f"F{i}.{j}-.L")
            b.glue(f"F{i}.{j}-.R", f"F{i}.{j}+.R")
            cur = f"F{i}.{j}+.L"
        b.glue(cur, f"S{i + 1}-.L")
        cur = f"S{i}+.R"
        for j in range(1, c2[i - 1] + 1):
            b.glue(cur, f"G{i}.{j}-.R")
            b.glue(f"G{i}.{j}-.L", f"G{i}.{j}+.L")
            cur = f"G{i}.{j}+.R"
        b.glue(cur, f"S{i + 1}-.R")
    return b.done(("s",))


# ----------------------------------------------------------------------
# Analysis


@dataclass(frozen=True)
class Pole:
    domains: tuple[str, ...]
    order: int
    residue_zero: bool
    kind: str  # half_planes or cylinder

    def to_json(self) -> dict:
        return {"domains": list(self.domains), "order": self.order,
                "residue": "zero" if self.residue_zero else "nonzero", "kind": self.kind}


@dataclass(frozen=True)
class GeometryReport:
    cone_angles: tuple[tuple[str, int], ...]  # (basepoint, angle / pi)
    poles: tuple[Pole, ...]
    genus: int
    issues: tuple[str, ...]

    def angle(self, point: str) -> int:
        values = [a for name, a in self.cone_angles if name == point]
        if len(values) != 1:
            raise KeyError(point)
        return values[0]

    def pole_orders(self) -> list[int]:
        return [p.order for p in self.poles]

    def to_json(self) -> dict:
        return {"cone_angles": [{"point": n, "angle_over_pi": a} for n, a in self.cone_angles],
                "poles": [p.to_json() for p in self.poles],
                "genus": self.genus, "issues": list(self.issues)}


def _edge_ends(dom: Domain, e: int):
    """Finite endpoints of edge ``e`` as corner indices (None at infinity)."""
    role = dom.edges[e][1]
    if dom.type == "cylinder":
        return (0, 0)
    last = len(dom.edges) - 1
    start = None if e == 0 else e - 1
    end = None if e == last else e
    if role == "saddle":
        return (start, end)
    return (start, end)


def analyze(d: DomainComplex) -> GeometryReport:
    if not d.domains:
        raise ConfigError("empty complex")
    issues: list[str] = []
    owner = d.edge_owner()
    partner = d.partner()
    for label, _ in owner.items():
        if label not in partner:
            issues.append(f"edge {label} is not glued")
    for a, b in d.identifications:
        if a not in owner or b not in owner:
            issues.append(f"gluing {a}~{b} names an unknown edge")
            continue
        ra = d.domains[owner[a][0]].edges[owner[a][1]][1]
        rb = d.domains[owner[b][0]].edges[owner[b][1]][1]
        ka, kb = d.domains[owner[a][0]].kind, d.domains[owner[b][0]].kind
        if (ra, rb) not in COMPATIBLE:
            issues.append(f"gluing {a}~{b} joins a {ra} to a {rb}")
        elif ka == kb:
            issues.append(f"gluing {a}~{b} joins two {ka} domains")
    if len(partner) != 2 * len(d.identifications):
        issues.append("an edge is glued more than once")

    # finite corners
    corner_id = {}
    for i, dom in enumerate(d.domains):
        for c in range(len(dom.corners)):
            corner_id[(i, c)] = len(corner_id)
    left, right = [], []
    # one point at infinity per half-plane
    inf_id = {i: k for k, i in enumerate(i for i, dom in enumerate(d.domains)
                                         if dom.type != "cylinder")}
    inf_left, inf_right = [], []
    edges_seen = 0
    for a, b in d.identifications:
        if a not in owner or b not in owner:
            continue
        edges_seen += 1
        (da, ea), (db, eb) = owner[a], owner[b]
        ends_a = _edge_ends(d.domains[da], ea)
        ends_b = _edge_ends(d.domains[db], eb)
        finite_a = [x for x in ends_a if x is not None]
        finite_b = [x for x in ends_b if x is not None]
        if len(finite_a) == len(finite_b):
            for x, y in zip(finite_a, finite_b):
                left.append(corner_id[(da, x)])
                right.append(corner_id[(db, y)])
        elif finite_a and finite_b:
            for x in finite_a:
                for y in finite_b:
                    left.append(corner_id[(da, x)])
                    right.append(corner_id[(db, y)])
        if None in ends_a and None in ends_b and da in inf_id and db in inf_id:
            inf_left.append(inf_id[da])
            inf_right.append(inf_id[db])

    corner_class = _kernels.union_find(len(corner_id), left, right)
    classes: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for (i, c), k in corner_id.items():
        classes[corner_class[k]].append((i, c))
    cone = []
    seen_names = defaultdict(int)
    for cls in sorted(classes):
        members = classes[cls]
        names = {d.domains[i].corners[c] for i, c in members}
        if len(names) != 1:
            issues.append(f"corners {sorted(map(str, names))} are identified to one point")
        name = min(map(str, names))
        seen_names[name] += 1
        cone.append((name, len(members)))
    for name, count in seen_names.items():
        if count > 1:
            issues.append(f"basepoint {name} splits into {count} points")

    inf_class = _kernels.union_find(len(inf_id), inf_left, inf_right)
    clusters: dict[int, list[int]] = defaultdict(list)
    for i, k in inf_id.items():
        clusters[inf_class[k]].append(i)
    poles = []
    for cls in sorted(clusters):
        members = clusters[cls]
        if len(members) % 2:
            issues.append(f"an infinity cluster has an odd number {len(members)} of half-planes")
        period = sum((1 if d.domains[i].kind == "lower" else -1)
                     for i in members for _, role in d.domains[i].edges if role == "saddle")
        poles.append(Pole(tuple(d.domains[i].name for i in members), len(members) // 2 + 1,
                          period == 0, "half_planes"))
    for i, dom in enumerate(d.domains):
        if dom.type == "cylinder":
            poles.append(Pole((dom.name,), 1, False, "cylinder"))

    V = len(classes) + len(clusters)
    E = edges_seen
    F = len(d.domains)
    chi = V - E + F
    if chi % 2:
        issues.append(f"odd Euler characteristic {chi}")
    genus = (2 - chi) // 2

    comps = _kernels.union_find(len(d.domains),
                                [owner[a][0] for a, b in d.identifications if a in owner and b in owner],
                                [owner[b][0] for a, b in d.identifications if a in owner and b in owner])
    if len(set(comps)) > 1:
        issues.append("the complex is not connected")
    if genus != 0:
        issues.append(f"genus {genus}, expected a sphere")
    residue_total = sum(0 if p.residue_zero else 1 for p in poles if p.kind == "half_planes")
    if residue_total and not any(p.kind == "cylinder" for p in poles):
        issues.append("nonzero residues without cylinders")
    return GeometryReport(tuple(sorted(cone)), tuple(poles), genus, tuple(issues))


# ----------------------------------------------------------------------
# Reconstruction


def reconstruct_config(d: DomainComplex) -> tuple[tuple[int, int], ...]:
    """Recover the angle data by walking around sigma1 and sigma2."""
    if any(dom.type == "cylinder" for dom in d.domains):
        raise NotTypeIError("a complex with a cylinder is not of type I")
    owner = d.edge_owner()
    partner = d.partner()

    def dom_of(label):
        return d.domains[owner[label][0]]

    def edge(dom, role):
        for label, r in dom.edges:
            if r == role:
                return label
        raise NotTypeIError(f"{dom.name} has no {role} edge")

    def hop(label):
        if label not in partner:
            raise NotTypeIError(f"edge {label} is not glued")
        return dom_of(partner[label])

    uppers = [dom for dom in d.domains if dom.type == "second" and dom.kind == "upper"]
    if not uppers:
        raise NotTypeIError("no saddle connections")

    def walk(start, side, inner):
        """Successor saddle and the number of first-type pairs in between."""
        lower = hop(edge(start, "saddle"))
        if lower.type != "second" or lower.kind != "lower":
            raise NotTypeIError(f"saddle of {start.name} is not glued to a lower plane")
        cur = hop(edge(lower, side))
        count = 0
        while cur.type == "first":
            if cur.kind != "upper" or cur.corners[0] != inner:
                raise NotTypeIError(f"unexpected first-type plane {cur.name}")
            partner_lower = hop(edge(cur, _other(side)))
            if partner_lower.type != "first" or partner_lower.kind != "lower":
                raise NotTypeIError(f"{cur.name} is not paired with a lower plane")
            cur = hop(edge(partner_lower, side))
            count += 1
            if count > len(d.domains):
                raise NotTypeIError("walk does not close up")
        if cur.type != "second" or cur.kind != "upper":
            raise NotTypeIError(f"walk around {inner} ends at {cur.name}")
        return cur, count

    angles = []
    start = uppers[0]
    cur = start
    for _ in range(len(uppers)):
        nxt1, a1 = walk(cur, "half_line_left", "s1")
        nxt2, a2 = walk(cur, "half_line_right", "s2")
        if nxt1 is not nxt2:
            raise NotTypeIError("the walks around sigma1 and sigma2 disagree")
        angles.append((a1, a2))
        cur = nxt1
        if cur is start:
            break
    if cur is not start or len(angles) != len(uppers):
        raise NotTypeIError("saddle connections do not form a single cycle")
    return tuple(angles)


def _other(side: str) -> str:
    return "half_line_right" if side == "half_line_left" else "half_line_left"
