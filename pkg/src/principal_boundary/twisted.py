"""Twisted differentials on decorated dual graphs.

Residues are symbolic: every polar branch carries one of the labels
``zero``, ``+r``, ``-r`` or ``free`` over a single nonzero magnitude r.
The validator checks the matching-order, residue and ordering conditions
together with the global residue condition in the two graph shapes that
principal boundaries produce (a star, and a single cycle with tails).
"""
from __future__ import annotations

import enum
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .configs import TypeIConfig, TypeIIConfig, config_graph
from .errors import ConfigError
from .stratum import Kind


class ResidueLabel(str, enum.Enum):
    ZERO = "zero"
    PLUS = "+r"
    MINUS = "-r"
    FREE = "free"


ZERO, PLUS, MINUS, FREE = ResidueLabel
OPPOSITE = {PLUS: MINUS, MINUS: PLUS}


@dataclass(frozen=True)
class Vertex:
    genus: int
    markings: tuple[tuple[int, int], ...]  # (marking index, order)
    name: str = ""


@dataclass(frozen=True)
class Edge:
    v: tuple[int, int]
    orders: tuple[int, int]
    residues: tuple[ResidueLabel, ResidueLabel]


@dataclass(frozen=True)
class TwistedDiff:
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    kind: Kind
    mu: tuple[int, ...]
    level_order: tuple[int, ...] | None = None  # stored, not checked

    @property
    def unit(self) -> int:
        """-2 for abelian nodes, -4 for quadratic ones."""
        return -2 if self.kind is Kind.ABELIAN else -4

    def branches(self, vertex: int):
        """(edge index, side) for every branch at ``vertex``."""
        for k, e in enumerate(self.edges):
            for side in (0, 1):
                if e.v[side] == vertex:
                    yield k, side

    def vertex_orders(self, vertex: int) -> list[int]:
        marks = [order for _, order in self.vertices[vertex].markings]
        return marks + [self.edges[k].orders[side] for k, side in self.branches(vertex)]

    def node_orders(self, vertex: int) -> list[int]:
        return [self.edges[k].orders[side] for k, side in self.branches(vertex)]

    def betti(self) -> int:
        return len(self.edges) - len(self.vertices) + 1

    def replace_edge(self, k: int, **changes) -> "TwistedDiff":
        edges = list(self.edges)
        old = edges[k]
        edges[k] = Edge(changes.get("v", old.v), changes.get("orders", old.orders),
                        changes.get("residues", old.residues))
        return TwistedDiff(self.vertices, tuple(edges), self.kind, self.mu, self.level_order)

    def replace_vertex(self, i: int, **changes) -> "TwistedDiff":
        vertices = list(self.vertices)
        old = vertices[i]
        vertices[i] = Vertex(changes.get("genus", old.genus),
                             changes.get("markings", old.markings),
                             changes.get("name", old.name))
        return TwistedDiff(tuple(vertices), self.edges, self.kind, self.mu, self.level_order)

    def to_json(self) -> dict:
        out = {
            "kind": self.kind.value,
            "mu": list(self.mu),
            "vertices": [{"genus": v.genus, "markings": [list(m) for m in v.markings],
                          **({"name": v.name} if v.name else {})} for v in self.vertices],
            "edges": [{"v": list(e.v), "orders": list(e.orders),
                       "residues": [r.value for r in e.residues]} for e in self.edges],
        }
        if self.level_order is not None:
            out["level_order"] = list(self.level_order)
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "TwistedDiff":
        try:
            vertices = tuple(Vertex(int(v["genus"]),
                                    tuple((int(i), int(o)) for i, o in v.get("markings", ())),
                                    v.get("name", "")) for v in data["vertices"])
            edges = tuple(Edge(tuple(e["v"]), tuple(e["orders"]),
                               tuple(ResidueLabel(r) for r in e.get("residues", ("zero", "zero"))))
                          for e in data["edges"])
            kind = Kind(data.get("kind", "abelian"))
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"malformed twisted differential: {exc}") from exc
        if "mu" in data:
            mu = tuple(data["mu"])
        else:
            marks = dict(m for v in vertices for m in v.markings)
            mu = tuple(marks[i] for i in sorted(marks))
        level = data.get("level_order")
        return cls(vertices, edges, kind, mu, tuple(level) if level is not None else None)


@dataclass(frozen=True)
class Violation:
    condition: str
    location: str
    message: str

    def to_json(self) -> dict:
        return {"condition": self.condition, "location": self.location, "message": self.message}


@dataclass(frozen=True)
class BoundaryReport:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def verdict(self) -> str:
        return "invalid" if self.violations else "valid"

    @property
    def valid(self) -> bool:
        return not self.violations

    def conditions(self) -> set[str]:
        return {v.condition for v in self.violations}

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "violations": [v.to_json() for v in self.violations]}


# ----------------------------------------------------------------------
# Validation


def _components(n: int, edges) -> int:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in edges:
        parent[find(i)] = find(j)
    return len({find(x) for x in range(n)})


def _bridges(t: TwistedDiff) -> set[int]:
    """Edges whose removal disconnects the graph."""
    n = len(t.vertices)
    base = _components(n, [e.v for e in t.edges])
    out = set()
    for k, e in enumerate(t.edges):
        if e.v[0] == e.v[1]:
            continue
        rest = [f.v for kk, f in enumerate(t.edges) if kk != k]
        if _components(n, rest) > base:
            out.add(k)
    return out


def _cycle_walk(t: TwistedDiff):
    """Walk the unique cycle of a graph with first Betti number 1.

    Returns a list of (vertex, entering branch, leaving branch) where a
    branch is (edge index, side).
    """
    alive = set(range(len(t.edges)))
    degree = Counter()
    for k in alive:
        for side in (0, 1):
            degree[t.edges[k].v[side]] += 1
    removed = set()
    changed = True
    while changed:
        changed = False
        for v in range(len(t.vertices)):
            if v not in removed and degree[v] == 1:
                removed.add(v)
                for k in list(alive):
                    if v in t.edges[k].v:
                        alive.discard(k)
                        other = t.edges[k].v[1] if t.edges[k].v[0] == v else t.edges[k].v[0]
                        degree[other] -= 1
                        degree[v] -= 1
                changed = True
    if not alive:
        return []
    start_edge = min(alive)
    walk = []
    k, side = start_edge, 1  # traverse from side 0 to side 1
    while True:
        v = t.edges[k].v[side]
        enter = (k, side)
        leave = None
        for kk in sorted(alive):
            for s in (0, 1):
                if t.edges[kk].v[s] == v and (kk, s) != enter:
                    leave = (kk, s)
                    break
            if leave:
                break
        walk.append((v, enter, leave))
        k, side = leave[0], 1 - leave[1]
        if (k, side) == (start_edge, 1):
            return walk
        if len(walk) > len(t.edges) + 1:
            return walk


def validate(t: TwistedDiff) -> BoundaryReport:
    """Check a twisted differential and collect every violation."""
    out: list[Violation] = []

    def bad(condition, location, message):
        out.append(Violation(condition, location, message))

    n = len(t.vertices)
    abelian = t.kind is Kind.ABELIAN
    unit = t.unit

    if n == 0:
        bad("graph", "graph", "no vertices")
        return BoundaryReport(tuple(out))
    for k, e in enumerate(t.edges):
        if not all(0 <= x < n for x in e.v):
            bad("graph", f"edge {k}", "endpoint out of range")
            return BoundaryReport(tuple(out))
    if _components(n, [e.v for e in t.edges]) != 1:
        bad("graph", "graph", "the dual graph is not connected")

    # (0) markings
    seen = Counter()
    for i, v in enumerate(t.vertices):
        for idx, order in v.markings:
            seen[idx] += 1
            if not 0 <= idx < len(t.mu):
                bad("0", f"vertex {i}", f"marking {idx} is not part of mu")
            elif order != t.mu[idx]:
                bad("0", f"vertex {i}", f"marking {idx} has order {order}, mu says {t.mu[idx]}")
    for idx in range(len(t.mu)):
        if seen[idx] != 1:
            bad("0", f"marking {idx}", f"appears {seen[idx]} times")

    # degree per vertex
    for i, v in enumerate(t.vertices):
        total = sum(t.vertex_orders(i))
        expected = (2 * v.genus - 2) if abelian else (4 * v.genus - 4)
        if v.genus < 0 or total != expected:
            bad("degree", f"vertex {i}", f"orders sum to {total}, genus {v.genus} needs {expected}")

    # (1) node orders, holomorphic branches
    for k, e in enumerate(t.edges):
        if sum(e.orders) != unit:
            bad("1", f"edge {k}", f"branch orders {e.orders} do not sum to {unit}")
        for side in (0, 1):
            if e.orders[side] >= 0 and e.residues[side] is not ZERO:
                bad("residue", f"edge {k}.{side}", "a holomorphic branch has zero residue")

    if abelian:
        # (2) simple poles on both branches carry opposite residues
        for k, e in enumerate(t.edges):
            if e.orders == (-1, -1):
                r0, r1 = e.residues
                if r0 not in OPPOSITE or OPPOSITE[r0] is not r1:
                    bad("2", f"edge {k}", f"residues {r0.value}, {r1.value} are not opposite and nonzero")
            for side in (0, 1):
                if e.orders[side] == -1 and e.residues[side] is ZERO:
                    bad("residue", f"edge {k}.{side}", "a simple pole has nonzero residue")
        # residue theorem on each component, when all labels are determined
        for i in range(n):
            labels = [t.edges[k].residues[s] for k, s in t.branches(i)]
            if FREE not in labels and labels.count(PLUS) != labels.count(MINUS):
                bad("residue", f"vertex {i}", "residues do not add up to zero")
    else:
        for k, e in enumerate(t.edges):
            if e.orders == (-2, -2):
                r0, r1 = e.residues
                if r0 is not r1 or r0 in (ZERO, FREE):
                    bad("residue", f"edge {k}", "cylinder widths on a (-2,-2) node must match")

    # (3) parallel edges are ordered consistently
    groups = defaultdict(list)
    for k, e in enumerate(t.edges):
        if e.v[0] == e.v[1]:
            continue
        a, b = e.v
        diff = e.orders[0] - e.orders[1]
        groups[(a, b) if a < b else (b, a)].append(diff if a < b else -diff)
    for pair, diffs in groups.items():
        if len(diffs) > 1:
            signs = {(d > 0) - (d < 0) for d in diffs}
            if len(signs) > 1:
                bad("3", f"vertices {pair}", "parallel nodes disagree on which side is higher")

    if abelian:
        # global residue condition at separating nodes
        for k in sorted(_bridges(t)):
            e = t.edges[k]
            for side in (0, 1):
                if e.orders[side] < 0 and e.residues[side] is not ZERO:
                    bad("GRC", f"edge {k}.{side}", "a separating node needs zero residue")
        if t.betti() == 1:
            _check_alternation(t, bad)
    return BoundaryReport(tuple(out))


def _check_alternation(t: TwistedDiff, bad) -> None:
    patterns = set()
    for v, enter, leave in _cycle_walk(t):
        if t.vertices[v].genus != 0:
            continue
        labels = (t.edges[enter[0]].residues[enter[1]], t.edges[leave[0]].residues[leave[1]])
        if labels not in ((PLUS, MINUS), (MINUS, PLUS)):
            bad("alternation", f"vertex {v}", "cycle residues on a rational vertex are not +r/-r")
        patterns.add(labels)
    if len(patterns) > 1:
        bad("alternation", "cycle", "residue signs do not alternate along the cycle")


# ----------------------------------------------------------------------
# Builders


_ROLE_LABELS = {
    "tail": (ZERO, ZERO),
    "cylinder": (MINUS, PLUS),
    "holes_in": (MINUS, ZERO),   # rational side leaves the block
    "holes_out": (ZERO, PLUS),   # rational side enters the next block
}


def _from_graph(graph, mu) -> TwistedDiff:
    vertices = tuple(Vertex(v.genus, tuple((j, mu[j]) for j in v.markings), v.name)
                     for v in graph.vertices)
    edges = tuple(Edge(e.ends, e.orders, _ROLE_LABELS[e.role]) for e in graph.edges)
    return TwistedDiff(vertices, edges, Kind.ABELIAN, tuple(mu))


def build_type1(c: TypeIConfig) -> TwistedDiff:
    """Rational center carrying sigma1, sigma2 with one tail per saddle."""
    c.check()
    return _from_graph(config_graph(c), c.mu)


def build_type2(c: TypeIIConfig) -> TwistedDiff:
    """Glue the degenerate blocks of a type II configuration.

    Every block becomes a rational vertex holding its newborn zero; residues
    enter each rational vertex as +r and leave it as -r along the cycle.
    """
    c.check()
    return _from_graph(config_graph(c), c.mu)


# ----------------------------------------------------------------------
# Quadratic boundary graphs


Q22_CASES = ("fig22_left", "fig22_middle", "fig22_right")


def build_q22_boundary(case: str) -> TwistedDiff:
    """The three boundary graphs of Q(2, 2) coming from long cylinders."""
    mu = (2, 2)
    Q = Kind.QUADRATIC
    if case == "fig22_left":
        vertices = (Vertex(1, ((0, 2),), "E"), Vertex(0, ((1, 2),), "R"))
        edges = (Edge((0, 1), (-1, -3), (FREE, FREE)),
                 Edge((0, 1), (-1, -3), (FREE, FREE)))
    elif case == "fig22_middle":
        vertices = (Vertex(0, ((0, 2),), "R1"), Vertex(0, ((1, 2),), "R2"))
        edges = (Edge((0, 1), (-2, -2), (PLUS, PLUS)),
                 Edge((0, 0), (-2, -2), (PLUS, PLUS)),
                 Edge((1, 1), (-2, -2), (PLUS, PLUS)))
    elif case == "fig22_right":
        vertices = (Vertex(0, (), "R0"), Vertex(0, ((0, 2),), "R1"), Vertex(0, ((1, 2),), "R2"))
        edges = tuple(Edge((0, j), (-1, -3), (FREE, FREE)) for j in (1, 1, 2, 2))
    else:
        raise ConfigError(f"unknown case {case!r}; choose from {', '.join(Q22_CASES)}")
    return TwistedDiff(vertices, edges, Q, mu)


GENUS13_SIGNATURES = {
    "R1": (30, -2, -2, -4, -4, -6, -16),
    "R2": (8, -2, -2, -4, -4),
    # node order first, interior zeros after
    "S1": (0, 0),
    "S2": (2, 2),
    "S3": (12,),
    "S4": (0,),
    "S5": (0, 8),
}

# which pole of R1/R2 (by position) each S component is glued to
_GENUS13_ATTACH = {
    "S1": ("R1", (3, 4)),
    "S2": ("R1", (5,)),
    "S3": ("R1", (6,)),
    "S4": ("R2", (3,)),
    "S5": ("R2", (4,)),
}


def genus13_diff(signatures: Mapping[str, Sequence[int]] | None = None) -> TwistedDiff:
    """Assemble the seven-component genus 13 boundary graph.

    R1 and R2 share two (-2,-2) nodes; S1 meets R1 twice, S2 and S3 once
    each, S4 and S5 meet R2 once.  Missing S signatures default to
    ``GENUS13_SIGNATURES``.
    """
    sig = dict(GENUS13_SIGNATURES)
    if signatures:
        sig.update({k: tuple(v) for k, v in signatures.items()})
    for name in ("R1", "R2"):
        if len(sig[name]) != len(GENUS13_SIGNATURES[name]):
            raise ConfigError(f"{name} needs {len(GENUS13_SIGNATURES[name])} entries")

    names = ["R1", "R2", "S1", "S2", "S3", "S4", "S5"]
    mu: list[int] = []
    markings: dict[str, list[tuple[int, int]]] = {}
    genera: dict[str, int] = {}
    for name in names:
        orders = sig[name]
        if name.startswith("R"):
            interior = orders[:1]
            genera[name] = 0
        else:
            nodes = len(_GENUS13_ATTACH[name][1])
            interior = orders[nodes:]
            total = sum(orders)
            genera[name] = (total + 4) // 4 if total % 4 == 0 else -1
        markings[name] = []
        for order in interior:
            markings[name].append((len(mu), order))
            mu.append(order)
    vertices = tuple(Vertex(genera[name], tuple(markings[name]), name) for name in names)
    index = {name: i for i, name in enumerate(names)}

    edges = [Edge((0, 1), (sig["R1"][1], sig["R2"][1]), (PLUS, PLUS)),
             Edge((0, 1), (sig["R1"][2], sig["R2"][2]), (PLUS, PLUS))]
    for name, (r, positions) in _GENUS13_ATTACH.items():
        for t, pos in enumerate(positions):
            edges.append(Edge((index[r], index[name]), (sig[r][pos], sig[name][t]), (FREE, ZERO)))
    return TwistedDiff(vertices, tuple(edges), Kind.QUADRATIC, tuple(mu))


def check_genus13(signatures: Mapping[str, Sequence[int]] | None = None) -> BoundaryReport:
    try:
        t = genus13_diff(signatures)
    except ConfigError as exc:
        return BoundaryReport((Violation("shape", "signatures", str(exc)),))
    report = validate(t)
    extra = []
    for name in ("R1", "R2"):
        i = [v.name for v in t.vertices].index(name)
        total = sum(t.vertex_orders(i))
        if total != -4:
            extra.append(Violation("degree", name, f"{name} has degree {total}, a genus 0 "
                                   "quadratic differential needs -4"))
    genus = sum(v.genus for v in t.vertices) + t.betti()
    if genus != 13 and not report.violations:
        extra.append(Violation("shape", "graph", f"total genus is {genus}, expected 13"))
    return BoundaryReport(report.violations + tuple(extra))
