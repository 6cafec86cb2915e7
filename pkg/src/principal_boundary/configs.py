"""Configurations of homologous saddle connections.

Type I data joins two distinct zeros sigma1, sigma2 by p parallel saddle
connections; the surface splits into p pieces, piece i seeing an angle of
2*pi*(a'_i + 1) at sigma1 and 2*pi*(a''_i + 1) at sigma2.

Type II data is a cyclic word of cylinders and surfaces.  A surface either
has a figure-eight boundary (decorations c', c'') or a pair-of-holes
boundary (decorations a, b).  Cylinders and pair-of-holes surfaces break the
word into blocks; every block creates one newborn zero.

Marking indices are 0-based positions into the signature ``mu``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence, Union

from . import _kernels
from .errors import (ArityMismatchError, ConfigError, DegreeMismatchError,
                     OrderRangeError)
from .stratum import Kind, Stratum


# ----------------------------------------------------------------------
# Type I


@dataclass(frozen=True)
class TypeIConfig:
    mu: tuple[int, ...]
    zeros: tuple[int, int]
    angles: tuple[tuple[int, int], ...]
    parts: tuple[tuple[int, ...], ...]
    genera: tuple[int, ...]

    @property
    def m1(self) -> int:
        return self.mu[self.zeros[0]]

    @property
    def m2(self) -> int:
        return self.mu[self.zeros[1]]

    @property
    def p(self) -> int:
        return len(self.angles)

    def key(self):
        return (self.angles, self.parts, self.genera)

    def check(self) -> None:
        """Raise ConfigError unless every bookkeeping identity holds."""
        i1, i2 = self.zeros
        n = len(self.mu)
        if i1 == i2 or not (0 <= i1 < n and 0 <= i2 < n):
            raise ConfigError(f"bad zero indices {self.zeros}")
        p = self.p
        if p < 1 or len(self.parts) != p or len(self.genera) != p:
            raise ConfigError("angles, parts and genera must all have length p >= 1")
        if any(x < 0 for pair in self.angles for x in pair):
            raise ConfigError("angle decorations must be nonnegative")
        if sum(a + 1 for a, _ in self.angles) != self.m1 + 1:
            raise ConfigError("angles at sigma1 do not add up to 2*pi*(m1+1)")
        if sum(b + 1 for _, b in self.angles) != self.m2 + 1:
            raise ConfigError("angles at sigma2 do not add up to 2*pi*(m2+1)")
        seen = sorted(j for part in self.parts for j in part)
        if seen != sorted(set(range(n)) - {i1, i2}):
            raise ConfigError("parts must partition the remaining markings")
        for (a1, a2), part, g in zip(self.angles, self.parts, self.genera):
            if g < 1 or 2 * g - 2 != sum(self.mu[j] for j in part) + a1 + a2:
                raise ConfigError(f"genus {g} does not match the degree of its part")
        if sum(self.genera) != (sum(self.mu) + 2) // 2:
            raise ConfigError("tail genera do not add up to g")

    def to_json(self) -> dict:
        return {
            "mu": list(self.mu),
            "zeros": list(self.zeros),
            "m1": self.m1,
            "m2": self.m2,
            "angles": [list(pair) for pair in self.angles],
            "parts": [list(part) for part in self.parts],
            "genera": list(self.genera),
        }

    @classmethod
    def from_json(cls, data: dict) -> "TypeIConfig":
        mu = tuple(data["mu"])
        zeros = tuple(data.get("zeros", (0, 1)))
        angles = tuple(tuple(pair) for pair in data["angles"])
        parts = tuple(tuple(sorted(part)) for part in data.get("parts", [[]] * len(angles)))
        genera = data.get("genera")
        if genera is None:
            genera = [(sum(mu[j] for j in part) + a + b + 2) // 2
                      for (a, b), part in zip(angles, parts)]
        c = cls(mu, zeros, angles, parts, tuple(genera))
        for key, value in (("m1", c.m1), ("m2", c.m2)):
            if key in data and data[key] != value:
                raise ConfigError(f"{key}={data[key]} disagrees with mu")
        c.check()
        return c


def _check_abelian(s: Stratum) -> None:
    if s.kind is not Kind.ABELIAN:
        raise ConfigError("configurations are only enumerated for abelian strata")


def enumerate_type1(s: Stratum, i1: int, i2: int, p: int) -> list[TypeIConfig]:
    """All type I configurations of ``p`` saddle connections from i1 to i2."""
    _check_abelian(s)
    n = s.n
    if not (0 <= i1 < n and 0 <= i2 < n) or i1 == i2:
        raise ConfigError(f"need two distinct marking indices in range(0, {n})")
    if p < 1:
        raise ConfigError("p must be positive")
    m1, m2 = s.orders[i1], s.orders[i2]
    rest = [j for j in range(n) if j not in (i1, i2)]
    # a'_i <= m1 + 1 - p and a''_i <= m2 + 1 - p: the search box is finite
    left = _kernels.compositions(m1 + 1 - p, p) if m1 + 1 >= p else []
    right = _kernels.compositions(m2 + 1 - p, p) if m2 + 1 >= p else []

    found = set()
    for a1 in left:
        for a2 in right:
            angles = tuple(zip(a1, a2))
            for owner in itertools.product(range(p), repeat=len(rest)):
                parts = [[] for _ in range(p)]
                for j, k in zip(rest, owner):
                    parts[k].append(j)
                genera = []
                for (x, y), part in zip(angles, parts):
                    twice = sum(s.orders[j] for j in part) + x + y + 2
                    if twice % 2:
                        break
                    genera.append(twice // 2)
                else:
                    found.add(TypeIConfig(s.orders, (i1, i2), angles,
                                          tuple(tuple(part) for part in parts),
                                          tuple(genera)))
    return sorted(found, key=TypeIConfig.key)


def count_Z(m1: int, m2: int, poles: Sequence[int]) -> int:
    """Number of zero-residue differentials on P^1 with the given orders.

    Each admissible tuple (a'_i, a''_i) with a'_i + a''_i + 2 = n_i
    contributes one point, so this is a bounded composition count.
    """
    poles = list(poles)
    if m1 < 1 or m2 < 1:
        raise OrderRangeError("zero orders must be at least 1")
    if not poles or any(n < 2 for n in poles):
        raise OrderRangeError("pole orders must be at least 2")
    if m1 + m2 - sum(poles) != -2:
        raise DegreeMismatchError(
            f"m1 + m2 - sum(n) = {m1 + m2 - sum(poles)}, expected -2")
    # the a'' equation follows from the a' equation and the degree condition
    return _kernels.count_bounded(m1 + 1 - len(poles), [n - 2 for n in poles])


# ----------------------------------------------------------------------
# Newborn zeros


PATTERNS = ("i", "ii", "iii")


def newborn_order(pattern: str, c: Sequence[int], a: int | None = None,
                  b: int | None = None) -> int:
    """Order of the zero created by one gluing block.

    ``c`` lists c_i = c'_i + c''_i of the figure-eight surfaces in the block;
    ``a``/``b`` are the decorations of the pair-of-holes surfaces at its ends.
    """
    c = list(c)
    if pattern not in PATTERNS:
        raise ArityMismatchError(f"unknown pattern {pattern!r}")
    if any(x < 0 for x in c) or any(x is not None and x < 0 for x in (a, b)):
        raise ArityMismatchError("decorations must be nonnegative")
    base = sum(x + 2 for x in c)
    if pattern == "i":
        if not c or a is not None or b is not None:
            raise ArityMismatchError("pattern (i) takes a nonempty c and no a, b")
        return base
    if pattern == "ii":
        if b is None or a is not None:
            raise ArityMismatchError("pattern (ii) takes b only")
        return base + b + 1
    if a is None or b is None:
        raise ArityMismatchError("pattern (iii) takes both a and b")
    return base + a + 1 + b + 1


# ----------------------------------------------------------------------
# Type II


@dataclass(frozen=True)
class Cylinder:
    kind: str = field(default="cyl", init=False)

    def key(self):
        return (0,)

    def to_json(self) -> dict:
        return {"kind": "cyl"}


@dataclass(frozen=True)
class Surface:
    genus: int
    boundary: str  # "fig8" or "holes"
    d: tuple[int, int]
    interior: tuple[int, ...] = ()
    kind: str = field(default="surf", init=False)

    @property
    def is_holes(self) -> bool:
        return self.boundary == "holes"

    @property
    def node_total(self) -> int:
        return self.d[0] + self.d[1]

    def key(self):
        return (1, self.genus, int(self.is_holes), self.d[0], self.d[1], *self.interior)

    def to_json(self) -> dict:
        return {"kind": "surf", "genus": self.genus,
                "boundary": {"type": self.boundary, "d": list(self.d)},
                "interior": list(self.interior)}


Element = Union[Cylinder, Surface]
CYL = Cylinder()


def fig8(cp: int, cpp: int, genus: int, interior=()) -> Surface:
    return Surface(genus, "fig8", (cp, cpp), tuple(sorted(interior)))


def holes(a: int, b: int, genus: int, interior=()) -> Surface:
    return Surface(genus, "holes", (a, b), tuple(sorted(interior)))


def is_breaker(e: Element) -> bool:
    return isinstance(e, Cylinder) or e.is_holes


@dataclass(frozen=True)
class Block:
    """One gluing block: breaker, figure-eights, next breaker."""
    start: int            # cycle position of the opening breaker
    end: int              # cycle position of the closing breaker
    fig8s: tuple[int, ...]  # cycle positions of the figure-eight surfaces

    def pattern(self, cycle) -> str:
        count = isinstance(cycle[self.start], Surface) + isinstance(cycle[self.end], Surface)
        return PATTERNS[count]


def blocks_of(cycle: Sequence[Element]) -> list[Block]:
    breakers = [i for i, e in enumerate(cycle) if is_breaker(e)]
    if not breakers:
        raise ConfigError("a type II cycle needs a cylinder or a pair-of-holes surface")
    out = []
    L = len(cycle)
    for j, start in enumerate(breakers):
        end = breakers[(j + 1) % len(breakers)]
        span = (end - start - 1) % L if len(breakers) > 1 else L - 1
        out.append(Block(start, end, tuple((start + 1 + t) % L for t in range(span))))
    return out


def block_order(cycle: Sequence[Element], block: Block) -> int:
    c = [cycle[i].node_total for i in block.fig8s]
    first, last = cycle[block.start], cycle[block.end]
    a = first.d[0] if isinstance(first, Surface) else None
    b = last.d[1] if isinstance(last, Surface) else None
    if a is None and b is None:
        if not c:
            raise ConfigError("two cylinders meet without a surface in between")
        return newborn_order("i", c)
    if a is None or b is None:
        return newborn_order("ii", c, b=b if a is None else a)
    return newborn_order("iii", c, a=a, b=b)


@dataclass(frozen=True)
class TypeIIConfig:
    mu: tuple[int, ...]
    cycle: tuple[Element, ...]
    newborn: tuple[int, ...]

    def blocks(self) -> list[Block]:
        return blocks_of(self.cycle)

    def surfaces(self) -> list[Surface]:
        return [e for e in self.cycle if isinstance(e, Surface)]

    def block_patterns(self) -> list[str]:
        return [b.pattern(self.cycle) for b in self.blocks()]

    def key(self):
        return (tuple(e.key() for e in self.cycle), self.newborn)

    def check(self) -> None:
        cycle = self.cycle
        if not cycle:
            raise ConfigError("empty cycle")
        L = len(cycle)
        for i, e in enumerate(cycle):
            if isinstance(e, Cylinder):
                if L > 1 and isinstance(cycle[(i + 1) % L], Cylinder):
                    raise ConfigError("adjacent cylinders create a zero of order 0")
                continue
            if e.boundary not in ("fig8", "holes"):
                raise ConfigError(f"unknown boundary type {e.boundary!r}")
            if min(e.d) < 0 or e.genus < 1:
                raise ConfigError("surfaces need genus >= 1 and nonnegative decorations")
            twice = sum(self.mu[j] for j in e.interior) + e.node_total + 2
            if twice != 2 * e.genus:
                raise ConfigError(f"surface genus {e.genus} does not match its degree")
        blocks = self.blocks()
        if len(blocks) != len(self.newborn):
            raise ConfigError("need one newborn marking per block")
        for block, j in zip(blocks, self.newborn):
            if block_order(cycle, block) != self.mu[j]:
                raise ConfigError(f"block newborn order differs from mu[{j}]")
        used = sorted(list(self.newborn) + [j for s in self.surfaces() for j in s.interior])
        if used != list(range(len(self.mu))):
            raise ConfigError("newborn and interior markings must partition mu")
        if sum(s.genus for s in self.surfaces()) != (sum(self.mu) + 2) // 2 - 1:
            raise ConfigError("surface genera do not add up to g - 1")

    def rotated(self, r: int) -> "TypeIIConfig":
        """The same configuration read from cycle position ``r``."""
        L = len(self.cycle)
        r %= L
        cycle = self.cycle[r:] + self.cycle[:r]
        # blocks are indexed by the position of their opening breaker
        starts = [b.start for b in self.blocks()]
        by_start = dict(zip(starts, self.newborn))
        order = sorted(starts, key=lambda s: (s - r) % L)
        return TypeIIConfig(self.mu, cycle, tuple(by_start[s] for s in order))

    def canonical(self) -> "TypeIIConfig":
        return min((self.rotated(r) for r in range(len(self.cycle))),
                   key=TypeIIConfig.key)

    def to_json(self) -> dict:
        return {"mu": list(self.mu),
                "cycle": [e.to_json() for e in self.cycle],
                "newborn": list(self.newborn)}

    @classmethod
    def from_json(cls, data: dict) -> "TypeIIConfig":
        cycle = []
        for item in data["cycle"]:
            if item["kind"] == "cyl":
                cycle.append(CYL)
            elif item["kind"] == "surf":
                boundary = item["boundary"]
                cycle.append(Surface(item["genus"], boundary["type"],
                                     tuple(boundary["d"]),
                                     tuple(sorted(item.get("interior", ())))))
            else:
                raise ConfigError(f"unknown cycle element {item['kind']!r}")
        c = cls(tuple(data["mu"]), tuple(cycle), tuple(data["newborn"]))
        c.check()
        return c


def _fig8_sequences(budget: int):
    """Sequences of (c', c'') with sum of (c' + c'' + 2) equal to budget."""
    if budget == 0:
        yield ()
        return
    for size in range(2, budget + 1):
        c = size - 2
        for cp in range(c + 1):
            for rest in _fig8_sequences(budget - size):
                yield ((cp, c - cp),) + rest


def enumerate_type2(s: Stratum, designated: Sequence[int]) -> list[TypeIIConfig]:
    """All type II configurations whose newborn zeros are ``designated``.

    Results are canonical rotation representatives in increasing order.
    Every decoration is bounded by the order of the zero it feeds, so the
    search is finite without caps.
    """
    _check_abelian(s)
    designated = sorted(set(designated))
    n = s.n
    if not designated or any(not 0 <= j < n for j in designated):
        raise ConfigError("designated markings must be a nonempty subset of range(n)")
    mu = s.orders
    interior = [j for j in range(n) if j not in designated]
    K = len(designated)
    found = {}

    first, others = designated[0], designated[1:]
    for perm in itertools.permutations(others):
        order = (first,) + perm
        for kinds in itertools.product((False, True), repeat=K):  # True: holes
            # decorations: a_j feeds block j, b_j feeds block j - 1
            ranges = []
            for j in range(K):
                if kinds[j]:
                    ranges.append([(a, b) for a in range(mu[order[j]])
                                   for b in range(mu[order[j - 1]])])
                else:
                    ranges.append([None])
            for decos in itertools.product(*ranges):
                budgets = []
                for j in range(K):
                    nxt = (j + 1) % K
                    r = mu[order[j]]
                    if decos[j] is not None:
                        r -= decos[j][0] + 1
                    if decos[nxt] is not None:
                        r -= decos[nxt][1] + 1
                    if r < 0 or r == 1 or (r == 0 and decos[j] is None and decos[nxt] is None):
                        break
                    budgets.append(r)
                else:
                    for seqs in itertools.product(*(list(_fig8_sequences(r)) for r in budgets)):
                        _place_interior(mu, order, decos, seqs, interior, found)
    return sorted(found.values(), key=TypeIIConfig.key)


def _place_interior(mu, order, decos, seqs, interior, found) -> None:
    shells = []  # (cycle slot, boundary, d)
    for j, deco in enumerate(decos):
        shells.append(None if deco is None else ("holes", deco))
        shells.extend(("fig8", cc) for cc in seqs[j])
    surface_slots = [i for i, sh in enumerate(shells) if sh is not None]
    for owner in itertools.product(range(len(surface_slots)), repeat=len(interior)):
        inner = {slot: [] for slot in surface_slots}
        for j, k in zip(interior, owner):
            inner[surface_slots[k]].append(j)
        cycle = []
        for i, sh in enumerate(shells):
            if sh is None:
                cycle.append(CYL)
                continue
            boundary, d = sh
            twice = sum(mu[j] for j in inner[i]) + d[0] + d[1] + 2
            if twice % 2:
                break
            cycle.append(Surface(twice // 2, boundary, tuple(d), tuple(inner[i])))
        else:
            c = TypeIIConfig(tuple(mu), tuple(cycle), tuple(order)).canonical()
            found.setdefault(c.key(), c)


# ----------------------------------------------------------------------
# Graphs


@dataclass(frozen=True)
class GraphVertex:
    name: str
    genus: int
    markings: tuple[int, ...]


@dataclass(frozen=True)
class GraphEdge:
    ends: tuple[int, int]
    orders: tuple[int, int]
    role: str  # tail, cylinder, holes_in, holes_out


@dataclass(frozen=True)
class ConfigGraph:
    vertices: tuple[GraphVertex, ...]
    edges: tuple[GraphEdge, ...]

    @property
    def betti(self) -> int:
        # all graphs built here are connected
        return len(self.edges) - len(self.vertices) + 1

    def to_json(self) -> dict:
        return {"vertices": [{"name": v.name, "genus": v.genus, "markings": list(v.markings)}
                             for v in self.vertices],
                "edges": [{"v": list(e.ends), "orders": list(e.orders), "role": e.role}
                          for e in self.edges]}


def config_graph(c: TypeIConfig | TypeIIConfig) -> ConfigGraph:
    if isinstance(c, TypeIConfig):
        return _graph_type1(c)
    if isinstance(c, TypeIIConfig):
        return _graph_type2(c)
    raise ConfigError(f"not a configuration: {type(c).__name__}")


def _graph_type1(c: TypeIConfig) -> ConfigGraph:
    vertices = [GraphVertex("R", 0, tuple(c.zeros))]
    edges = []
    for i, ((a1, a2), part, g) in enumerate(zip(c.angles, c.parts, c.genera), start=1):
        vertices.append(GraphVertex(f"C{i}", g, part))
        edges.append(GraphEdge((0, i), (-(a1 + a2 + 2), a1 + a2), "tail"))
    return ConfigGraph(tuple(vertices), tuple(edges))


def _graph_type2(c: TypeIIConfig) -> ConfigGraph:
    """Cycle of rational vertices R_j, one per block, with tails attached.

    Vertex order follows the cycle: for block j the opening pair-of-holes
    surface (if any), then R_j, then the figure-eight tails of block j.
    """
    cycle, blocks = c.cycle, c.blocks()
    K = len(blocks)
    vertices: list[GraphVertex] = []
    rational: list[int] = []
    holes_vertex: dict[int, int] = {}
    tails: list[list[tuple[int, int]]] = []  # per block: (vertex, cycle position)
    for j, block in enumerate(blocks):
        opener = cycle[block.start]
        if isinstance(opener, Surface):
            holes_vertex[j] = len(vertices)
            vertices.append(GraphVertex(f"S{block.start}", opener.genus, opener.interior))
        rational.append(len(vertices))
        vertices.append(GraphVertex(f"R{j}", 0, (c.newborn[j],)))
        tails.append([])
        for pos in block.fig8s:
            surf = cycle[pos]
            tails[j].append((len(vertices), pos))
            vertices.append(GraphVertex(f"S{pos}", surf.genus, surf.interior))

    edges: list[GraphEdge] = []
    for j, block in enumerate(blocks):
        prev = rational[(j - 1) % K]
        here = rational[j]
        opener = cycle[block.start]
        if isinstance(opener, Cylinder):
            edges.append(GraphEdge((prev, here), (-1, -1), "cylinder"))
        else:
            a, b = opener.d
            s = holes_vertex[j]
            # b feeds the block that closes at this surface, a the one it opens
            edges.append(GraphEdge((prev, s), (-(b + 2), b), "holes_in"))
            edges.append(GraphEdge((s, here), (a, -(a + 2)), "holes_out"))
        for vid, pos in tails[j]:
            ct = cycle[pos].node_total
            edges.append(GraphEdge((here, vid), (-(ct + 2), ct), "tail"))
    return ConfigGraph(tuple(vertices), tuple(edges))
