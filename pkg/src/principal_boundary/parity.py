"""Spin parity and hyperelliptic membership of boundary points.

The parity of a boundary point is assembled from the parities of its
non-rational components, which are supplied as labels: the component of the
lower genus stratum each of them lies in.  Nothing here computes theta
characteristics.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping

from .configs import Surface, TypeIConfig, TypeIIConfig
from .errors import ConfigError, ParityUndefinedError, WrongStratumError
from .stratum import (ComponentLabel, Kind, Stratum, components, is_minimal,
                      is_symmetric_pair, spin_defined, validate_stratum)
from .twisted import TwistedDiff, build_type1, build_type2

H, ODD, EVEN, NONHYP, CONN = (ComponentLabel.HYPERELLIPTIC, ComponentLabel.ODD,
                              ComponentLabel.EVEN, ComponentLabel.NONHYPERELLIPTIC,
                              ComponentLabel.CONNECTED)
_BIT_NAME = {0: "even", 1: "odd"}


@dataclass(frozen=True)
class Label:
    """A component label, with the spin parity bit where one is known."""

    value: ComponentLabel
    parity: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "value", ComponentLabel(self.value))
        implied = {ODD: 1, EVEN: 0}.get(self.value)
        if implied is not None:
            if self.parity not in (None, implied):
                raise ConfigError(f"{self.value.value} label cannot carry parity {self.parity}")
            object.__setattr__(self, "parity", implied)
        elif self.parity not in (None, 0, 1):
            raise ConfigError(f"parity bit must be 0 or 1, got {self.parity!r}")

    def bit(self) -> int:
        if self.parity is None:
            raise ParityUndefinedError(
                f"a {self.value.value} label needs an explicit parity bit")
        return self.parity

    def flipped(self) -> "Label":
        if self.value in (ODD, EVEN):
            return Label(EVEN if self.value is ODD else ODD)
        return Label(self.value, 1 - self.bit())

    def to_json(self) -> str:
        if self.value in (ODD, EVEN) or self.parity is None:
            return self.value.value
        return f"{self.value.value}:{_BIT_NAME[self.parity]}"

    @classmethod
    def parse(cls, text: str) -> "Label":
        name, _, bit = str(text).partition(":")
        try:
            value = ComponentLabel(name)
        except ValueError:
            raise ConfigError(f"unknown component label {name!r}") from None
        if not bit:
            return cls(value)
        bits = {"even": 0, "odd": 1, "0": 0, "1": 1}
        if bit not in bits:
            raise ConfigError(f"unknown parity {bit!r}")
        return cls(value, bits[bit])


def admissible_labels(orders) -> frozenset[ComponentLabel]:
    """Labels a component with these zero orders may carry.

    Regular marked points (order 0) are ignored.  In genus at most two every
    minimal or symmetric stratum is entirely hyperelliptic, so that label is
    allowed there as well as ``connected``.
    """
    zeros = tuple(o for o in orders if o != 0)
    if not zeros:
        return frozenset({CONN, H})
    s = validate_stratum(Kind.ABELIAN, zeros)
    out = set(components(s))
    if s.genus <= 2 and (is_minimal(s) or is_symmetric_pair(s)):
        out.add(H)
    return frozenset(out)


def _vertex_key(t: TwistedDiff, i: int) -> str:
    return t.vertices[i].name or str(i)


@dataclass(frozen=True)
class LabeledBoundary:
    """A boundary twisted differential with a label on every non-rational vertex.

    ``config`` is the configuration the graph was built from.  The type II
    parity formula needs the angle split c' of each figure-eight, which the
    graph alone does not remember.
    """

    base: TwistedDiff
    labels: Mapping[str, Label]
    config: TypeIConfig | TypeIIConfig | None = None

    def __post_init__(self):
        labels = {k: (v if isinstance(v, Label) else Label.parse(v)) for k, v in self.labels.items()}
        object.__setattr__(self, "labels", labels)
        t = self.base
        wanted = {_vertex_key(t, i) for i, v in enumerate(t.vertices) if v.genus > 0}
        extra = set(labels) - wanted
        if extra:
            raise ConfigError(f"labels on unknown or rational vertices: {sorted(extra)}")
        missing = wanted - set(labels)
        if missing:
            raise ConfigError(f"unlabeled non-rational vertices: {sorted(missing)}")
        for i, v in enumerate(t.vertices):
            key = _vertex_key(t, i)
            if key in labels:
                allowed = admissible_labels([o for o in t.vertex_orders(i) if o >= 0])
                if labels[key].value not in allowed:
                    raise ConfigError(
                        f"vertex {key} cannot carry {labels[key].value.value}; "
                        f"its stratum admits {sorted(x.value for x in allowed)}")

    @classmethod
    def of(cls, c: TypeIConfig | TypeIIConfig, labels: Mapping[str, Label | str]) -> "LabeledBoundary":
        base = build_type1(c) if isinstance(c, TypeIConfig) else build_type2(c)
        return cls(base, labels, c)

    def with_label(self, key: str, label: Label) -> "LabeledBoundary":
        labels = dict(self.labels)
        labels[key] = label
        return LabeledBoundary(self.base, labels, self.config)

    def to_json(self) -> dict:
        out = {"base": self.base.to_json(),
               "labels": {k: v.to_json() for k, v in sorted(self.labels.items())}}
        if self.config is not None:
            out["config"] = self.config.to_json()
            out["type"] = "I" if isinstance(self.config, TypeIConfig) else "II"
        return out


@dataclass(frozen=True)
class ParityResult:
    value: str  # even, odd, split
    rule: str = "sum"
    overlap: bool = False  # the type (i) formula and the split rule both applied
    notes: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        return {"parity": self.value, "rule": self.rule, "overlap": self.overlap,
                "notes": list(self.notes)}


def _sum_bits(b: LabeledBoundary) -> int:
    return sum(label.bit() for _, label in sorted(b.labels.items())) % 2


def _require_spin_mu(mu) -> None:
    odd = [m for m in mu if m % 2]
    if odd:
        raise ParityUndefinedError(f"spin parity needs even zero orders, got {list(mu)}")


def parity_type1(b: LabeledBoundary) -> ParityResult:
    t = b.base
    _require_spin_mu(t.mu)
    for e in t.edges:
        if any(o % 2 for o in e.orders):
            raise ParityUndefinedError(f"node orders {e.orders} are odd")
    return ParityResult(_BIT_NAME[_sum_bits(b)], "sum")


def _cycle_orders(c: TypeIIConfig) -> list[int]:
    """Orders at the nodes lying on the cycle, on the surface side when present."""
    out = []
    for e in c.cycle:
        if isinstance(e, Surface):
            if e.is_holes:
                out.extend(e.d)
        else:
            out.append(-1)
    return out


def parity_type2(b: LabeledBoundary) -> ParityResult:
    """Parity of a type II boundary point.

    Precedence: the type (i) formula wins when every block has cylinders at
    both ends.  Those cycles have only simple polar nodes, so the split rule
    would also apply; the result then reports ``overlap``.
    """
    c = b.config
    if not isinstance(c, TypeIIConfig):
        raise ParityUndefinedError("type II parity needs the configuration the graph came from")
    _require_spin_mu(c.mu)
    patterns = c.block_patterns()
    cyc = _cycle_orders(c)
    if all(p == "i" for p in patterns):
        total = _sum_bits(b)
        for s in c.surfaces():
            cp, cpp = s.d
            if (cp + cpp) % 2:
                raise ParityUndefinedError(f"c' + c'' = {cp + cpp} is odd")
            total += cp + 1
        total += 1
        return ParityResult(_BIT_NAME[total % 2], "type-i", overlap=True,
                            notes=("all cycle nodes are simple poles, so the split rule also applies",))
    if all(o % 2 == 0 for o in cyc):
        return ParityResult(_BIT_NAME[_sum_bits(b)], "sum")
    if all(o % 2 for o in cyc):
        return ParityResult("split", "split")
    raise ParityUndefinedError("cycle node orders mix parities")


# ----------------------------------------------------------------------
# Hyperelliptic shapes


def _genus_of(mu) -> int:
    return (sum(mu) + 2) // 2


def _check_hyp_stratum(mu) -> int:
    g = _genus_of(mu)
    if tuple(mu) not in ((2 * g - 2,), (g - 1, g - 1)) or g < 2:
        raise WrongStratumError(f"hyperelliptic shapes are defined for H(2g-2) and H(g-1,g-1), not {tuple(mu)}")
    return g


def _is_hyp(labels, key) -> bool:
    label = labels.get(key)
    if label is None:
        return False
    if not isinstance(label, Label):
        label = Label.parse(label)
    return label.value is H


def hyp_type1(c: TypeIConfig, labels: Mapping[str, Label | str]) -> bool:
    """Does the boundary point lie in the closure of the hyperelliptic component?

    ``labels`` maps tail names C1..Cp to their component labels.
    """
    g = _genus_of(c.mu)
    if tuple(c.mu) != (g - 1, g - 1):
        raise WrongStratumError(f"type I hyperelliptic test needs H(g-1,g-1), not {tuple(c.mu)}")
    if c.p == 1:
        return c.angles[0] == (g - 1, g - 1) and _is_hyp(labels, "C1")
    if c.p == 2:
        return all(a == b == gi - 1 and _is_hyp(labels, f"C{i}")
                   for i, ((a, b), gi) in enumerate(zip(c.angles, c.genera), start=1))
    return False


def hyp_type2(t: TwistedDiff, labels: Mapping[str, Label | str]) -> bool:
    """Match the graph against the hyperelliptic degeneration shapes.

    For H(2g-2): one curve meeting R twice; R with a self-node and one tail;
    or a tail plus a curve meeting R twice.  For H(g-1,g-1): a triangle
    R1 R2 C, or two curves each meeting both R1 and R2 once.  Every curve
    meeting R twice must have equal orders there and every non-rational
    curve must be labeled hyperelliptic.
    """
    g = _check_hyp_stratum(t.mu)
    rational = [i for i, v in enumerate(t.vertices) if v.genus == 0]
    curves = [i for i, v in enumerate(t.vertices) if v.genus > 0]
    if any(t.vertices[i].markings for i in curves):
        return False
    if not all(_is_hyp(labels, _vertex_key(t, i)) for i in curves):
        return False
    if any(sum(o for o in t.node_orders(i) if o > 0) != 2 * t.vertices[i].genus - 2 for i in curves):
        return False
    pair = Counter(tuple(sorted(e.v)) for e in t.edges)

    def links(i, j):
        return pair.get(tuple(sorted((i, j))), 0)

    def equal_orders(i):
        return len(set(t.node_orders(i))) == 1

    if len(t.mu) == 1:
        if len(rational) != 1:
            return False
        r = rational[0]
        double = [i for i in curves if links(r, i) == 2]
        single = [i for i in curves if links(r, i) == 1]
        if len(t.edges) != 2 * len(double) + len(single) + links(r, r):
            return False
        if len(curves) == 1 and double:
            return links(r, r) == 0 and equal_orders(double[0])
        if len(curves) == 1 and single:
            return links(r, r) == 1
        if len(curves) == 2 and len(double) == 1 and len(single) == 1:
            return links(r, r) == 0 and equal_orders(double[0])
        return False

    if len(rational) != 2 or any(not t.vertices[r].markings for r in rational):
        return False
    r1, r2 = rational
    if links(r1, r1) or links(r2, r2):
        return False
    if len(curves) == 1:
        c1 = curves[0]
        return (len(t.edges) == 3 and links(r1, r2) == 1 and links(r1, c1) == 1
                and links(r2, c1) == 1 and equal_orders(c1))
    if len(curves) == 2:
        return (len(t.edges) == 4 and links(r1, r2) == 0
                and all(links(r, c) == 1 for r in rational for c in curves)
                and all(equal_orders(c) for c in curves))
    return False


# ----------------------------------------------------------------------
# Partition of a type I boundary


def _special_shape(c: TypeIConfig, g: int) -> bool:
    if c.p == 1:
        return c.angles[0] == (g - 1, g - 1)
    if c.p == 2:
        return all(a == b == gi - 1 for (a, b), gi in zip(c.angles, c.genera))
    return False


def partition_boundary(s: Stratum, c: TypeIConfig) -> dict[ComponentLabel, bool]:
    """Which components' boundaries meet Delta(mu, C).

    Returns one entry per component of ``s``.  In genus three the even
    component of H(2,2) is the hyperelliptic one, so the generic answer is
    folded into the table of that stratum.
    """
    present = components(s)
    g = s.genus
    if present == {CONN}:
        return {CONN: True}
    if tuple(c.mu) != s.orders:
        raise ConfigError("configuration belongs to a different stratum")
    special = is_symmetric_pair(s) and _special_shape(c, g)
    if is_symmetric_pair(s):
        if g % 2:
            hits = {H, ODD, EVEN} if special else {ODD, EVEN}
        else:
            hits = {H, NONHYP} if special else {NONHYP}
    elif spin_defined(s):
        hits = {ODD, EVEN}
    else:
        hits = {CONN}
    if EVEN not in present:
        # genus three: even spin and hyperelliptic coincide
        if EVEN in hits and special:
            hits.add(H)
        hits.discard(EVEN)
    return {label: label in hits for label in present}
