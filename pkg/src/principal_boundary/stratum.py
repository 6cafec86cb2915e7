"""Strata of abelian and quadratic differentials.

A stratum is recorded by its kind and the multiset of zero/pole orders at
the marked points.  The genus is derived from the degree of the canonical
bundle (or its square, for quadratic differentials).

>>> s = validate_stratum("abelian", [2, 2])
>>> s.genus
3
>>> sorted(label.value for label in components(s))
['hyperelliptic', 'odd']
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import DegreeParityError, OrderRangeError, UnsupportedError


class Kind(str, enum.Enum):
    ABELIAN = "abelian"
    QUADRATIC = "quadratic"


class ComponentLabel(str, enum.Enum):
    HYPERELLIPTIC = "hyperelliptic"
    ODD = "odd"
    EVEN = "even"
    NONHYPERELLIPTIC = "nonhyperelliptic"
    CONNECTED = "connected"


# Used to serialise label sets deterministically.
LABEL_ORDER = tuple(ComponentLabel)


def sorted_labels(labels):
    return [label for label in LABEL_ORDER if label in labels]


@dataclass(frozen=True)
class Stratum:
    kind: Kind
    orders: tuple[int, ...]
    genus: int

    @property
    def n(self) -> int:
        return len(self.orders)

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "orders": list(self.orders)}

    @classmethod
    def from_json(cls, data: dict, **kwargs) -> "Stratum":
        return validate_stratum(data["kind"], data["orders"], **kwargs)

    def __str__(self) -> str:
        letter = "H" if self.kind is Kind.ABELIAN else "Q"
        return f"{letter}({', '.join(map(str, self.orders))})"


def validate_stratum(kind, orders, *, allow_marked: bool = False,
                     meromorphic: bool = False) -> Stratum:
    """Check a signature and return the stratum with its genus.

    Order 0 entries (regular marked points) are refused unless
    ``allow_marked`` is set.  ``meromorphic`` lifts the lower bound on the
    orders entirely, which is what the components of a twisted differential
    need; the degree condition still applies.
    """
    kind = Kind(kind)
    orders = tuple(orders)
    if not orders:
        raise OrderRangeError("a signature needs at least one entry")
    for order in orders:
        if not isinstance(order, int) or isinstance(order, bool):
            raise OrderRangeError(f"order {order!r} is not an integer")

    if not meromorphic:
        floor = 1 if kind is Kind.ABELIAN else -1
        for order in orders:
            if order == 0 and allow_marked:
                continue
            if order < floor or (order == 0 and kind is Kind.QUADRATIC):
                raise OrderRangeError(
                    f"order {order} is not allowed in a {kind.value} stratum"
                    + ("" if allow_marked else " (marked points are disabled)"))
    elif not allow_marked and 0 in orders:
        raise OrderRangeError("order 0 requires allow_marked")

    total = sum(orders)
    if kind is Kind.ABELIAN:
        if total % 2 or total < -2:
            raise DegreeParityError(
                f"sum of orders {total} is not 2g-2 for an integer g >= 0")
        genus = (total + 2) // 2
    else:
        if total % 4 or total < -4:
            raise DegreeParityError(
                f"sum of orders {total} is not 4g-4 for an integer g >= 0")
        genus = (total + 4) // 4
    return Stratum(kind, orders, genus)


def spin_defined(s: Stratum) -> bool:
    return all(order % 2 == 0 for order in s.orders)


def is_minimal(s: Stratum) -> bool:
    """True for H(2g-2)."""
    return s.orders == (2 * s.genus - 2,)


def is_symmetric_pair(s: Stratum) -> bool:
    """True for H(g-1, g-1)."""
    return s.orders == (s.genus - 1, s.genus - 1)


def components(s: Stratum) -> frozenset[ComponentLabel]:
    """Connected components of an abelian stratum (Kontsevich-Zorich).

    The table below is a literal case list by genus; no attempt is made to
    collapse it into a formula.
    """
    if s.kind is not Kind.ABELIAN:
        raise UnsupportedError("component classification of quadratic strata is not supported")
    if any(order < 1 for order in s.orders):
        raise UnsupportedError("component classification needs genuine zeros (orders >= 1)")

    H, O, E, N, C = (ComponentLabel.HYPERELLIPTIC, ComponentLabel.ODD, ComponentLabel.EVEN,
                     ComponentLabel.NONHYPERELLIPTIC, ComponentLabel.CONNECTED)
    g = s.genus
    if g >= 4:
        if is_minimal(s):
            return frozenset({H, O, E})
        if is_symmetric_pair(s):
            return frozenset({H, O, E}) if g % 2 else frozenset({H, N})
        if spin_defined(s):
            return frozenset({O, E})
        return frozenset({C})
    if g == 3:
        if s.orders in ((4,), (2, 2)):
            # the even spin component coincides with the hyperelliptic one
            return frozenset({H, O})
        return frozenset({C})
    # g == 2: H(2) and H(1,1) are connected
    return frozenset({C})
