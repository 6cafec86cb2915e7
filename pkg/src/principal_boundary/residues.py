"""Exact residues of rational 1-forms on P^1.

A form is ``scale * prod (z - p)^n dz`` over finite points, with the order
at infinity fixed by the degree condition (all orders sum to -2).  Residues
come from truncated Laurent expansions in exact arithmetic; infinity is
handled through the chart w = 1/z.

>>> f = parse_form("(z-1)*(z+1)/z^2 dz")
>>> residue_at(f, 0)
Fraction(0, 1)
>>> residue_sum(parse_form("(z-1)*(z-2)/z^2"))
Fraction(0, 1)
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import sympy

from .errors import (ConfigError, DegreeMismatchError, NotAPoleError,
                     UnderDeterminedError)


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def to_point(value) -> Fraction | _Infinity:
    if value is INF:
        return INF
    if isinstance(value, str) and value.strip().lower() in ("inf", "oo", "infinity", "∞"):
        return INF
    try:
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ConfigError(f"{value!r} is not an exact rational or inf") from exc


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_point(p) -> str:
    return "inf" if p is INF else format_rational(p)


@dataclass(frozen=True)
class RationalForm:
    scale: Fraction
    divisor: tuple[tuple[Fraction | _Infinity, int], ...]

    @classmethod
    def make(cls, divisor: Iterable, scale=1) -> "RationalForm":
        """Normalise a divisor; the order at infinity is implied if omitted."""
        scale = Fraction(scale)
        if scale == 0:
            raise ConfigError("the scale of a form must be nonzero")
        finite: dict[Fraction, int] = {}
        at_inf = None
        for point, order in divisor:
            point = to_point(point)
            order = int(order)
            if point is INF:
                if at_inf is not None:
                    raise ConfigError("infinity listed twice")
                at_inf = order
            else:
                if point in finite:
                    raise ConfigError(f"point {format_rational(point)} listed twice")
                finite[point] = order
        implied = -2 - sum(finite.values())
        if at_inf is not None and at_inf != implied:
            raise DegreeMismatchError(
                f"orders sum to {sum(finite.values()) + at_inf}, a form on P^1 needs -2")
        entries = [(p, n) for p, n in sorted(finite.items()) if n != 0]
        if implied != 0:
            entries.append((INF, implied))
        return cls(scale, tuple(entries))

    def order_at(self, q) -> int:
        q = to_point(q)
        for p, n in self.divisor:
            if p is q or (p is not INF and q is not INF and p == q):
                return n
        return 0

    def poles(self) -> list:
        return [p for p, n in self.divisor if n < 0]

    def finite(self) -> list[tuple[Fraction, int]]:
        return [(p, n) for p, n in self.divisor if p is not INF]

    def to_json(self) -> dict:
        return {"scale": format_rational(self.scale),
                "divisor": [[format_point(p), n] for p, n in self.divisor]}

    def __str__(self) -> str:
        num, den = [], []
        for p, n in self.finite():
            base = "z" if p == 0 else (f"(z-{format_rational(p)})" if p > 0
                                       else f"(z+{format_rational(-p)})")
            (num if n > 0 else den).append(base if abs(n) == 1 else f"{base}^{abs(n)}")
        text = "*".join(num) or "1"
        if den:
            text += "/" + ("*".join(den) if len(den) == 1 else "(" + "*".join(den) + ")")
        if self.scale != 1:
            text = f"{format_rational(self.scale)}*{text}"
        return text + " dz"


# ----------------------------------------------------------------------
# Truncated power series over any coefficient ring


def binomial_series(c, n: int, terms: int, one=Fraction(1)) -> list:
    """Coefficients of (c + w)^n up to w^(terms-1); c must be invertible if n < 0."""
    out = []
    coeff = one
    for j in range(terms):
        if n >= 0 and j > n:
            out.append(0 * one)
            continue
        out.append(coeff * c ** (n - j))
        coeff = coeff * (n - j) / (j + 1)
    return out


def series_mul(a: Sequence, b: Sequence, terms: int) -> list:
    out = [0 * a[0]] * terms
    for i, x in enumerate(a[:terms]):
        if x == 0:
            continue
        for j, y in enumerate(b[:terms - i]):
            out[i + j] = out[i + j] + x * y
    return out


def _series_product(factors, terms: int, one) -> list:
    acc = [one] + [0 * one] * (terms - 1)
    for c, n in factors:
        acc = series_mul(acc, binomial_series(c, n, terms, one), terms)
    return acc


def _local_coefficient(others, q, k: int, one):
    """Coefficient of w^(k-1) in prod (w + q - p)^n over ``others``."""
    return _series_product([(q - p, n) for p, n in others], k, one)[k - 1]


def _infinity_coefficient(finite, one):
    """Coefficient of w^(D+1) in prod (1 - p w)^n, D the finite degree."""
    D = sum(n for _, n in finite)
    terms = D + 2
    if terms <= 0:
        return 0 * one
    acc = [one] + [0 * one] * (terms - 1)
    for p, n in finite:
        # (1 - p w)^n = (-p)^n (w - 1/p)^n, avoid division by writing it directly
        series = []
        coeff = one
        for j in range(terms):
            if n >= 0 and j > n:
                series.append(0 * one)
                continue
            series.append(coeff * (-p) ** j)
            coeff = coeff * (n - j) / (j + 1)
        acc = series_mul(acc, series, terms)
    return acc[terms - 1]


def residue_at(f: RationalForm, q) -> Fraction:
    q = to_point(q)
    order = f.order_at(q)
    if order >= 0:
        raise NotAPoleError(f"{format_point(q)} is not a pole (order {order})")
    finite = f.finite()
    one = Fraction(1)
    if q is INF:
        return -f.scale * _infinity_coefficient(finite, one)
    others = [(p, n) for p, n in finite if p != q]
    return f.scale * _local_coefficient(others, q, -order, one)


def residues(f: RationalForm) -> dict:
    return {p: residue_at(f, p) for p in f.poles()}


def residue_sum(f: RationalForm) -> Fraction:
    return sum(residues(f).values(), Fraction(0))


# ----------------------------------------------------------------------
# Parsing


_Z = sympy.Symbol("z")


def parse_form(text: str) -> RationalForm:
    """Parse ``"(z-1)^1*(z+1)^1/z^2"`` style text, optional trailing ``dz``.

    The expression must split into linear factors over the rationals.
    """
    body = re.sub(r"\s*\*?\s*d\s*z\s*$", "", text.strip())
    if not body:
        raise ConfigError("empty form")
    try:
        expr = sympy.parse_expr(body.replace("^", "**"), local_dict={"z": _Z},
                                evaluate=True)
    except (SyntaxError, TypeError, ValueError, sympy.SympifyError) as exc:
        raise ConfigError(f"cannot parse form {text!r}") from exc
    if expr.free_symbols - {_Z}:
        raise ConfigError(f"unknown symbols in {text!r}")
    num, den = sympy.fraction(sympy.together(expr))
    if num == 0:
        raise ConfigError("the zero form has no divisor")
    scale = Fraction(1)
    divisor: dict[Fraction, int] = {}
    for part, sign in ((num, 1), (den, -1)):
        try:
            poly = sympy.Poly(part, _Z, domain="QQ")
        except (sympy.PolynomialError, sympy.polys.polyerrors.CoercionFailed) as exc:
            raise ConfigError(f"{text!r} is not a rational function of z") from exc
        lead, factors = sympy.factor_list(poly)
        scale *= Fraction(str(lead)) ** sign
        for poly, mult in factors:
            if poly.degree() != 1:
                raise ConfigError(f"factor {poly.as_expr()} is not linear over Q")
            a, b = poly.all_coeffs()
            scale *= Fraction(str(a)) ** (sign * mult)
            root = -Fraction(str(b)) / Fraction(str(a))
            divisor[root] = divisor.get(root, 0) + sign * mult
    return RationalForm.make(list(divisor.items()), scale)


def parse_divisor(items) -> RationalForm:
    """JSON divisor list ``[[point, order], ...]`` or ``{"scale", "divisor"}``."""
    if isinstance(items, dict):
        return RationalForm.make(items["divisor"], items.get("scale", 1))
    return RationalForm.make(items)


# ----------------------------------------------------------------------
# The zero-residue locus


@dataclass(frozen=True)
class AlgebraicNumber:
    """A root given by its minimal polynomial and an isolating region.

    Rational roots carry ``value``; real ones an interval ``(lo, hi)``;
    non-real ones a box ``((re_lo, im_lo), (re_hi, im_hi))``.
    """
    minpoly: tuple[Fraction, ...]  # coefficients, highest degree first
    value: Fraction | None = None
    interval: tuple[Fraction, Fraction] | None = None
    box: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]] | None = None
    numeric: object = field(default=None, compare=False, repr=False)

    @property
    def is_rational(self) -> bool:
        return self.value is not None

    def sort_key(self):
        if self.value is not None:
            return (0, self.value, 0)
        if self.interval is not None:
            return (1, self.interval[0], self.interval[1])
        return (2, self.box[0][0], self.box[0][1])

    def to_json(self):
        if self.value is not None:
            return format_rational(self.value)
        poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in self.minpoly],
                          sympy.Symbol("x"))
        out = {"minpoly": str(poly.as_expr())}
        if self.interval is not None:
            out["interval"] = [format_rational(x) for x in self.interval]
        else:
            (a, b), (c, d) = self.box
            out["box"] = [[format_rational(a), format_rational(b)],
                          [format_rational(c), format_rational(d)]]
        return out

    def approx(self) -> complex:
        if self.value is not None:
            return complex(self.value)
        return complex(self.numeric)

    def contains(self, z: complex) -> bool:
        if self.interval is not None:
            lo, hi = self.interval
            return abs(z.imag) < 1e-20 and float(lo) <= z.real <= float(hi)
        (a, b), (c, d) = self.box
        return float(a) <= z.real <= float(c) and float(b) <= z.imag <= float(d)


def _fraction(x) -> Fraction:
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))


def _roots_of(poly: sympy.Poly) -> list[AlgebraicNumber]:
    """Every distinct complex root of a univariate rational polynomial."""
    out = []
    _, factors = sympy.factor_list(poly)
    for factor, _mult in factors:
        factor = sympy.Poly(factor, poly.gen)
        lc = factor.LC()
        coeffs = tuple(_fraction(c / lc) for c in factor.all_coeffs())
        if factor.degree() == 1:
            out.append(AlgebraicNumber(coeffs, value=-coeffs[1]))
            continue
        real, complex_ = factor.intervals(all=True, sqf=True, eps=sympy.Rational(1, 10**6))
        found = [AlgebraicNumber(coeffs, interval=(_fraction(lo), _fraction(hi)))
                 for lo, hi in real]
        for lo, hi in complex_:
            (a, b), (c, d) = lo.as_real_imag(), hi.as_real_imag()
            found.append(AlgebraicNumber(coeffs, box=((_fraction(a), _fraction(b)),
                                                      (_fraction(c), _fraction(d)))))
        # high-precision approximations, used only to pair coordinates up
        approx = factor.nroots(n=50, maxsteps=500)
        for root in found:
            close = [z for z in approx if root.contains(complex(z))]
            if len(close) != 1:
                raise ArithmeticError("could not pair a root with its isolating region")
            object.__setattr__(root, "numeric", close[0])
        out.extend(found)
    return sorted(out, key=AlgebraicNumber.sort_key)


def solve_Z(m1: int, m2: int, poles: Sequence, sigma1=None, sigma2=None) -> list[dict]:
    """Zero positions making every finite-pole residue vanish.

    ``poles`` is a list of (point, order) with order n >= 2 meaning a pole
    of order n (so the form has divisor m1*s1 + m2*s2 - sum n*q).  Unknown
    zeros are those passed as None; the fixed points must pin down the
    Moebius freedom, so at least three of them are required.  Each solution
    maps "sigma1" and "sigma2" to an AlgebraicNumber.
    """
    if m1 < 1 or m2 < 1:
        raise ConfigError("zero orders must be at least 1")
    poles = [(to_point(p), int(n)) for p, n in poles]
    if not poles or any(n < 2 for _, n in poles):
        raise ConfigError("pole orders must be at least 2")
    if m1 + m2 - sum(n for _, n in poles) != -2:
        raise DegreeMismatchError("m1 + m2 - sum(n) must be -2")
    fixed_points = [p for p, _ in poles]
    if len(set(map(repr, fixed_points))) != len(fixed_points):
        raise ConfigError("pole positions must be distinct")

    s1, s2 = sympy.symbols("s1 s2")
    unknown = []
    zeros = []
    fixed_sigmas = {}
    for name, sym, m, given in (("sigma1", s1, m1, sigma1), ("sigma2", s2, m2, sigma2)):
        if given is None:
            unknown.append((name, sym))
            zeros.append((sym, m))
        else:
            point = to_point(given)
            if any(point is p or (point is not INF and p is not INF and point == p)
                   for p in fixed_points):
                raise ConfigError(f"{name} collides with a fixed point")
            fixed_points.append(point)
            fixed_sigmas[name] = point
            zeros.append((point, m))
    if len(fixed_points) < 3:
        raise UnderDeterminedError(
            "fewer than three fixed points leave a Moebius family of solutions")
    if not unknown:
        raise UnderDeterminedError("nothing to solve: both zeros are fixed")

    # a zero at infinity is an explicit point, not a factor
    finite_zeros = [(p, m) for p, m in zeros if p is not INF]
    syms = [sym for _, sym in unknown]
    conditions = [c for c in _residue_conditions(finite_zeros, poles, syms) if not c.is_zero]

    # exclude collisions with fixed points and between the unknowns
    finite_fixed = [p for p in fixed_points if p is not INF]
    guard = sympy.Integer(1)
    for sym in syms:
        for p in finite_fixed:
            guard *= sym - sympy.Rational(p.numerator, p.denominator)
    if len(syms) == 2:
        guard *= s1 - s2

    if not conditions:
        raise UnderDeterminedError("the residue conditions are vacuous")
    solutions = _solve_system(conditions, guard, syms)
    out = []
    for sol in solutions:
        entry = {}
        for name, sym in (("sigma1", s1), ("sigma2", s2)):
            if name in fixed_sigmas:
                p = fixed_sigmas[name]
                entry[name] = p if p is INF else AlgebraicNumber((Fraction(1), -p), value=p)
            else:
                entry[name] = sol[sym]
        out.append(entry)
    return out


def _residue_conditions(zeros, poles, syms):
    """Residue at each finite pole as a polynomial in the unknown zeros."""
    one = sympy.Integer(1)

    def lift(p):
        if isinstance(p, sympy.Symbol):
            return p
        return sympy.Rational(p.numerator, p.denominator)

    points = [(lift(p), m) for p, m in zeros] + [(lift(p), -n) for p, n in poles if p is not INF]
    out = []
    for k, (q, n) in enumerate(poles):
        if q is INF:
            continue
        qs = lift(q)
        others = [(p, m) for p, m in points if not (p is not None and not isinstance(p, sympy.Symbol)
                                                    and p == qs)]
        coeff = _local_coefficient(others, qs, n, one)
        num, _ = sympy.fraction(sympy.together(sympy.expand(coeff)))
        out.append(sympy.Poly(sympy.expand(num), *syms, domain="QQ"))
    return out


def _solve_system(conditions, guard, syms) -> list[dict]:
    t = sympy.Symbol("t")
    polys = [c.as_expr() for c in conditions] + [sympy.expand(1 - t * guard)]
    basis = sympy.groebner(polys, t, *syms, order="lex", domain="QQ")
    eliminated = [g for g in basis.exprs if t not in g.free_symbols]
    if eliminated == [1] or any(g.is_number and g != 0 for g in eliminated):
        return []
    if not eliminated:
        raise UnderDeterminedError("the solution set is not finite")

    candidates = {}
    for sym in syms:
        order = [s for s in syms if s != sym] + [sym]
        sub = sympy.groebner(eliminated, *order, order="lex", domain="QQ")
        uni = [g for g in sub.exprs if g.free_symbols <= {sym}]
        if not uni:
            raise UnderDeterminedError("the solution set is not finite")
        candidates[sym] = _roots_of(sympy.Poly(uni[-1], sym))

    if len(syms) == 1:
        return [{syms[0]: r} for r in candidates[syms[0]]]

    a, b = syms
    out = []
    for ra in candidates[a]:
        for rb in candidates[b]:
            if _is_common_root(eliminated, {a: ra, b: rb}):
                out.append({a: ra, b: rb})
    return sorted(out, key=lambda d: (d[a].sort_key(), d[b].sort_key()))


def _is_common_root(polys, assignment) -> bool:
    if all(r.is_rational for r in assignment.values()):
        subs = {s: sympy.Rational(r.value.numerator, r.value.denominator)
                for s, r in assignment.items()}
        return all(p.subs(subs) == 0 for p in polys)
    syms = list(assignment)
    point = [r.numeric if r.numeric is not None else sympy.Rational(r.value.numerator,
                                                                      r.value.denominator)
             for r in assignment.values()]
    point = [sympy.N(x, 50) for x in point]
    for p in polys:
        value = sympy.Poly(p, *syms).eval(dict(zip(syms, point)))
        scale = 1 + sum(abs(complex(c)) for c in sympy.Poly(p, *syms).coeffs())
        if abs(complex(sympy.N(value, 50))) > 1e-25 * scale:
            return False
    return True


def substitute(m1: int, m2: int, poles: Sequence, solution: dict) -> RationalForm:
    """The form of a rational solution (for exact re-checking)."""
    divisor = [(solution["sigma1"].value if isinstance(solution["sigma1"], AlgebraicNumber)
                else solution["sigma1"], m1),
               (solution["sigma2"].value if isinstance(solution["sigma2"], AlgebraicNumber)
                else solution["sigma2"], m2)]
    divisor += [(to_point(p), -int(n)) for p, n in poles]
    return RationalForm.make(divisor)
