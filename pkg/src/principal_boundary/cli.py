"""Command line front end.

Every subcommand prints one JSON document (or an SVG for ``diagram``).
Exit status: 0 on success, 1 when the library rejects the input or a
validation report is negative, 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import configs, flatsurf, parity, residues, stratum, svg, twisted
from .errors import PrincipalBoundaryError


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_help(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


# ----------------------------------------------------------------------
# Flag parsing


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"{text!r} is not a rational number p/q") from None


def _integer(text: str) -> int:
    x = _rational(text)
    if x.denominator != 1:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    return int(x)


def _int_list(text: str) -> list[int]:
    if not text.strip():
        return []
    return [_integer(part) for part in text.split(",")]


def _point_arg(text: str):
    return residues.INF if text.strip().lower() in ("inf", "oo") else _rational(text)


def _pole_list(text: str) -> list[tuple[object, int]]:
    out = []
    for item in text.split(","):
        point, sep, order = item.partition(":")
        if not sep:
            raise argparse.ArgumentTypeError(f"pole {item!r} must look like point:order")
        out.append((_point_arg(point), _integer(order)))
    return out


def _point_list(text: str):
    """Divisor syntax ``point:order`` where order may be negative."""
    return _pole_list(text)


def _read_json(args):
    if args.json is not None:
        text = args.json
    elif args.input == "-":
        text = sys.stdin.read()
    elif args.input:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    else:
        raise UsageError("give --input FILE (or -) or --json TEXT")
    return json.loads(text)


def _add_input(p):
    p.add_argument("--input", help="JSON file, - for stdin")
    p.add_argument("--json", help="inline JSON document")


def _config_from(data):
    if "cycle" in data:
        return configs.TypeIIConfig.from_json(data)
    return configs.TypeIConfig.from_json(data)


def _stratum(args):
    return stratum.validate_stratum(args.kind, args.mu, allow_marked=args.allow_marked)


# ----------------------------------------------------------------------
# Subcommands


def cmd_stratum(args):
    s = _stratum(args)
    if args.components:
        return {"components": [c.value for c in stratum.sorted_labels(stratum.components(s))]}
    return {**s.to_json(), "genus": s.genus, "name": str(s)}


def cmd_enumerate_type1(args):
    s = _stratum(args)
    ps = [args.p] if args.p else range(1, s.genus + 1)
    found = [c for p in ps for c in configs.enumerate_type1(s, args.i1, args.i2, p)]
    return {"count": len(found), "configs": [c.to_json() for c in found]}


def cmd_enumerate_type2(args):
    s = _stratum(args)
    found = configs.enumerate_type2(s, args.designated)
    return {"count": len(found), "configs": [c.to_json() for c in found]}


def cmd_count_z(args):
    return {"count": configs.count_Z(args.m1, args.m2, args.poles)}


def cmd_boundary(args):
    c = _config_from(_read_json(args))
    t = twisted.build_type1(c) if isinstance(c, configs.TypeIConfig) else twisted.build_type2(c)
    return {"twisted": t.to_json(), "report": twisted.validate(t).to_json()}


def cmd_validate(args):
    if args.genus13:
        sig = json.loads(args.signatures) if args.signatures else None
        report = twisted.check_genus13(sig)
    else:
        report = twisted.validate(twisted.TwistedDiff.from_json(_read_json(args)))
    return report.to_json(), (0 if report.valid else 1)


def cmd_residues(args):
    if args.form:
        f = residues.parse_form(args.form)
    elif args.divisor:
        f = residues.RationalForm.make(args.divisor, args.scale)
    else:
        raise UsageError("give --form or --divisor")
    res = residues.residues(f)
    return {"form": f.to_json(),
            "residues": [{"point": residues.format_point(p), "residue": residues.format_rational(r)}
                         for p, r in res.items()],
            "sum": residues.format_rational(sum(res.values(), Fraction(0)))}


def cmd_solve_z(args):
    sols = residues.solve_Z(args.m1, args.m2, args.poles, args.sigma1, args.sigma2)
    return {"solutions": [{k: ("inf" if v is residues.INF else v.to_json()) for k, v in s.items()}
                          for s in sols]}


def _complex_from(args):
    if args.a1 is not None or args.a2 is not None:
        if args.a1 is None or args.a2 is None or len(args.a1) != len(args.a2):
            raise UsageError("--a1 and --a2 must be given together with equal lengths")
        return flatsurf.build_type1_surface(list(zip(args.a1, args.a2)))
    if args.c1 is not None or args.c2 is not None:
        if args.c1 is None or args.c2 is None:
            raise UsageError("--c1 and --c2 must be given together")
        return flatsurf.build_type2_surface(args.c1, args.c2)
    return flatsurf.DomainComplex.from_json(_read_json(args))


def cmd_surface(args):
    return _complex_from(args).to_json()


def cmd_analyze(args):
    report = flatsurf.analyze(_complex_from(args))
    return report.to_json(), (1 if report.issues else 0)


def cmd_parity(args):
    data = _read_json(args)
    c = _config_from(data["config"])
    b = parity.LabeledBoundary.of(c, data.get("labels", {}))
    result = parity.parity_type1(b) if isinstance(c, configs.TypeIConfig) else parity.parity_type2(b)
    out = result.to_json()
    if args.hyp:
        t = b.base
        if isinstance(c, configs.TypeIConfig):
            out["hyperelliptic"] = parity.hyp_type1(c, b.labels)
        else:
            out["hyperelliptic"] = parity.hyp_type2(t, b.labels)
    return out


def cmd_partition(args):
    data = _read_json(args)
    c = configs.TypeIConfig.from_json(data)
    s = stratum.validate_stratum("abelian", c.mu)
    part = parity.partition_boundary(s, c)
    return {"stratum": str(s),
            "partition": {label.value: part[label] for label in stratum.sorted_labels(part)}}


def cmd_q22(args):
    t = twisted.build_q22_boundary(args.case)
    report = twisted.validate(t)
    return {"case": args.case, "twisted": t.to_json(), "report": report.to_json()}, \
        (0 if report.valid else 1)


def cmd_diagram(args):
    return svg.emit_svg(_complex_from(args))


# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="principal-boundary",
                  description="Principal boundary of strata of differentials.")
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def stratum_flags(p, components=False):
        p.add_argument("--mu", type=_int_list, required=True, help="orders, e.g. 2,2")
        p.add_argument("--kind", default="abelian", choices=["abelian", "quadratic"])
        p.add_argument("--allow-marked", action="store_true")
        if components:
            p.add_argument("--components", action="store_true")

    p = sub.add_parser("stratum", help="genus and components of a stratum")
    stratum_flags(p, components=True)
    p.set_defaults(func=cmd_stratum)

    p = sub.add_parser("enumerate-type1", help="type I configurations")
    stratum_flags(p)
    p.add_argument("--i1", type=_integer, default=0)
    p.add_argument("--i2", type=_integer, default=1)
    p.add_argument("--p", type=_integer, default=0, help="number of saddles (0: all)")
    p.set_defaults(func=cmd_enumerate_type1)

    p = sub.add_parser("enumerate-type2", help="type II configurations")
    stratum_flags(p)
    p.add_argument("--designated", type=_int_list, required=True,
                   help="indices of the newborn zeros, e.g. 0,1")
    p.set_defaults(func=cmd_enumerate_type2)

    p = sub.add_parser("count-z", help="number of zero-residue differentials on P^1")
    p.add_argument("--m1", type=_integer, required=True)
    p.add_argument("--m2", type=_integer, required=True)
    p.add_argument("--poles", type=_int_list, required=True, help="pole orders, e.g. 2,2")
    p.set_defaults(func=cmd_count_z)

    p = sub.add_parser("boundary", help="twisted differential of a configuration")
    _add_input(p)
    p.set_defaults(func=cmd_boundary)

    p = sub.add_parser("validate", help="check a twisted differential")
    _add_input(p)
    p.add_argument("--genus13", action="store_true", help="check the built-in genus 13 quadratic boundary graph")
    p.add_argument("--signatures", help="JSON overriding component signatures for --genus13")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("residues", help="residues of a rational differential")
    p.add_argument("--form", help="e.g. '(z-1)*(z-2)/z^2'")
    p.add_argument("--divisor", type=_point_list, help="e.g. 1:1,2:1,0:-2")
    p.add_argument("--scale", type=_rational, default=Fraction(1))
    p.set_defaults(func=cmd_residues)

    p = sub.add_parser("solve-z", help="zero positions with vanishing residues")
    p.add_argument("--m1", type=_integer, required=True)
    p.add_argument("--m2", type=_integer, required=True)
    p.add_argument("--poles", type=_pole_list, required=True, help="e.g. 0:2,inf:2")
    p.add_argument("--sigma1", type=_point_arg)
    p.add_argument("--sigma2", type=_point_arg)
    p.set_defaults(func=cmd_solve_z)

    for name, func, helptext in (("surface", cmd_surface, "half-plane complex"),
                                 ("analyze", cmd_analyze, "cone angles, poles and genus"),
                                 ("diagram", cmd_diagram, "SVG drawing of a complex")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--a1", type=_int_list, help="type I angles a' per saddle")
        p.add_argument("--a2", type=_int_list, help="type I angles a'' per saddle")
        p.add_argument("--c1", type=_int_list, help="type (i) block angles c'")
        p.add_argument("--c2", type=_int_list, help="type (i) block angles c''")
        _add_input(p)
        p.set_defaults(func=func)

    p = sub.add_parser("parity", help="spin parity of a labeled boundary point")
    _add_input(p)
    p.add_argument("--hyp", action="store_true", help="also test the hyperelliptic shapes")
    p.set_defaults(func=cmd_parity)

    p = sub.add_parser("partition", help="components whose boundary meets a type I stratum")
    _add_input(p)
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("q22", help="boundary graphs of Q(2,2)")
    p.add_argument("--case", required=True, choices=list(twisted.Q22_CASES))
    p.set_defaults(func=cmd_q22)
    for p in sub.choices.values():
        p.add_argument("--out", help="write the result to FILE instead of stdout")
    return top


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    code = 0
    try:
        result = args.func(args)
        if isinstance(result, tuple):
            result, code = result
    except UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except (PrincipalBoundaryError, json.JSONDecodeError, OSError, KeyError, TypeError) as exc:
        result = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        code = 1
    text = result if isinstance(result, str) else json.dumps(result, separators=(",", ":")) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
