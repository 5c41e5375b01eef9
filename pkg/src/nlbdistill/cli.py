"""Command-line interface: ``nlb <group> <command> [options]``.

Exit status is 0 on success, 1 when a box fails validation or a computation
is rejected (signalling, domain violations), and 2 on usage or input errors.
Boxes and protocols travel as JSON, so commands compose through pipes::

    nlb wire run --protocol ndp2 --ghz-noise 1/2,1/4 | nlb ineq eval --ineq class2
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

from . import io as nio
from .boxes import (
    InputDomain,
    LocalVertexParams,
    box_from_parity_poly,
    class_box,
    correlated_box,
    ghz_box,
    local_vertex,
    mix,
    noisy_class_box,
    noisy_ghz,
    restrict_domain,
    validate,
)
from .curves import CurveSpec, CurveTarget, curve_emit
from .errors import FormatError, NLBError, RangeError
from .fourier import BooleanFunction, nonadaptive_value, parity_bound, spectrum
from .gf2 import GF2Poly3
from .inequalities import builtin_inequality, eval_inequality
from .rational import format_float, format_rational, parse_rational
from .search import FinalMode, SearchSpaceSpec, WiringMode, ghz_search_depth2, search_report
from .wiring import named_protocol, wire, wire_with_sink

__all__ = ["main", "build_parser"]

# searches larger than this need --allow-slow
_SLOW_SEARCH = 10 ** 8


class UsageError(Exception):
    pass


def _read_text(path: str) -> tuple[str, str]:
    if path == "-":
        return sys.stdin.read(), "<stdin>"
    try:
        return Path(path).read_text(encoding="utf-8"), path
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_json(path: str):
    text, source = _read_text(path)
    return nio.loads(text, source)


def _emit(text: str, out: str | None) -> None:
    if out and out != "-":
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _num(q, args) -> str:
    return format_float(q) if getattr(args, "float", False) else format_rational(q)


def _pair(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"expected two comma-separated rationals, got {text!r}")
    return tuple(parse_rational(p) for p in parts)


def _class_id(text: str):
    return "c" if text.lower() == "c" else int(text)


def _box_arg(args) -> "object":
    return nio.box_from_dict(_load_json(args.box))


# box

def cmd_box_build(args) -> int:
    domain = InputDomain.parse(args.domain) if args.domain else None
    if args.ghz:
        box = ghz_box(domain or InputDomain.EVEN_PARITY)
    elif args.noisy_ghz:
        box = noisy_ghz(*_pair(args.noisy_ghz))
    elif args.noisy_class:
        if args.delta is None:
            raise UsageError("--noisy-class needs --delta")
        box = noisy_class_box(_class_id(args.noisy_class), parse_rational(args.delta))
    elif args.class_id:
        box = class_box(_class_id(args.class_id))
    elif args.correlated:
        box = correlated_box(domain or InputDomain.FULL)
    elif args.poly:
        box = box_from_parity_poly(GF2Poly3.parse(args.poly), domain or InputDomain.FULL)
    elif args.local:
        bits = [int(b) for b in args.local.split(",")]
        if len(bits) != 6:
            raise UsageError("--local needs six bits: iota,kappa,mu,nu,sigma,tau")
        box = local_vertex(LocalVertexParams(*bits))
    else:
        raise UsageError("choose one of --ghz, --noisy-ghz, --class, --noisy-class, --correlated, --poly, --local")
    if domain is not None and box.domain is not domain:
        box = restrict_domain(box, domain)
    _emit(nio.dumps(nio.box_to_dict(box, args.float)), args.out)
    return 0


def cmd_box_validate(args) -> int:
    report = validate(_box_arg(args))
    if report.ok:
        print("ok")
        return 0
    for issue in report:
        print(issue)
    return 1


def cmd_box_restrict(args) -> int:
    box = restrict_domain(_box_arg(args), InputDomain.parse(args.domain))
    _emit(nio.dumps(nio.box_to_dict(box, args.float)), args.out)
    return 0


def cmd_box_mix(args) -> int:
    comps = []
    for spec in args.component:
        weight, sep, path = spec.partition(":")
        if not sep:
            raise UsageError(f"components look like WEIGHT:FILE, got {spec!r}")
        comps.append((parse_rational(weight), nio.box_from_dict(_load_json(path))))
    _emit(nio.dumps(nio.box_to_dict(mix(comps), args.float)), args.out)
    return 0


# ineq

def _inequality(name: str):
    try:
        return builtin_inequality(name)
    except ValueError:
        if name != "-" and not Path(name).exists():
            raise UsageError(f"{name!r} is neither a built-in inequality nor a file") from None
    return nio.inequality_from_dict(_load_json(name))


def cmd_ineq_eval(args) -> int:
    print(_num(eval_inequality(_box_arg(args), _inequality(args.ineq)), args))
    return 0


# wire

def _protocol(name: str):
    if Path(name).exists() or name == "-":
        return nio.protocol_from_dict(_load_json(name))
    try:
        return named_protocol(name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_wire_run(args) -> int:
    protocol = _protocol(args.protocol)
    copies = args.copies or protocol.depth
    if copies != protocol.depth:
        raise UsageError(f"protocol has depth {protocol.depth} but --copies is {copies}")
    if args.ghz_noise:
        box = noisy_ghz(*_pair(args.ghz_noise))
    else:
        box = _box_arg(args)
    if args.permissive:
        result, sink = wire_with_sink(protocol, [box] * copies)
    else:
        result, sink = wire(protocol, [box] * copies), {}
    doc = nio.box_to_dict(result, args.float)
    if sink:
        doc["sink"] = {k: _num(v, args) for k, v in sink.items()}
    _emit(nio.dumps(doc), args.out)
    return 0


# fourier

def _function(n: int, text: str) -> BooleanFunction:
    try:
        return BooleanFunction.from_hex(n, text)
    except ValueError as exc:
        raise UsageError(f"bad truth table {text!r} for n={n}: {exc}") from None


def cmd_fourier_spectrum(args) -> int:
    spec = spectrum(_function(args.n, args.f))
    for z, c in spec.support().items():
        print(f"{z or '-'} {_num(c, args)}")
    return 0


def cmd_fourier_value(args) -> int:
    fa, fb, fc = (_function(args.n, t) for t in (args.fa, args.fb, args.fc))
    eps, delta = parse_rational(args.eps), parse_rational(args.delta)
    print(f"value {_num(nonadaptive_value(fa, fb, fc, eps, delta), args)}")
    print(f"bound {_num(parity_bound(eps, delta, args.n), args)}")
    return 0


def cmd_fourier_bound(args) -> int:
    print(_num(parity_bound(parse_rational(args.eps), parse_rational(args.delta), args.n), args))
    return 0


# search

def _space(args) -> SearchSpaceSpec:
    space = SearchSpaceSpec(
        WiringMode.ADAPTIVE if args.adaptive else WiringMode.NON_ADAPTIVE,
        FinalMode(args.finals),
    )
    if space.size > _SLOW_SEARCH:
        if not args.allow_slow:
            raise UsageError(f"{space.describe()} is very large; pass --allow-slow to run it anyway")
        warnings.warn(f"searching {space.size} protocols; expect this to take a long time", stacklevel=2)
    return space


def cmd_search_depth2(args) -> int:
    space = _space(args)
    if args.ghz:
        eps, delta = _pair(args.ghz)
        result = ghz_search_depth2(eps, delta, space)
        doc = nio.ghz_result_to_dict(result, args.float)
        if args.out:
            _emit(nio.dumps(doc), args.out)
        print(f"best {doc['best']} ({result.count} of {result.total} protocols, e.g. {doc['protocols'][0]})")
        return 0
    if args.class_id is None:
        raise UsageError("search depth2 needs --class or --ghz")
    report = search_report(_class_id(args.class_id), space, absolute=args.abs)
    doc = nio.report_to_dict(report, args.float)
    if args.out:
        _emit(nio.dumps(doc), args.out)
    print(f"class {report.class_id}: {len(report.entries)} distinct values over {report.total} protocols; "
          f"baseline {report.baseline}")
    shown = report.entries if args.top is None else report.entries[: args.top]
    for k, e in enumerate(shown, 1):
        print(f"{k:4d}  {str(e.value):22s} {e.region.format(args.float):22s} x{e.count:<6d} {e.protocol.encoding}")
    return 0


# curve

def _range(text: str) -> tuple:
    return _pair(text)


def cmd_curve_emit(args) -> int:
    try:
        target = CurveTarget.parse(args.target)
    except ValueError:
        raise UsageError(f"unknown curve target {args.target!r}") from None
    ranges = tuple(_range(r) for r in args.range) if args.range else None
    try:
        spec = CurveSpec(target, args.resolution, ranges)
    except RangeError as exc:
        raise UsageError(str(exc)) from None
    _emit(curve_emit(spec, floats=args.float, absolute=args.abs), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nlb", description="Exact tripartite non-local box toolkit.")
    groups = p.add_subparsers(dest="group", required=True)

    def command(group, name, func, help_):
        c = group.add_parser(name, help=help_)
        c.set_defaults(func=func)
        c.add_argument("--float", action="store_true", help="print decimals instead of exact rationals")
        return c

    box = groups.add_parser("box", help="build and check boxes").add_subparsers(dest="command", required=True)
    c = command(box, "build", cmd_box_build, "construct a box as JSON")
    c.add_argument("--ghz", action="store_true")
    c.add_argument("--noisy-ghz", metavar="EPS,DELTA")
    c.add_argument("--class", dest="class_id", metavar="N", help="44, 45, 46 or c")
    c.add_argument("--noisy-class", metavar="N")
    c.add_argument("--delta")
    c.add_argument("--correlated", action="store_true")
    c.add_argument("--poly", help='parity target such as "xy+xz"')
    c.add_argument("--local", metavar="BITS", help="six comma-separated bits")
    c.add_argument("--domain", help="full or even-parity")
    c.add_argument("--out")
    c = command(box, "validate", cmd_box_validate, "check positivity, normalization, no-signaling")
    c.add_argument("box", nargs="?", default="-")
    c = command(box, "restrict", cmd_box_restrict, "keep only rows of a smaller domain")
    c.add_argument("box", nargs="?", default="-")
    c.add_argument("--domain", required=True)
    c.add_argument("--out")
    c = command(box, "mix", cmd_box_mix, "convex combination of boxes")
    c.add_argument("component", nargs="+", metavar="WEIGHT:FILE")
    c.add_argument("--out")

    ineq = groups.add_parser("ineq", help="Bell inequalities").add_subparsers(dest="command", required=True)
    c = command(ineq, "eval", cmd_ineq_eval, "evaluate an inequality on a box")
    c.add_argument("--ineq", required=True, help="class2, class41 or a JSON file")
    c.add_argument("--box", default="-")

    wire_g = groups.add_parser("wire", help="compose boxes").add_subparsers(dest="command", required=True)
    c = command(wire_g, "run", cmd_wire_run, "wire copies of a box through a protocol")
    c.add_argument("--protocol", required=True, help="protocol1..5, ndpN, identityN, parity:sa,sb,sc,t or a JSON file")
    c.add_argument("--box", default="-")
    c.add_argument("--ghz-noise", metavar="EPS,DELTA", help="use noisy GHZ copies instead of --box")
    c.add_argument("--copies", type=int)
    c.add_argument("--permissive", action="store_true", help="drop histories that leave a box domain")
    c.add_argument("--out")

    four = groups.add_parser("fourier", help="Fourier analysis of finals").add_subparsers(dest="command", required=True)
    c = command(four, "spectrum", cmd_fourier_spectrum, "Fourier coefficients of a Boolean function")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--f", required=True, help="truth table as hex")
    c = command(four, "value", cmd_fourier_value, "non-adaptive value on noisy GHZ boxes")
    c.add_argument("--n", type=int, required=True)
    for name in ("--fa", "--fb", "--fc"):
        c.add_argument(name, required=True)
    c.add_argument("--eps", required=True)
    c.add_argument("--delta", required=True)
    c = command(four, "bound", cmd_fourier_bound, "max over k <= n of |eps^k - 3 delta^k|")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--eps", required=True)
    c.add_argument("--delta", required=True)

    search = groups.add_parser("search", help="exhaustive depth-2 search").add_subparsers(dest="command", required=True)
    c = command(search, "depth2", cmd_search_depth2, "rank every depth-2 protocol")
    c.add_argument("--class", dest="class_id", metavar="N")
    c.add_argument("--ghz", metavar="EPS,DELTA", help="maximise the class-2 value on noisy GHZ copies instead")
    mode = c.add_mutually_exclusive_group()
    mode.add_argument("--adaptive", action="store_true")
    mode.add_argument("--non-adaptive", dest="adaptive", action="store_false")
    c.add_argument("--finals", choices=[m.value for m in FinalMode], default="parity")
    c.add_argument("--abs", action="store_true", help="compare |V'| > |V|")
    c.add_argument("--allow-slow", action="store_true")
    c.add_argument("--top", type=int, default=20, help="rows to print (report file keeps all)")
    c.add_argument("--out")

    curve = groups.add_parser("curve", help="plot data").add_subparsers(dest="command", required=True)
    c = command(curve, "emit", cmd_curve_emit, "CSV grid for a plot")
    c.add_argument("--target", required=True, help="ghz-depth2 or class-protocols")
    c.add_argument("--resolution", type=int, default=21)
    c.add_argument("--range", action="append", metavar="LO,HI", help="once per axis")
    c.add_argument("--abs", action="store_true")
    c.add_argument("--out")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, FormatError) as exc:
        print(f"nlb: error: {exc}", file=sys.stderr)
        return 2
    except NLBError as exc:
        print(f"nlb: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"nlb: error: {exc}", file=sys.stderr)
        return 2
