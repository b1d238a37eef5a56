"""Command-line front end: ``tropcrystal <group> <command> [flags]``.

JSON goes to stdout, a one-line summary to stderr.  Exit codes: 0 success,
1 a verification suite found a counterexample, 2 usage or parse error,
3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction
from typing import TextIO

from tropcrystal import geom, pcrystal, udiso
from tropcrystal.errors import InvalidRank, ResourceCap, SingularPoint
from tropcrystal.expr import catalog, parse_pos, tropicalize
from tropcrystal.fundrep import check_index, format_rational, parse_rational

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read_payload(text: str, stdin: TextIO) -> str:
    """Inline text, a path to a file, or '-' for stdin."""
    if text == "-":
        return stdin.read()
    if os.path.isfile(text):
        with open(text, encoding="utf-8") as fh:
            return fh.read()
    return text


def _parse_op(op: str, letters: str, n: int) -> tuple[str, int]:
    m = re.fullmatch(rf"([{letters}])(\d+)", op)
    if not m:
        raise UsageError(f"bad operator {op!r}")
    i = int(m.group(2))
    if i > n:
        raise UsageError(f"index {i} out of range 0..{n}")
    return m.group(1), i


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=True) + "\n"


# -- handlers ------------------------------------------------------------------
# Each returns (exit code, stdout text, stderr summary).


def _crystal_enum(args, stdin):
    elts = pcrystal.enumerate_crystal(args.n, args.l, cap=args.cap)
    return EXIT_OK, _dump([b.to_json() for b in elts]), f"B^(2,{args.l}) for n={args.n}: {len(elts)} elements"


def _crystal_apply(args, stdin):
    raw = _read_payload(args.elt, stdin)
    try:
        b = pcrystal.CrystalElt.from_json(json.loads(raw))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read crystal element: {exc}") from None
    if not b.is_valid():
        raise UsageError("element does not satisfy the defining conditions")
    kind, i = _parse_op(args.op, "ef", b.n)
    result = (pcrystal.f_op if kind == "f" else pcrystal.e_op)(i, b)
    out = {"op": args.op, "input": b.to_json(), "result": None if result is None else result.to_json()}
    return EXIT_OK, _dump(out), f"{args.op}: {'0' if result is None else 'moved'}"


def _crystal_graph(args, stdin):
    text = pcrystal.graph_export(args.n, args.l, args.format, cap=args.cap)
    return EXIT_OK, text, f"crystal graph of B^(2,{args.l}) for n={args.n} ({args.format})"


def _crystal_perfect(args, stdin):
    report = pcrystal.perfectness_check(args.n, args.l, cap=args.cap)
    return _report_result(report, f"perfectness n={args.n} l={args.l}")


def _parse_point(text: str, n: int, stdin, lattice: bool):
    raw = _read_payload(text, stdin).strip()
    if raw.startswith("{"):
        data = json.loads(raw)
        if int(data.get("n", n)) != n:
            raise UsageError(f"point is for n={data['n']}, expected n={n}")
        values = data["x"]
    else:
        values = [t for t in raw.split(",") if t.strip()]
    if lattice:
        return udiso.LatticePoint(n, tuple(int(str(v).strip()) for v in values))
    return geom.TorusPoint(n, tuple(parse_rational(v) for v in values))


def _geom_eval(args, stdin):
    x = _parse_point(args.point, args.n, stdin, lattice=False)
    m = re.fullmatch(r"(e|gamma|eps)(\d+)", args.action)
    if not m:
        raise UsageError(f"bad action {args.action!r}")
    kind, i = m.group(1), int(m.group(2))
    if i > args.n:
        raise UsageError(f"index {i} out of range 0..{args.n}")
    out: dict = {"n": args.n, "action": args.action, "point": x.to_json()["x"]}
    if kind == "e":
        if args.c is None:
            raise UsageError("--c is required for e-actions")
        c = parse_rational(args.c)
        out["c"] = format_rational(c)
        out["x"] = geom.geom_e(i, c, x).to_json()["x"]
    else:
        fn = geom.geom_gamma if kind == "gamma" else geom.geom_eps
        out["value"] = format_rational(fn(i, x))
    return EXIT_OK, _dump(out), f"{args.action} evaluated"


def _geom_verify(args, stdin):
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    if args.suite == "all":
        report = geom.verify_axioms(args.n, args.trials, args.seed)
    else:
        report = geom.run_suite(args.suite, args.n, args.trials, args.seed)
    return _report_result(report, f"geom {args.suite} n={args.n}")


def _ud_apply(args, stdin):
    p = _parse_point(args.point, args.n, stdin, lattice=True)
    kind, i = _parse_op(args.op, "ef", args.n)
    moved = udiso.ud_f_tilde(i, p) if kind == "f" else udiso.ud_e_tilde(i, p)
    out = {"op": args.op, "input": p.to_json(), "result": moved.to_json()}
    return EXIT_OK, _dump(out), f"{args.op} applied"


def _ud_check(args, stdin):
    if args.box is not None:
        if args.box < 0:
            raise UsageError("--box must be >= 0")
        region = udiso.Region(box=args.box)
    elif args.trials is not None:
        if args.seed is None:
            raise UsageError("--trials needs an explicit --seed")
        region = udiso.Region(trials=args.trials, seed=args.seed, radius=args.radius)
    else:
        region = udiso.default_region(args.n)
    size = (2 * args.box + 1) ** (2 * args.n - 2) if args.box is not None else region.trials
    if size > args.cap:
        raise ResourceCap(f"region has {size} points, cap is {args.cap}")
    run = udiso.verify_iso if args.suite == "iso" else udiso.verify_ud_mechanical
    return _report_result(run(args.n, region), f"ud {args.suite} n={args.n}")


def _ud_tropicalize(args, stdin):
    if args.expr is not None:
        source = _read_payload(args.expr, stdin)
        expr = parse_pos(source)
        key = None
    else:
        m = re.fullmatch(r"(gamma|eps)(\d+)|e(\d+):x?(\d+)", args.target or "")
        if not m:
            raise UsageError(f"bad target {args.target!r}")
        if m.group(1):
            key = f"{m.group(1)}{m.group(2)}"
        else:
            key = f"e{m.group(3)}:x{m.group(4)}"
        table = catalog(args.n)
        if key not in table:
            raise UsageError(f"no catalog entry {key!r} for n={args.n}")
        expr = table[key]
    trop = tropicalize(expr)
    out = {"n": args.n, "target": key, "positive": str(expr), "tropical": str(trop)}
    return EXIT_OK, _dump(out), str(trop)


def _report_result(report, label: str):
    out = report.to_json()
    if report.passed:
        return EXIT_OK, _dump(out), f"{label}: {report.checks} checks, all passed"
    return EXIT_FAIL, _dump(out), f"{label}: {len(report.failures)} of {report.checks} checks failed"


# -- argument grammar ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tropcrystal", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    crystal = groups.add_parser("crystal", help="the perfect crystals B^(2,l)").add_subparsers(
        dest="command", required=True, parser_class=_Parser
    )
    p = crystal.add_parser("enum", help="list every element")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--out", choices=["json"], default="json")
    p.add_argument("--cap", type=int, default=pcrystal.DEFAULT_ENUM_CAP)
    p.set_defaults(handler=_crystal_enum)

    p = crystal.add_parser("apply", help="apply one Kashiwara operator")
    p.add_argument("--op", required=True, help="f0..fN or e0..eN")
    p.add_argument("--elt", required=True, help="inline JSON, a JSON file, or '-' for stdin")
    p.set_defaults(handler=_crystal_apply)

    p = crystal.add_parser("graph", help="export the crystal graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--format", choices=["dot", "json"], default="dot")
    p.add_argument("--cap", type=int, default=pcrystal.DEFAULT_ENUM_CAP)
    p.set_defaults(handler=_crystal_graph)

    p = crystal.add_parser("perfect", help="check the minimal elements")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--cap", type=int, default=pcrystal.DEFAULT_ENUM_CAP)
    p.set_defaults(handler=_crystal_perfect)

    geo = groups.add_parser("geom", help="the geometric crystal on the x-chart").add_subparsers(
        dest="command", required=True, parser_class=_Parser
    )
    p = geo.add_parser("eval", help="evaluate e_i^c, gamma_i or eps_i at a point")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--point", required=True, help="'p/q,...' for x_2..x_{2n-1}, a JSON file, or '-'")
    p.add_argument("--action", required=True, help="eI, gammaI or epsI")
    p.add_argument("--c", help="action parameter p/q")
    p.set_defaults(handler=_geom_eval)

    p = geo.add_parser("verify", help="run an identity suite at seeded random points")
    p.add_argument("--suite", choices=[*geom.SUITES, "all"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(handler=_geom_verify)

    ud = groups.add_parser("ud", help="the ultra-discretized crystal on Z^(2n-2)").add_subparsers(
        dest="command", required=True, parser_class=_Parser
    )
    p = ud.add_parser("apply", help="apply one Kashiwara operator")
    p.add_argument("--op", required=True, help="f0..fN or e0..eN")
    p.add_argument("--point", required=True, help="'i,...' for x_2..x_{2n-1}, a JSON file, or '-'")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=_ud_apply)

    p = ud.add_parser("check", help="verify the isomorphism or the tropicalized formulas")
    p.add_argument("--suite", choices=["iso", "mechanical"], required=True)
    p.add_argument("--n", type=int, required=True)
    region = p.add_mutually_exclusive_group()
    region.add_argument("--box", type=int, help="exhaustive scan of [-R, R]^(2n-2)")
    region.add_argument("--trials", type=int, help="seeded random sample size")
    p.add_argument("--seed", type=int)
    p.add_argument("--radius", type=int, default=50)
    p.add_argument("--cap", type=int, default=10**7, help="largest region scanned")
    p.set_defaults(handler=_ud_check)

    p = ud.add_parser("tropicalize", help="print the tropical form of a catalog formula")
    p.add_argument("--n", type=int, required=True)
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--target", help="gammaI, epsI or eI:k")
    target.add_argument("--expr", help="a subtraction-free expression")
    p.set_defaults(handler=_ud_tropicalize)
    return parser


def run(argv: list[str], stdout: TextIO | None = None, stderr: TextIO | None = None, stdin: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    stdin = stdin or sys.stdin
    try:
        args = build_parser().parse_args(argv)
        code, text, summary = args.handler(args, stdin)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except ResourceCap as exc:
        print(f"resource cap: {exc}", file=stderr)
        return EXIT_CAP
    except (InvalidRank, SingularPoint, ValueError, IndexError, KeyError, SyntaxError) as exc:
        print(f"usage error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_USAGE
    stdout.write(text)
    print(summary, file=stderr)
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
