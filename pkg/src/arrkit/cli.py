"""The ``arr`` command.

Exit codes: 0 ok, 1 input error, 2 precondition failure (``check --strict``,
``plot``), 3 failed assertion (``reproduce``).
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import exact
from .arrangement import Arrangement, ArrangementError, essentialize, restrict
from .chambers import PreconditionError, find_simple_triangle
from .criteria import CHECKS, criteria_report
from .reproduce import TARGETS, run as run_reproduction
from .roots import RootError, diagonal_flat, ideal_arrangement, ideal_from_spec
from .scan import DETECTORS, scan
from .svg import auto_chart, emit_projective_svg

OK, INPUT_ERROR, PRECONDITION, ASSERTION = 0, 1, 2, 3


class InputError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit(text: str, out) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_arrangement(path) -> Arrangement:
    try:
        return Arrangement.load(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _load_spec(text: str) -> dict:
    if os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"ideal spec is neither a file nor JSON: {exc}") from exc
    if not isinstance(spec, dict):
        raise InputError("ideal spec must be a JSON object")
    return spec


def cmd_check(args) -> int:
    a = _load_arrangement(args.file)
    checks = CHECKS if args.all or not args.checks else tuple(args.checks.split(","))
    try:
        report, skipped = criteria_report(a, checks)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    report["skipped"] = skipped
    sys.stdout.write(_dump(report))
    if args.strict and skipped:
        print(f"precondition failed for: {', '.join(skipped)}", file=sys.stderr)
        return PRECONDITION
    return OK


def _restrict_y(spec: dict):
    ideal = ideal_from_spec(spec)
    if ideal.system.kind != "D":
        raise RootError("restrict-Y is defined for type D ideals")
    n = ideal.system.n
    a = ideal_arrangement(ideal.system, ideal)
    try:
        y = diagonal_flat(a, n)
    except ArrangementError as exc:
        raise RootError(f"the ideal does not contain the flat Y: {exc}") from exc
    res, chart = restrict(a, y)
    return ideal, a, res, chart


def cmd_ideal(args) -> int:
    spec = _load_spec(args.spec)
    if args.action == "build":
        ideal = ideal_from_spec(spec)
        a = ideal_arrangement(ideal.system, ideal)
        _emit(a.dumps(), args.output)
        return OK
    ideal, a, res, chart = _restrict_y(spec)
    if args.action == "restrict-Y":
        doc = res.to_json()
        doc["chart"] = [[str(x) for x in row] for row in chart]
        _emit(_dump(doc), args.output)
        return OK
    full, _ = criteria_report(a)
    restricted, _ = criteria_report(res)
    doc = {
        "ideal": {**ideal.to_json(), "generator_names": ideal.generator_names(), "size": len(ideal)},
        "arrangement": {"hyperplanes": len(a), **full},
        "restriction_Y": {"hyperplanes": len(res), "polynomial": res.polynomial_str(), **restricted},
    }
    _emit(_dump(doc), args.output)
    return OK


def cmd_scan(args) -> int:
    if args.type != "D":
        raise InputError("only type D scans are supported")
    flagged = []
    total = 0
    to_stdout = args.output in (None, "-")
    records = scan(args.n, jobs=args.jobs, out=None if to_stdout else args.output, resume=args.resume)
    for rec in records:
        total += 1
        if to_stdout:
            sys.stdout.write(json.dumps(rec.to_json(), sort_keys=True) + "\n")
        if rec.flagged(args.detector):
            flagged.append({"index": rec.index, "generators": rec.generators})
    summary = {"type": "D", "n": args.n, "criterion": args.criterion, "detector": args.detector,
               "ideals": total, "flagged": len(flagged), "flagged_ideals": flagged}
    (sys.stderr if to_stdout else sys.stdout).write(_dump(summary))
    return OK


def cmd_reproduce(args) -> int:
    outcomes = run_reproduction(args.target, n=args.n, r=args.r, jobs=args.jobs)
    for o in outcomes:
        print(f"{'PASS' if o.ok else 'FAIL'}  {o.name}" + (f"  [{o.detail}]" if o.detail else ""))
    failed = [o for o in outcomes if not o.ok]
    if failed:
        print(f"first failing assertion: {failed[0].name}", file=sys.stderr)
        return ASSERTION
    print(f"{args.target}: all {len(outcomes)} assertions hold")
    return OK


def _parse_chart(text: str) -> list:
    try:
        return [exact.as_rational(x) for x in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad chart {text!r}: {exc}") from exc


def cmd_plot(args) -> int:
    a = _load_arrangement(args.file)
    if a.rank != 3:
        raise PreconditionError(f"plots need rank 3, the arrangement has rank {a.rank}")
    if not a.is_essential():
        a, _ = essentialize(a)
    witness = find_simple_triangle(a) if args.highlight_triangle else None
    if args.highlight_triangle and witness is None:
        print("no simple triangle found; drawing without highlight", file=sys.stderr)
    if args.chart:
        chart = _parse_chart(args.chart)
    elif witness is not None:
        chart = auto_chart(a, witness)
    else:
        m = 2
        while True:
            chart = (1, m, m * m)
            if exact.primitive_integer(chart) not in a.normal_set():
                break
            m += 1
    emit_projective_svg(a, chart, witness, args.output)
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="arr", description="Exact tools for central hyperplane arrangements.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="run lattice and chamber criteria on an arrangement file")
    c.add_argument("file")
    g = c.add_mutually_exclusive_group()
    g.add_argument("--all", action="store_true", help="run every check (default)")
    g.add_argument("--checks", help="comma-separated subset of: " + ",".join(CHECKS))
    c.add_argument("--strict", action="store_true", help="exit 2 if a requested check was skipped")
    c.set_defaults(func=cmd_check)

    i = sub.add_parser("ideal", help="build or analyse an arrangement of ideal type")
    i.add_argument("action", choices=["build", "restrict-Y", "report"])
    i.add_argument("spec", help='ideal spec file or inline JSON, e.g. \'{"type":"D","n":4,"generators":["e1+e3"]}\'')
    i.add_argument("-o", "--output")
    i.set_defaults(func=cmd_ideal)

    s = sub.add_parser("scan", help="scan all ideals of D_n for simple-triangle restrictions")
    s.add_argument("--type", default="D")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--criterion", default="simple-triangle-restriction",
                   choices=["simple-triangle-restriction"])
    s.add_argument("--detector", default="isotopy", choices=DETECTORS,
                   help="isotopy: lattice-isotopic to a simple-triangle member; real: literal real chamber")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--resume", action="store_true", help="reuse records already in the output file")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_scan)

    r = sub.add_parser("reproduce", help="scripted verification of a worked example")
    r.add_argument("target", choices=TARGETS)
    r.add_argument("--n", type=int)
    r.add_argument("--r", type=int)
    r.add_argument("--jobs", type=int, default=1)
    r.set_defaults(func=cmd_reproduce)

    pl = sub.add_parser("plot", help="SVG picture of a rank-3 arrangement")
    pl.add_argument("file")
    pl.add_argument("--chart", help="affine chart functional a,b,c; the slice is a*x+b*y+c*z = 1")
    pl.add_argument("--highlight-triangle", action="store_true")
    pl.add_argument("-o", "--output", required=True)
    pl.set_defaults(func=cmd_plot)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PreconditionError as exc:
        print(f"arr: precondition failed: {exc}", file=sys.stderr)
        return PRECONDITION
    except (InputError, ArrangementError, RootError, exact.DimensionMismatch) as exc:
        print(f"arr: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
