"""Command line: enumerate roots, fold tables, localize classes, verify.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
All output is deterministic; exact rationals print as p/q.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import catalog
from .folding import Marking, bps_table, lift, parse_marking
from .localize import (
    DescriptorError,
    GeometryDescriptor,
    bps_from_localization,
    ext_decompose,
    format_descriptor,
    parse_descriptor,
    total_chi,
    validate_descriptor,
)
from .rootsys import build_diagram, enumerate_positive_roots
from .symring import euler_class
from .verify import run_checks


def _load_marking(args) -> Marking:
    if getattr(args, "case", None):
        return catalog.load_case(args.case)[0]
    with open(args.marking, encoding="utf-8") as fh:
        return parse_marking(fh.read())


def _load_geometry(args) -> tuple[Marking, GeometryDescriptor]:
    if getattr(args, "case", None):
        return catalog.load_case(args.case)
    if not (args.marking and args.descriptor):
        raise ValueError("need --case, or both --marking and --descriptor")
    with open(args.marking, encoding="utf-8") as fh:
        m = parse_marking(fh.read())
    with open(args.descriptor, encoding="utf-8") as fh:
        g = parse_descriptor(fh.read())
    validate_descriptor(g, m)
    return m, g


def _parse_class(text: str) -> tuple[int, ...]:
    try:
        cls = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise ValueError(f"bad class {text!r}: expected comma-separated integers") from None
    return cls


def cmd_roots(args) -> int:
    d = build_diagram(args.kind, args.rank)
    roots = enumerate_positive_roots(d)
    if args.format == "json":
        print(json.dumps({"kind": d.kind, "rank": d.rank, "count": len(roots),
                          "roots": [list(r) for r in roots]}))
    elif args.format == "csv":
        out = io.StringIO()
        writer = csv.writer(out)
        writer.writerow(d.node_names())
        writer.writerows(roots)
        sys.stdout.write(out.getvalue())
    else:
        for r in roots:
            print(",".join(str(c) for c in r))
        print(f"count: {len(roots)}")
    return 0


def cmd_table(args) -> int:
    m = _load_marking(args)
    table = bps_table(m)
    mapped = sum(r.fiber_count for r in table)
    dropped = len(enumerate_positive_roots(m.diagram)) - mapped
    if args.format == "json":
        print(json.dumps({
            "kind": m.diagram.kind,
            "rank": m.diagram.rank,
            "classes": [{"class": list(r.cls), "fibers": r.fiber_count, "n": str(r.invariant)}
                        for r in table],
            "roots_mapped": mapped,
            "roots_dropped": dropped,
        }))
    elif args.format == "csv":
        out = io.StringIO()
        writer = csv.writer(out)
        writer.writerow(["class", "fibers", "n"])
        for r in table:
            writer.writerow([",".join(str(c) for c in r.cls), r.fiber_count, str(r.invariant)])
        sys.stdout.write(out.getvalue())
    else:
        print("class  fibers  n")
        for r in table:
            print(f"{','.join(str(c) for c in r.cls)}  {r.fiber_count}  {r.invariant}")
        print(f"summary: {mapped} roots over {len(table)} classes, {dropped} dropped")
    return 0


def cmd_localize(args) -> int:
    m, g = _load_geometry(args)
    cls = _parse_class(args.cls)
    lft = lift(cls, m)
    if lft.self_pairing != -2:
        raise ValueError(f"class {args.cls} does not come from a positive root")
    chi = total_chi(lft, g, m)
    dec = ext_decompose(chi, serre_weight=-g.canonical_weight)
    e1, e2 = euler_class(dec.ext1), euler_class(dec.ext2)
    n = bps_from_localization(cls, m, g)
    if args.format == "json":
        print(json.dumps({
            "class": list(cls),
            "chi": str(chi),
            "ext1": str(dec.ext1),
            "ext2": str(dec.ext2),
            "euler_ext1": str(e1),
            "euler_ext2": str(e2),
            "n": str(n),
        }))
    else:
        print(f"class = {args.cls}")
        print(f"chi = {chi}")
        print(f"ext1 = {dec.ext1}")
        print(f"ext2 = {dec.ext2}")
        print(f"e(ext1) = {e1}")
        print(f"e(ext2) = {e2}")
        print(f"n = {n}")
    return 0


def cmd_verify(args) -> int:
    results = run_checks(args.case, quick=args.quick)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        detail = f": {r.detail}" if (r.detail and not r.passed) else ""
        print(f"{status} {r.name}{detail}")
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} checks passed")
    return 0 if passed == len(results) else 1


def cmd_dump_descriptor(args) -> int:
    _, g = catalog.load_case(args.case)
    sys.stdout.write(format_descriptor(g))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adebps",
        description="Exact genus-0 BPS invariants of ADE resolutions, "
                    "by root folding and by equivariant localization.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", help="enumerate the positive roots of an ADE diagram")
    p.add_argument("kind", help="A, D or E")
    p.add_argument("rank", type=int)
    p.add_argument("--format", choices=("plain", "csv", "json"), default="plain")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("table", help="fold all positive roots into the invariant table")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--case", help="built-in case name, e.g. e8-a5")
    src.add_argument("--marking", help="marking file")
    p.add_argument("--format", choices=("plain", "csv", "json"), default="plain")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("localize", help="compute one invariant by localization")
    p.add_argument("cls", metavar="CLASS", help="comma-separated white multiplicities, e.g. 3,5,4,3")
    p.add_argument("--case", help="built-in case name")
    p.add_argument("--marking", help="marking file (with --descriptor)")
    p.add_argument("--descriptor", help="fixed-point data file (with --marking)")
    p.add_argument("--format", choices=("plain", "json"), default="plain")
    p.set_defaults(func=cmd_localize)

    p = sub.add_parser("verify", help="run the itemized consistency checks")
    p.add_argument("--case", default="e8-a5")
    p.add_argument("--quick", action="store_true", help="reference classes only")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dump-descriptor", help="print the built-in fixed-point data file")
    p.add_argument("--case", default="e8-a5")
    p.set_defaults(func=cmd_dump_descriptor)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, DescriptorError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
