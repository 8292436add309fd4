"""Command-line surface.

Exit codes: 0 ok, 1 I/O, 2 validation, 3 theorem disagreement, 4 cap
exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .errors import ActoposError, BoundTooSmall, CapExceeded, ValidationError
from .files import monoid_to_text, read_monoid_file, read_mset_file
from .harness import ALL_CHECKS, HarnessBounds, profile, run_suite
from .monoid import Monoid
from .report import (
    profile_dict,
    report_document,
    suite_json,
    write_suite_outputs,
)

EXIT_OK = 0
EXIT_IO = 1
EXIT_VALIDATION = 2
EXIT_DISAGREEMENT = 3
EXIT_CAP = 4


def cmd_validate(args: argparse.Namespace) -> int:
    M = read_monoid_file(args.monoid)
    print(f"valid monoid of order {M.order} with identity {M.identity}")
    return EXIT_OK


def cmd_profile(args: argparse.Namespace) -> int:
    M = read_monoid_file(args.monoid)
    bounds = _bounds_from(args)
    if args.json:
        reports = [check(M, bounds) for check in ALL_CHECKS]
        doc = report_document(M, profile(M), reports, bounds)
        print(json.dumps(doc, indent=2))
        return EXIT_OK
    prof = profile_dict(profile(M))
    width = max(len(k) for k in prof)
    for key, value in prof.items():
        print(f"{key:<{width}}  {value}")
    return EXIT_OK


def cmd_omega(args: argparse.Namespace) -> int:
    from .topos import omega

    M = read_monoid_file(args.monoid)
    sc = omega(M)
    print(f"{len(sc.ideals)} right ideals; top={sc.top} empty={sc.empty_ideal}")
    for i, ideal in enumerate(sc.ideals):
        row = " ".join(str(v) for v in sc.omega.action[i])
        members = "{" + ",".join(str(m) for m in sorted(ideal)) + "}"
        print(f"{i}: {members:<16} action {row}")
    return EXIT_OK


def cmd_exp(args: argparse.Namespace) -> int:
    from .topos import exponential

    M = read_monoid_file(args.monoid)
    P = read_mset_file(args.base)
    Q = read_mset_file(args.target)
    for X, name in ((P, args.base), (Q, args.target)):
        if X.monoid != M:
            print(f"error: {name} references a different monoid", file=sys.stderr)
            return EXIT_VALIDATION
    exp = exponential(P, Q, cap=args.cap)
    print(f"exponential carrier: {exp.size} equivariant maps M x P -> Q")
    for i, arr in enumerate(exp.maps):
        flat = ";".join(" ".join(str(v) for v in row) for row in arr)
        print(f"{i}: {flat}")
    print("action:")
    for i, row in enumerate(exp.mset.action):
        print(f"{i}: " + " ".join(str(v) for v in row))
    ev = [
        " ".join(str(exp.evaluate(i, p)) for p in range(P.size))
        for i in range(exp.size)
    ]
    print("evaluation (rows are maps, columns base points):")
    for i, row in enumerate(ev):
        print(f"{i}: {row}")
    return EXIT_OK


def cmd_points(args: argparse.Namespace) -> int:
    from .flatness import enumerate_points

    M = read_monoid_file(args.monoid)
    bound = args.bound if args.bound is not None else M.order
    cat = enumerate_points(M, bound)
    print(f"{len(cat.objects)} flat left M-sets of size <= {bound}, up to isomorphism")
    for i, B in enumerate(cat.objects):
        flat = ";".join(" ".join(str(v) for v in row) for row in B.action)
        print(f"{i}: size {B.size}  left action {flat}")
    print(f"initial: {cat.initial}  terminal: {cat.terminal}")
    print(f"essential points: {len(cat.essential)}")
    for i, B in enumerate(cat.essential):
        flat = ";".join(" ".join(str(v) for v in row) for row in B.action)
        print(f"e{i}: size {B.size}  left action {flat}")
    return EXIT_OK


def cmd_harness(args: argparse.Namespace) -> int:
    bounds = _bounds_from(args)
    suite = run_suite(args.max_order, bounds)
    if args.out:
        written = write_suite_outputs(suite, args.out, figures=not args.no_figures)
        for path in written:
            print(f"wrote {path}")
    else:
        print(suite_json(suite), end="")
    count = suite.disagreement_count
    print(
        f"{len(suite.entries)} monoids checked, {count} disagreements",
        file=sys.stderr,
    )
    return EXIT_OK if count == 0 else EXIT_DISAGREEMENT


def cmd_enumerate(args: argparse.Namespace) -> int:
    from .enumeration import canonical_form, enumerate_monoids

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    monoids = enumerate_monoids(args.order)
    for M in monoids:
        name = canonical_form(M.table, M.identity).table_bytes.hex()
        (out_dir / f"{name}.monoid").write_text(monoid_to_text(M))
    print(f"wrote {len(monoids)} monoid files to {out_dir}")
    return EXIT_OK


def _bounds_from(args: argparse.Namespace) -> HarnessBounds:
    kwargs = {}
    if getattr(args, "mset_bound", None) is not None:
        kwargs["mset_size"] = args.mset_bound
    if getattr(args, "power_cap", None) is not None:
        kwargs["power_carrier_cap"] = args.power_cap
    return HarnessBounds(**kwargs)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="actopos",
        description="Topos-theoretic structure of finite monoid action categories",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a monoid file")
    p.add_argument("monoid")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("profile", help="property profile of a monoid")
    p.add_argument("monoid")
    p.add_argument("--json", action="store_true", help="full report document")
    p.add_argument("--mset-bound", type=int, default=None)
    p.add_argument("--power-cap", type=int, default=None)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("omega", help="subobject classifier of a monoid")
    p.add_argument("monoid")
    p.set_defaults(func=cmd_omega)

    p = sub.add_parser("exp", help="exponential of two M-sets")
    p.add_argument("monoid")
    p.add_argument("base", help="M-set file for the base P")
    p.add_argument("target", help="M-set file for the target Q")
    p.add_argument("--cap", type=int, default=10**6)
    p.set_defaults(func=cmd_exp)

    p = sub.add_parser("points", help="bounded category of points")
    p.add_argument("monoid")
    p.add_argument("--bound", type=int, default=None)
    p.set_defaults(func=cmd_points)

    p = sub.add_parser("harness", help="run the theorem agreement suite")
    p.add_argument("--max-order", type=int, default=3)
    p.add_argument("--mset-bound", type=int, default=None)
    p.add_argument("--power-cap", type=int, default=None)
    p.add_argument("--out", default=None, help="JSON path; CSV and PNG go beside it")
    p.add_argument("--no-figures", action="store_true")
    p.set_defaults(func=cmd_harness)

    p = sub.add_parser("enumerate", help="write canonical monoid files")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_enumerate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (CapExceeded, BoundTooSmall) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ActoposError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
