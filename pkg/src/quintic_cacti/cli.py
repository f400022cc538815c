"""Command line entry point: ``quintic-cacti <command> [flags]``.

Exit codes: 0 success, 1 failed checks, 2 internal error, 3 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cactus import Family, atlas_json, class_by_index
from .errors import CactusError, GraphError, NumericError
from .numeric import DEFAULT_MESH, ROOT_TOL, PolynomialSpec, classify_polynomial, sample_classes
from .render import render
from .ribbon import build_graph, export
from .verify import run_verify

EXIT_OK, EXIT_FAILED, EXIT_INTERNAL, EXIT_BAD_INPUT = 0, 1, 2, 3


class BadInput(Exception):
    pass


def _emit(text: str | bytes, out: str | None) -> None:
    data = text.encode() if isinstance(text, str) else text
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.write(data.decode())


def cmd_verify(args) -> int:
    criteria = [int(c) for c in args.criteria.split(",")] if args.criteria else None
    report = run_verify(args.equivalence, args.orientation, args.seed, args.mesh,
                        args.tol, criteria)
    doc = report.to_dict(with_timings=args.timings)
    if args.format == "json":
        _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    else:
        lines = report.summary_lines()
        for c in report.checks:
            if not c.passed:
                lines.append(f"  failed: [{c.criterion}] {c.name}: expected {c.expected!r}, "
                             f"got {c.actual!r}")
        faces = report.notes.get("faces")
        if faces:
            lines.append(f"four-face orientations: {', '.join(faces['four_face_orientations']) or 'none'}"
                         f" (reversed black reading gives {faces['reversed_black_reading_lengths']})")
        fixture = report.notes.get("fixture")
        if fixture:
            pairs = " ".join(f"{a}->{b}" for a, b in fixture["bijection"].items())
            lines.append(f"bijection to printed tables (mirrored={fixture['witness_mirrored']}): {pairs}")
        if args.timings:
            lines.append("timings: " + " ".join(f"{k}:{v:.2f}s" for k, v in report.timings.items()))
        lines.append("overall: " + ("PASS" if report.passed else "FAIL"))
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_enumerate(args) -> int:
    _emit(atlas_json(args.family, args.degree, args.equivalence), args.out)
    return EXIT_OK


def cmd_graph(args) -> int:
    fmt = args.format or "dot"
    if fmt not in ("dot", "json"):
        raise BadInput(f"graph output supports dot or json, not {fmt}")
    _emit(export(build_graph(), fmt), args.out)
    return EXIT_OK


def cmd_classify(args) -> int:
    try:
        text = Path(args.poly).read_text()
    except OSError as exc:
        raise BadInput(str(exc)) from None
    p = PolynomialSpec.parse(text)
    res = classify_polynomial(p, args.mesh, args.tol)
    doc = res.to_dict()
    if args.format == "json":
        _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    else:
        lines = [f"case: {doc['case']}",
                 f"class: {doc['family']}-type #{doc['atlas_index']}",
                 f"canonical key: {doc['canonical_key']}",
                 f"root residual: {doc['root_residual']:.3e}"]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_render(args) -> int:
    fmt = args.format or "text"
    if fmt not in ("text", "tikz"):
        raise BadInput(f"render output supports text or tikz, not {fmt}")
    cls = class_by_index(args.family, args.index, args.degree, args.equivalence)
    _emit(render(cls, fmt), args.out)
    return EXIT_OK


def cmd_sample(args) -> int:
    if args.count < 1:
        raise BadInput("--count must be at least 1")
    rep = sample_classes(args.count, args.seed, args.mesh)
    _emit(json.dumps(rep.to_dict(), indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quintic-cacti",
                                     description="Cacti of complex quintics and their ribbon graph.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_choices=None):
        p.add_argument("--out", help="write to this file instead of stdout")
        if fmt_choices:
            p.add_argument("--format", choices=fmt_choices)
        return p

    def equivalence(p):
        p.add_argument("--equivalence", default="rotated", choices=["fixed", "rotated"])

    p = common(sub.add_parser("verify", help="run the self-check suite"), ["text", "json"])
    equivalence(p)
    p.add_argument("--orientation", default="auto", choices=["left", "right", "auto"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mesh", type=int, default=DEFAULT_MESH)
    p.add_argument("--tol", type=float, default=ROOT_TOL)
    p.add_argument("--criteria", help="comma separated subset, e.g. 1,2,5")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings")
    p.set_defaults(func=cmd_verify, format="text")

    p = common(sub.add_parser("enumerate", help="write an atlas of cactus classes as JSON"))
    p.add_argument("--family", default="first", choices=[f.value for f in Family])
    p.add_argument("--degree", type=int, default=5)
    equivalence(p)
    p.set_defaults(func=cmd_enumerate)

    p = common(sub.add_parser("graph", help="export the ribbon graph"), ["dot", "json"])
    p.set_defaults(func=cmd_graph)

    p = common(sub.add_parser("classify", help="classify a quintic given as six re,im pairs"),
               ["text", "json"])
    p.add_argument("poly", help="polynomial file, highest degree first")
    p.add_argument("--mesh", type=int, default=DEFAULT_MESH)
    p.add_argument("--tol", type=float, default=ROOT_TOL)
    p.set_defaults(func=cmd_classify)

    p = common(sub.add_parser("render", help="draw one atlas class"), ["text", "tikz"])
    p.add_argument("index", type=int, help="atlas index")
    p.add_argument("--family", default="first", choices=[f.value for f in Family])
    p.add_argument("--degree", type=int, default=5)
    equivalence(p)
    p.set_defaults(func=cmd_render)

    p = common(sub.add_parser("sample", help="classify seeded random quintics"))
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mesh", type=int, default=DEFAULT_MESH)
    p.set_defaults(func=cmd_sample)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_BAD_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (BadInput, CactusError, GraphError, NumericError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
