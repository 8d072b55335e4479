"""Command line interface.

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .classifier import ClassificationReport, census, classify, verify_report
from .config import Config
from .errors import LimitExceeded, MalformedPayload, SelfcrossError
from .gauss_code import DEFAULT_MAX_CROSSINGS, canonical_code, parse_code, render_text
from .planar_map import distinct_realizations
from .render import render_svg

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_LIMIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _config(args) -> Config:
    if args.grid < 1 or not args.margin > 0 or args.max_crossings < 0:
        raise UsageError("--grid must be positive, --margin positive, "
                         "--max-crossings nonnegative")
    return Config(grid=args.grid, margin=args.margin, joint_bound=args.joint_bound,
                  samples=args.samples, seed=args.seed, max_crossings=args.max_crossings)


def _code(text: str):
    try:
        return parse_code(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _write_json(path: str, data) -> None:
    text = json.dumps(data, indent=2) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _fvec(fvec) -> str:
    return "{" + ",".join(map(str, fvec)) + "}" if fvec is not None else "-"


def cmd_classify(args) -> int:
    config = _config(args)
    report = classify(_code(args.code), config, args.realization)
    print(f"code {render_text(canonical_code(_code(args.code)).code)}  "
          f"realization {report.realization + 1}/{max(report.realizations, 1)}  "
          f"faces {_fvec(report.face_vector)}  verdict {report.verdict.value}")
    for note in report.annotations:
        print(f"  note: {note}")
    if args.json:
        _write_json(args.json, report.to_json())
    if args.svg:
        if not report.realizable:
            raise UsageError("cannot draw a code with no sphere realization")
        canon = canonical_code(_code(args.code)).code
        diagram = distinct_realizations(canon, max_crossings=config.max_crossings)[args.realization]
        Path(args.svg).write_text(render_svg(diagram))
    return EXIT_OK


def cmd_census(args) -> int:
    config = _config(args)
    if args.crossings < 0:
        raise UsageError("--crossings must be nonnegative")
    n_min = 0 if args.cumulative else args.crossings
    rows = census(args.crossings, config, args.mirror_distinct, n_min=n_min)
    for row in rows:
        print(f"n={row.n}  {' '.join(map(str, row.canonical_code)) or '(empty)'}"
              f"  #{row.realization}  {_fvec(row.face_vector)}  {row.verdict.value}"
              f"  {row.seconds:.3f}s")
    counts: dict[str, int] = {}
    for row in rows:
        counts[row.verdict.value] = counts.get(row.verdict.value, 0) + 1
    print(f"{len(rows)} classes: " + ", ".join(f"{k} {v}" for k, v in sorted(counts.items())))
    if args.json:
        _write_json(args.json, {"crossings": args.crossings, "cumulative": args.cumulative,
                                "mirror_distinct": args.mirror_distinct,
                                "config": config.snapshot(),
                                "rows": [r.to_json() for r in rows]})
    return EXIT_OK


def cmd_render(args) -> int:
    config = _config(args)
    canon = canonical_code(_code(args.code)).code
    options = distinct_realizations(canon, max_crossings=config.max_crossings)
    if not options:
        raise UsageError("code has no sphere realization")
    if not 0 <= args.realization < len(options):
        raise UsageError(f"realization index out of range (code has {len(options)})")
    Path(args.out).write_text(render_svg(options[args.realization]))
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        data = json.loads(Path(args.report).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {args.report}: {exc}") from exc
    except json.JSONDecodeError as exc:
        print(f"malformed payload: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    if isinstance(data, dict) and "rows" in data:
        payloads = [row.get("report") if isinstance(row, dict) else row for row in data["rows"]]
    else:
        payloads = [data]
    failed = 0
    for k, payload in enumerate(payloads):
        try:
            report = ClassificationReport.from_json(payload)
            ok = verify_report(report)
        except MalformedPayload as exc:
            print(f"report {k}: malformed payload: {exc}", file=sys.stderr)
            failed += 1
            continue
        label = " ".join(map(str, report.canonical_code)) or "(empty)"
        print(f"report {k}: {label} {report.verdict.value}: {'ok' if ok else 'FAILED'}")
        failed += not ok
    return EXIT_VERIFY if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--grid", type=int, default=Config.grid,
                        help="direction candidates for the half-plane search")
    common.add_argument("--margin", type=float, default=Config.margin,
                        help="strict margin required of certificates")
    common.add_argument("--joint-bound", action="store_true",
                        help="also try the tighter joint turning bound")
    common.add_argument("--samples", type=int, default=Config.samples,
                        help="random polygons per certificate check")
    common.add_argument("--seed", type=int, default=Config.seed)
    common.add_argument("--max-crossings", type=int, default=DEFAULT_MAX_CROSSINGS)

    parser = _Parser(prog="selfcross", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", parents=[common], help="classify one Gauss code")
    p.add_argument("--code", required=True, help='double-occurrence word, e.g. "1 1 2 2"')
    p.add_argument("--realization", type=int, default=0,
                   help="which sphere realization of the code (ordered by canonical key)")
    p.add_argument("--json", metavar="PATH", help="write the report ('-' for stdout)")
    p.add_argument("--svg", metavar="PATH", help="write a drawing")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("census", parents=[common], help="classify every pattern")
    p.add_argument("--crossings", type=int, required=True)
    p.add_argument("--cumulative", action="store_true",
                   help="include every crossing count from 0 up to N")
    p.add_argument("--mirror-distinct", action="store_true",
                   help="count mirror images as different classes")
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("render", parents=[common], help="draw a Gauss code as SVG")
    p.add_argument("--code", required=True)
    p.add_argument("--realization", type=int, default=0)
    p.add_argument("--out", required=True, metavar="PATH")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("verify", help="re-check a report or census file")
    p.add_argument("--report", required=True, metavar="PATH")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LimitExceeded as exc:
        print(f"limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (SelfcrossError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
