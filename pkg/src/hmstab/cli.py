"""Command-line entry point: ``hmstab analyze | verify | corpus``."""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .analyze import AnalyzeOptions, InternalContradiction, analyze, report_json
from .corpus import CORPUS, format_table, load_entries, run_corpus, select
from .fields import Field
from .poly import PolyParseError, infer_n_vars, parse_poly
from .singularity import DEFAULT_BUDGET, parse_point
from .verifier import MALFORMED, verify_text

EXIT_INPUT = 2
EXIT_INTERNAL = 3


class InputError(Exception):
    pass


def _read_arg(value: str) -> str:
    """'@path' reads the file, anything else is taken literally."""
    if value.startswith("@"):
        try:
            return Path(value[1:]).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {value[1:]}: {exc.strerror}") from None
    return value


def _read_points(path: str, field: Field, n_vars: int) -> list[tuple]:
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    points = []
    for line in lines:
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        P = parse_point(line, field)
        if len(P) != n_vars:
            raise InputError(f"point {line} has {len(P)} coordinates, expected {n_vars}")
        points.append(P)
    return points


def _seed(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get("HMSTAB_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise InputError(f"HMSTAB_SEED must be an integer, got {env!r}") from None


def cmd_analyze(args: argparse.Namespace) -> int:
    try:
        field = Field.from_descriptor(args.field)
        text = _read_arg(args.poly)
        n_vars = args.nvars if args.nvars is not None else infer_n_vars(text)
        F = parse_poly(text, n_vars, field)
        if F.is_zero():
            raise InputError("the polynomial is zero")
        points = _read_points(args.points, field, n_vars) if args.points else []
        if args.budget is not None and args.budget < 1:
            raise InputError("--budget must be positive")
        opts = AnalyzeOptions(
            points=points,
            s_user=args.s,
            budget=args.budget or DEFAULT_BUDGET,
            seed=_seed(args.seed),
        )
        report = analyze(F, opts)
    except (InputError, PolyParseError, ValueError, ZeroDivisionError) as exc:
        print(f"hmstab: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InternalContradiction as exc:
        print(f"hmstab: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    print(report_json(report))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        text = sys.stdin.read() if args.file == "-" else Path(args.file).read_text()
    except OSError as exc:
        print(f"hmstab: error: cannot read {args.file}: {exc.strerror}", file=sys.stderr)
        return MALFORMED
    code, messages = verify_text(text)
    for msg in messages:
        print(msg)
    return code


def cmd_corpus(args: argparse.Namespace) -> int:
    try:
        entries = load_entries(args.file) if args.file else list(CORPUS)
        seed = _seed(args.seed)
    except (OSError, ValueError, TypeError, InputError) as exc:
        print(f"hmstab: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    chosen = select(entries, args.filter)
    if not chosen:
        print(f"hmstab: error: no corpus entry matches {args.filter!r}", file=sys.stderr)
        return EXIT_INPUT
    results = run_corpus(chosen, jobs=args.jobs, seed=seed)
    print(format_table(results))
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} passed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hmstab", description="GIT stability checks for projective hypersurfaces")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="analyze one hypersurface and print a JSON report")
    a.add_argument("--poly", required=True, help="homogeneous polynomial, or @file")
    a.add_argument("--nvars", type=int, help="number of variables N+1 (default: from the highest index used)")
    a.add_argument("--field", default="q", help="q or fp:<prime> (default q)")
    a.add_argument("--s", type=int, help="claimed dimension of the singular locus (-1 if smooth)")
    a.add_argument("--points", help="file with known points, one [a0:...:aN] per line")
    a.add_argument("--budget", type=int, help="maximum number of F_p points to enumerate")
    a.add_argument("--seed", type=int, help="random seed (default: $HMSTAB_SEED or 0)")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="re-check a certificate or the certificates of a report")
    v.add_argument("file", help="JSON file, or - for standard input")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("corpus", help="run the corpus of known cases")
    c.add_argument("filter", nargs="?", help="only entries whose name contains this text")
    c.add_argument("--file", help="JSON list of entries to use instead of the built-in corpus")
    c.add_argument("--jobs", type=int, default=1, help="worker processes")
    c.add_argument("--seed", type=int, help="random seed (default: $HMSTAB_SEED or 0)")
    c.set_defaults(func=cmd_corpus)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
