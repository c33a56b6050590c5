"""Command-line entry point.

Exit codes: 0 success, 1 a check or verdict failed, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from .completeness.fixtures import FixtureInvalid, MissingMapping, TranslationMap, fixture_map
from .completeness.rewrite import translate_sequence
from .completeness.search import ENGINES
from .completeness.solver import Bound, strict_bound
from .completeness.sweep import sweep_csv_rows, sweep_json, sweep_subsets
from .completeness.targets import targets
from .equivalence import equivalence_classes, minimal_method_sets
from .gen import DEFAULT_SEED
from .isa import CANONICAL_BASE, MethodSet, SyntaxError as SeqSyntaxError, parse_sequence, render_sequence
from .verify import run_checks

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _methods(text: str) -> MethodSet:
    try:
        return MethodSet.from_codes(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_classify(args) -> int:
    classes = equivalence_classes()
    if args.json:
        _emit(args, _dump([c.to_json() for c in classes]))
    else:
        _emit(args, "".join(f"{c.representative} | {' '.join(map(str, c.members))}\n" for c in classes))
    return EXIT_OK


def cmd_minimal_sets(args) -> int:
    sets = minimal_method_sets()
    if args.json:
        _emit(args, _dump([s.codes() for s in sets]))
    else:
        _emit(args, "".join(",".join(s.codes()) + "\n" for s in sets))
    return EXIT_OK


def _verdict_text(m: MethodSet, v) -> str:
    lines = [f"methods: {','.join(m.codes())}"]
    if v.kind == "bound":
        lines.append(f"verdict: bound {v.k}")
        for t in targets():
            lines.append(f"  {t.code:<7} {render_sequence(v.witnesses[t])}")
    elif v.kind == "incomplete":
        cert = v.cert.to_json()
        extra = f" input={cert['input']} content={cert['required_content']}" if cert["kind"] == "unwritable" else ""
        lines.append(f"verdict: incomplete for {v.target.code} ({cert['kind']}{extra})")
    else:
        lines.append(f"verdict: unknown beyond kmax={v.kmax}")
        for t in targets():
            w = v.resolved.get(t)
            lines.append(f"  {t.code:<7} {render_sequence(w) if w else '-'}")
    return "\n".join(lines) + "\n"


def cmd_bound(args) -> int:
    m = _methods(args.methods)
    v = strict_bound(m, args.kmax, engine=args.engine)
    if args.json:
        _emit(args, _dump({"methods": m.codes(), "verdict": v.to_json()}))
    else:
        _emit(args, _verdict_text(m, v))
    return EXIT_OK if isinstance(v, Bound) else EXIT_FAIL


def cmd_sweep(args) -> int:
    base = CANONICAL_BASE if args.base == "canonical" else _methods(args.base)
    rows = sweep_subsets(base, args.kmax, args.jobs)
    report = {"base": base.codes(), "kmax": args.kmax, "subsets": sweep_json(rows)}
    report["unresolved"] = [r["methods"] for r in report["subsets"] if r["verdict"]["kind"] == "unknown"]
    _emit(args, _dump(report))
    if args.csv:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(sweep_csv_rows(rows))
        Path(args.csv).write_text(buf.getvalue(), encoding="utf-8")
    return EXIT_OK


def _load_map(ref: str) -> TranslationMap:
    if ref.endswith(".json"):
        try:
            data = json.loads(Path(ref).read_text(encoding="utf-8"))
            return TranslationMap.from_json(data, name=Path(ref).stem)
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"bad map file {ref}: {exc}") from None
    try:
        return fixture_map(ref)
    except KeyError:
        raise UsageError(f"unknown map {ref!r}; use part1..part5[:alt] or a .json file") from None


def cmd_rewrite(args) -> int:
    tmap = _load_map(args.map)
    text = Path(args.input).read_text(encoding="utf-8") if args.input else sys.stdin.read()
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            seq = parse_sequence(line)
        except SeqSyntaxError as exc:
            raise UsageError(f"line {lineno}: {exc}") from None
        try:
            out.append(render_sequence(translate_sequence(seq, tmap)))
        except MissingMapping as exc:
            print(f"line {lineno}: {exc.args[0]}", file=sys.stderr)
            return EXIT_FAIL
    _emit(args, "".join(s + "\n" for s in out))
    return EXIT_OK


def cmd_verify(args) -> int:
    checks = []
    for c in run_checks(args.kmax, args.seed, args.jobs, args.only):
        checks.append(c)
        if not args.json:
            print(c.line(), flush=True)
    failed = [c for c in checks if not c.ok]
    if args.json:
        _emit(args, _dump({"ok": not failed, "checks": [c.to_json() for c in checks]}))
    else:
        print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
        if failed:
            print("failed: " + " ".join(c.name for c in failed))
    return EXIT_FAIL if failed else EXIT_OK


def _positive(text: str) -> int:
    try:
        n = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def _seed(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _global_flags(p: argparse.ArgumentParser, defaults: bool) -> None:
    # defined on the main parser and on every subcommand, so flags work on
    # either side of the command name; subcommands only override when given
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p.add_argument("--kmax", type=_positive, default=d(6), help="search length limit (default 6)")
    p.add_argument("--jobs", type=_positive, default=d(None), help="worker processes (default: all cores)")
    p.add_argument("--seed", type=_seed, default=d(DEFAULT_SEED), help="seed for randomized checks (default 0xB00)")
    p.add_argument("--json", action="store_true", default=d(False), help="emit JSON")
    p.add_argument("--out", default=d(None), help="write output to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pgabr", description="Boolean register instruction sets: equivalence and size-bounded completeness.")
    _global_flags(parser, True)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="list the effect classes of single instructions")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("minimal-sets", parents=[common], help="list the minimal complete method sets")
    p.set_defaults(func=cmd_minimal_sets)

    p = sub.add_parser("bound", parents=[common], help="strict size bound of a method set")
    p.add_argument("--methods", required=True, help="comma-separated method codes, e.g. ff,tt,ii")
    p.add_argument("--engine", choices=sorted(ENGINES), default="dp")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("sweep", parents=[common], help="bounds of every subset of a base set")
    p.add_argument("--base", default="canonical", help="'canonical' or comma-separated method codes")
    p.add_argument("--csv", help="also write one CSV row per subset to this file")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("rewrite", parents=[common], help="translate sequences through an instruction map")
    p.add_argument("--map", required=True, help="part1..part5[:alternative] or a JSON map file")
    p.add_argument("--in", dest="input", help="input file, one sequence per line (default stdin)")
    p.set_defaults(func=cmd_rewrite)

    p = sub.add_parser("verify", parents=[common], help="replay every published result")
    p.add_argument("--only", action="append", metavar="PREFIX", help="run only checks with this name prefix")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    if args.command == "sweep" and args.jobs is None:
        args.jobs = os.cpu_count() or 1
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"pgabr: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FixtureInvalid as exc:
        print(f"pgabr: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"pgabr: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
