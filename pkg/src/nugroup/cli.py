"""Command-line front end.

Subcommands: parse, enumerate, nu, tensor, corpus.  Exit codes: 0 all
pass, 1 verification failure, 2 input or usage error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .corpus import (
    corpus_entry,
    corpus_presentations,
    entry_report,
    render_markdown,
    report_json,
)
from .coset import EnumLimits, LimitExceeded, enumerate_presentation
from .nu import build_nu
from .tensor import TENSOR_ORDER_CAP, tensor_square
from .engine import fingerprint
from .verify import CHECKS
from .words import ParseError, parse_presentation

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3


def _load_groups(path: str | None):
    """Presentations from a DSL file, or the built-in corpus when no file
    is given.  User files override built-ins name by name."""
    groups = corpus_presentations()
    if path:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise SystemExit(_usage_error(f"cannot read {path}: {exc}"))
        groups.update({p.name: p for p in parse_presentation(text)})
    return groups


def _usage_error(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_USAGE


def _pick_group(groups, name: str | None):
    if name is None:
        if len(groups) == 1:
            return next(iter(groups.values()))
        raise SystemExit(_usage_error("--group is required when several groups are available"))
    if name not in groups:
        raise SystemExit(_usage_error(f"unknown group {name!r}"))
    return groups[name]


def _limits(args) -> EnumLimits:
    try:
        return EnumLimits(max_cosets=args.max_cosets, max_time=args.max_time)
    except ValueError as exc:
        raise SystemExit(_usage_error(str(exc)))


def _parse_checks(arg: str | None):
    if arg is None or arg == "all":
        return None
    names = [s for s in arg.split(",") if s]
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise SystemExit(_usage_error(f"unknown check names: {', '.join(unknown)}"))
    return names


def cmd_parse(args) -> int:
    try:
        text = Path(args.file).read_text()
        groups = parse_presentation(text)
    except ParseError as exc:
        return _usage_error(str(exc))
    except OSError as exc:
        return _usage_error(str(exc))
    for p in groups:
        lengths = [len(r) for r in p.relators]
        print(f"{p.name}: {p.ngens} generators, {len(p.relators)} relators, lengths {lengths}")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    import time

    groups = _load_groups(args.file)
    pres = _pick_group(groups, args.group)
    t0 = time.perf_counter()
    try:
        table = enumerate_presentation(pres, _limits(args))
    except LimitExceeded as exc:
        print(f"limit exceeded ({exc.kind}): high water {exc.high_water} cosets", file=sys.stderr)
        return EXIT_LIMIT
    dt = time.perf_counter() - t0
    print(f"{pres.name}: order {table.num_cosets} ({dt:.2f}s, high water {table.high_water} cosets)")
    return EXIT_OK


def cmd_nu(args) -> int:
    groups = _load_groups(args.file)
    pres = _pick_group(groups, args.group)
    checks = _parse_checks(args.checks)
    try:
        entry = corpus_entry(pres.name)
    except KeyError:
        entry = None
    limits = _limits(args)
    try:
        if entry is not None:
            report = entry_report(
                entry,
                strategy=args.strategy,
                checks=checks,
                seed=args.seed,
                limits=limits,
                presentations=groups,
            )
        else:
            from .verify import run_checks

            ctx = build_nu(pres, args.strategy, limits)
            results = run_checks(ctx, checks, seed=args.seed)
            report = {
                "group": pres.name,
                "strategy": args.strategy,
                "gates": {},
                "orders": {
                    "g": ctx.base.num_points,
                    "nu": ctx.nu.num_points,
                    "theta": ctx.theta().order,
                    "upsilon1": ctx.upsilon1().order,
                    "upsilon2": ctx.upsilon2().order,
                    "upsilon3": ctx.upsilon3().order,
                    "mu": ctx.mu().order,
                    "delta": ctx.delta().order,
                    "derived": ctx.nu_derived().order,
                },
                "exponents": {},
                "checks": [r.to_json() for r in results],
                "_results": results,
                "status": "fail" if any(r.status == "fail" for r in results) else "pass",
                "ms": 0.0,
            }
    except LimitExceeded as exc:
        print(f"limit exceeded ({exc.kind}): high water {exc.high_water} cosets", file=sys.stderr)
        return EXIT_LIMIT
    _emit([report], args)
    return EXIT_OK if report["status"] == "pass" else EXIT_VERIFY


def cmd_tensor(args) -> int:
    groups = _load_groups(args.file)
    pres = _pick_group(groups, args.group)
    try:
        table = enumerate_presentation(pres, _limits(args))
    except LimitExceeded as exc:
        print(f"limit exceeded ({exc.kind}): high water {exc.high_water} cosets", file=sys.stderr)
        return EXIT_LIMIT
    from .coset import to_regular_engine

    base = to_regular_engine(table, pres)
    if base.num_points > TENSOR_ORDER_CAP:
        print(
            f"group order {base.num_points} exceeds the tensor oracle cap {TENSOR_ORDER_CAP}",
            file=sys.stderr,
        )
        return EXIT_LIMIT
    ts = tensor_square(base, _limits(args))
    fp = fingerprint(ts)
    print(f"{pres.name}: |G (x) G| = {ts.num_points}")
    print(f"  exponent {fp.exponent}, abelianization {list(fp.abelianization)}")
    print(f"  class sizes {list(fp.conjugacy_class_sizes)}, center {fp.center_order}")
    return EXIT_OK


def cmd_corpus(args) -> int:
    checks = _parse_checks(args.checks)
    include = None
    if args.include is not None:
        include = [s for s in args.include.split(",") if s and s != "none"]
        try:
            for name in include:
                corpus_entry(name)
        except KeyError as exc:
            return _usage_error(str(exc))
    try:
        reports = run_corpus_with_args(include, args, checks)
    except LimitExceeded as exc:
        print(f"limit exceeded ({exc.kind}): high water {exc.high_water} cosets", file=sys.stderr)
        return EXIT_LIMIT
    _emit(reports, args)
    return EXIT_OK if all(r["status"] == "pass" for r in reports) else EXIT_VERIFY


def run_corpus_with_args(include, args, checks):
    from .corpus import run_corpus

    return run_corpus(
        include,
        heavy=args.heavy,
        checks=checks,
        seed=args.seed,
        strategy=args.strategy,
        limits=_limits(args),
    )


def _emit(reports, args) -> None:
    if args.json:
        Path(args.json).write_text(report_json(reports, timings=args.timings))
    text = (
        report_json(reports, timings=args.timings)
        if args.output == "json"
        else render_markdown(reports)
    )
    print(text, end="" if text.endswith("\n") else "\n")


def _add_common(sub, *, group_flag=True):
    if group_flag:
        sub.add_argument("--group", help="group name inside the DSL file / built-in corpus")
    sub.add_argument("--max-cosets", type=int, default=2_000_000, metavar="N")
    sub.add_argument("--max-time", type=float, default=600.0, metavar="S")


def _add_report(sub):
    sub.add_argument("--strategy", choices=["gens", "cayley"], default="gens")
    sub.add_argument("--checks", default="all", metavar="LIST|all",
                     help=f"comma list from: {','.join(CHECKS)}")
    sub.add_argument("--json", metavar="PATH", help="also write the JSON report to PATH")
    sub.add_argument("--output", choices=["markdown", "json"], default="markdown")
    sub.add_argument("--seed", type=int, default=0, metavar="N")
    sub.add_argument("--timings", action="store_true", help="include wall-clock times in JSON")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="nugroup",
        description="Coset enumeration and structural verification for the nu(G) construction.",
    )
    sp = ap.add_subparsers(dest="command", required=True)

    p = sp.add_parser("parse", help="parse a DSL file and summarize its groups")
    p.add_argument("file")
    p.set_defaults(fn=cmd_parse)

    p = sp.add_parser("enumerate", help="enumerate a presentation over the trivial subgroup")
    p.add_argument("file", nargs="?", help="DSL file (defaults to the built-in corpus)")
    _add_common(p)
    p.set_defaults(fn=cmd_enumerate)

    p = sp.add_parser("nu", help="build nu(G) and run structural checks")
    p.add_argument("file", nargs="?", help="DSL file (defaults to the built-in corpus)")
    _add_common(p)
    _add_report(p)
    p.set_defaults(fn=cmd_nu)

    p = sp.add_parser("tensor", help="brute-force tensor square of a small group")
    p.add_argument("file", nargs="?", help="DSL file (defaults to the built-in corpus)")
    _add_common(p)
    p.set_defaults(fn=cmd_tensor)

    p = sp.add_parser("corpus", help="run the verification corpus")
    p.add_argument("--include", metavar="NAMES", help="comma list of entries ('none' for empty)")
    p.add_argument("--heavy", action="store_true", help="include the heavy entries")
    _add_common(p, group_flag=False)
    _add_report(p)
    p.set_defaults(fn=cmd_corpus)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
