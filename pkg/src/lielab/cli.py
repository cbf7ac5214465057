"""Command line entry points: run, fuzz, fmt."""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .dsl import execute, format_script, parse_script, report_json, run_failed
from .errors import LielabError
from .theorems import fuzz_qadann


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _cmd_run(args) -> int:
    try:
        script = parse_script(_read(args.script))
    except LielabError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    report = execute(script, budget=args.budget, seed=args.seed)
    for res in report["results"]:
        verdict = res["verdict"] or (res["error"]["type"] if res["error"] else "no verdict")
        line = f"[{res['statement_index']:>3}] {verdict:<18} {res['statement_text']}"
        if res["hypothesis_failures"]:
            which = ", ".join(h["which"] for h in res["hypothesis_failures"])
            line += f"  (hypotheses: {which})"
        print(line)
    counts = {"fails": 0, "undecided": 0, "hypothesis_failed": 0, "error": 0}
    for res in report["results"]:
        if res["error"]:
            counts["error"] += 1
        elif res["verdict"] in counts:
            counts[res["verdict"]] += 1
    total = len(report["results"])
    print(
        f"{total} results: {counts['fails']} failed, {counts['undecided']} undecided, "
        f"{counts['hypothesis_failed']} outside hypotheses, {counts['error']} errors"
    )
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(report_json(report))
    return 1 if run_failed(report, strict=args.strict) else 0


def _cmd_fuzz(args) -> int:
    if args.target != "qadann":
        print(f"error: unknown fuzz target {args.target!r}", file=sys.stderr)
        return 2
    rows = fuzz_qadann(dim_max=args.dim_max, p=args.field, seed=args.seed, budget=args.budget)
    bad = 0
    for row in rows:
        print(f"{row['outcome']:<18} dim {row['q_dim']}/{row['l_dim']}  {row['description']}")
        if row["outcome"] == "fails":
            bad += 1
    print(f"{len(rows)} instances, {bad} failures")
    return 1 if bad else 0


def _cmd_fmt(args) -> int:
    try:
        script = parse_script(_read(args.script))
    except LielabError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    sys.stdout.write(format_script(script))
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="lielab", description="exact checks for derivation and annihilator structure")
    parser.add_argument("--version", action="version", version=f"lielab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a script and report each check")
    p_run.add_argument("script", help="path to a .lie script")
    p_run.add_argument("--json", metavar="PATH", help="also write the report as JSON")
    p_run.add_argument("--budget", type=int, default=None, help="enumeration budget (elements)")
    p_run.add_argument("--seed", type=int, default=0, help="seed recorded in the report")
    p_run.add_argument("--strict", action="store_true", help="fail on undecided or out-of-hypothesis results")
    p_run.set_defaults(func=_cmd_run)

    p_fuzz = sub.add_parser("fuzz", help="verify a statement on randomized instances")
    p_fuzz.add_argument("target", help="statement to fuzz (qadann)")
    p_fuzz.add_argument("--dim-max", type=int, default=6, help="largest ambient dimension")
    p_fuzz.add_argument("--field", type=int, default=5, help="prime modulus")
    p_fuzz.add_argument("--seed", type=int, default=0)
    p_fuzz.add_argument("--budget", type=int, default=None)
    p_fuzz.set_defaults(func=_cmd_fuzz)

    p_fmt = sub.add_parser("fmt", help="print the canonical form of a script")
    p_fmt.add_argument("script", help="path to a .lie script")
    p_fmt.set_defaults(func=_cmd_fmt)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
