"""Entry point: ``fgrade-kernel run <file.alg> [--json out.json] [--seed N] [--no-timing] [--pretty]``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .runner import RunOptions, dumps, render_pretty, run_text


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fgrade-kernel", description="Filter grade computations on polynomial data.")
    sub = ap.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="execute a .alg script and emit JSON")
    r.add_argument("script", help="path to the script, or - for stdin")
    r.add_argument("--json", metavar="OUT", help="also write the JSON document to OUT")
    r.add_argument("--seed", type=int, default=0, help="default seed for randomized searches")
    r.add_argument("--no-timing", action="store_true", help="omit wall-time fields for byte-stable output")
    r.add_argument("--pretty", action="store_true", help="print a human rendering instead of JSON")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.script == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(args.script).read_text(encoding="utf-8")
        except OSError as exc:
            print(f"fgrade-kernel: cannot read {args.script}: {exc}", file=sys.stderr)
            return 1
    doc, code = run_text(text, RunOptions(seed=args.seed, timing=not args.no_timing))
    payload = dumps(doc)
    if args.json:
        Path(args.json).write_text(payload + "\n", encoding="utf-8")
    print(render_pretty(doc) if args.pretty else payload)
    return code


if __name__ == "__main__":
    sys.exit(main())
