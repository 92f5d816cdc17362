#!/usr/bin/env python3
"""Run one harmonic CLI invocation and check its exit code, JSON schema and
assertions on the parsed report.

usage: run_case.py --expect-exit N [--schema FILE] [--assert EXPR]... -- CMD...

EXPR is a Python expression over `d` (the parsed report) and `math`.
"""
import argparse
import json
import math
import subprocess
import sys

SKIP = 77


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--expect-exit", type=int, required=True)
    ap.add_argument("--schema")
    ap.add_argument("--assert", dest="asserts", action="append", default=[])
    ap.add_argument("cmd", nargs=argparse.REMAINDER)
    args = ap.parse_args()
    cmd = args.cmd[1:] if args.cmd and args.cmd[0] == "--" else args.cmd

    proc = subprocess.run(cmd, capture_output=True, text=True, timeout=600)
    if proc.returncode != args.expect_exit:
        print(f"exit {proc.returncode}, expected {args.expect_exit}", file=sys.stderr)
        print(proc.stdout[-2000:], proc.stderr[-2000:], sep="\n", file=sys.stderr)
        return 1
    if not args.schema and not args.asserts:
        return 0

    try:
        d = json.loads(proc.stdout)
    except json.JSONDecodeError as e:
        print(f"stdout is not JSON: {e}", file=sys.stderr)
        return 1

    if args.schema:
        try:
            import jsonschema
        except ImportError:
            print("jsonschema not installed", file=sys.stderr)
            return SKIP
        with open(args.schema, encoding="utf-8") as f:
            schema = json.load(f)
        try:
            jsonschema.validate(d, schema, cls=jsonschema.Draft202012Validator)
        except jsonschema.ValidationError as e:
            print(f"schema: {e.message} at {list(e.absolute_path)}", file=sys.stderr)
            return 1

    for expr in args.asserts:
        if not eval(expr, {"math": math}, {"d": d}):
            print(f"assertion failed: {expr}", file=sys.stderr)
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
