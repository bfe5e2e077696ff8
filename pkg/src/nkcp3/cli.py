"""Command-line verification harness.

Runs the named identity suites and writes a JSON report to stdout or to
--out.  Exit codes: 0 when every check passes, 1 when any fails, 2 on a
usage error.  Reports are deterministic for a fixed configuration; run the
same invocation twice and diff the bytes.
"""

import argparse
import sys

from .report import SUITES, SuiteConfig, list_checks, run_suite

USAGE_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="nkcp3",
        description="Verification harness for the homogeneous metric family on CP^3",
    )
    p.add_argument("--suite", default="all", help="one of: %s, all" % ", ".join(sorted(SUITES)))
    p.add_argument("--a", type=float, action="append", default=None,
                   help="metric parameter (repeatable; default 0.5 1 2 3)")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--samples", type=int, default=25)
    p.add_argument("--tol-scale", type=float, default=1.0)
    p.add_argument("--fd-step", type=float, default=1e-5)
    p.add_argument("--out", default=None, help="write the JSON report here instead of stdout")
    p.add_argument("--list-checks", action="store_true", help="list suite names and exit")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0

    if args.list_checks:
        for name in list_checks():
            print(name)
        return 0

    a_values = tuple(args.a) if args.a else (0.5, 1.0, 2.0, 3.0)
    if any(a <= 0 for a in a_values):
        print("metric parameters must be positive", file=sys.stderr)
        return USAGE_ERROR
    if args.samples <= 0 or args.fd_step <= 0 or args.tol_scale <= 0:
        print("samples, fd-step and tol-scale must be positive", file=sys.stderr)
        return USAGE_ERROR

    config = SuiteConfig(
        a_values=a_values,
        seed=args.seed,
        samples=args.samples,
        tol_scale=args.tol_scale,
        fd_step=args.fd_step,
    )
    try:
        report = run_suite(args.suite, config)
    except KeyError as exc:
        print(f"unknown suite: {exc}", file=sys.stderr)
        return USAGE_ERROR

    text = report.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if report.passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
