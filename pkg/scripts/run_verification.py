"""Run every verification suite and store the JSON report.

Equivalent to ``powerkneading verify all --seed SEED --out PATH``, plus a
one-line summary per check on stdout.
"""

import argparse
import sys

from powerkneading.verify import run_suite


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, required=True)
    ap.add_argument("--samples", type=int, default=10_000)
    ap.add_argument("--out", default="verification_report.json")
    args = ap.parse_args(argv)

    report = run_suite("all", args.seed, samples=args.samples)
    with open(args.out, "w", newline="\n") as fh:
        fh.write(report.to_json())
    for c in report.checks:
        print(f"{'pass' if c.passed else 'FAIL'}  {c.suite:10s} {c.name:40s} {c.metric}={c.value}")
    print(f"overall: {'pass' if report.passed else 'fail'} -> {args.out}")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
