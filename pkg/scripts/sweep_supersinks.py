"""Tabulate the RLRC and RLRRRLRC parameters over a range of critical orders.

Writes one CSV row per (alpha, target) with a, abar, residual and a_escape.
"""

import argparse
import sys

import numpy as np

from powerkneading.family import a_escape
from powerkneading.reports import Table
from powerkneading.supersink import sweep_alpha


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lo", type=float, default=1.1)
    ap.add_argument("--hi", type=float, default=6.0)
    ap.add_argument("--count", type=int, default=50)
    ap.add_argument("--out", default="-")
    args = ap.parse_args(argv)

    alphas = [float(v) for v in np.linspace(args.lo, args.hi, args.count)]
    rows = []
    failures = 0
    for target in ("RLRC", "RLRRRLRC"):
        for row in sweep_alpha(alphas, target):
            if row.ok:
                r = row.result
                rows.append((row.alpha, target, r.a, r.abar, r.residual, a_escape(row.alpha), ""))
            else:
                failures += 1
                rows.append((row.alpha, target, None, None, None, a_escape(row.alpha), row.error))
    table = Table("sweep", ("alpha", "target", "a", "abar", "residual", "a_escape", "error"), rows,
                  {"failures": failures})
    text = table.to_csv()
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
