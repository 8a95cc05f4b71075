"""Plot-ready data for the three monotone quantities at a few critical orders.

For each alpha, writes g_<alpha>.csv (t, g, slope), taugamma_<alpha>.csv
(tau, gamma) and ratios_<alpha>.csv (abar, n, r_even, r_odd) into --out-dir.
"""

import argparse
import os
import sys

import numpy as np

from powerkneading.family import param_from_abar
from powerkneading.monotonicity import ratio_series, rlrl_abar_limit
from powerkneading.reports import Table
from powerkneading.supersink import g_derivative_scan, rlrl_t_range, tau_gamma_scan


def _write(path, table):
    with open(path, "w", newline="\n") as fh:
        fh.write(table.to_csv())


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alphas", default="1.5,2,3")
    ap.add_argument("--steps", type=int, default=200)
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--out-dir", default="scan_output")
    args = ap.parse_args(argv)
    os.makedirs(args.out_dir, exist_ok=True)

    ok = True
    for alpha in (float(v) for v in args.alphas.split(",")):
        tag = format(alpha, "g")
        g = g_derivative_scan(alpha, *rlrl_t_range(alpha), args.steps)
        rows = [(s.tcoord, s.g, slope) for s, slope in zip(g.samples, list(g.slopes) + [None])]
        _write(os.path.join(args.out_dir, f"g_{tag}.csv"),
               Table("g", ("t", "g", "slope"), rows, {"min slope": g.min_slope}))

        tg = tau_gamma_scan(alpha, args.steps)
        rows = [(s.tau, s.gamma) for s in tg.samples]
        _write(os.path.join(args.out_dir, f"taugamma_{tag}.csv"),
               Table("taugamma", ("tau", "gamma"), rows, {"min slope": tg.min_slope, "max slope": tg.max_slope}))

        top = rlrl_abar_limit(alpha) - 1e-3
        rows = []
        for abar in np.linspace(-6.0, top, args.steps):
            s = ratio_series(alpha, param_from_abar(alpha, float(abar)).a, args.n_max)
            rows.extend((float(abar), n, re, ro) for n, (re, ro) in enumerate(zip(s.evens, s.odds)))
        _write(os.path.join(args.out_dir, f"ratios_{tag}.csv"),
               Table("ratios", ("abar", "n", "r_even", "r_odd"), rows))

        ok = ok and g.all_slopes_exceed_one and tg.monotone
        print(f"alpha={tag}: min g' {g.min_slope:.4f}, gamma(tau) slopes in [{tg.min_slope:.4g}, {tg.max_slope:.4g}]")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
