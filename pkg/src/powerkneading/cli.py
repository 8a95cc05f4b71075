"""Command-line front end.

Exit status: 0 when everything passes, 1 on a verification or convergence
failure, 2 on invalid input.  Output goes to ``--out``, else to
``$POWERKNEADING_OUT_DIR/<command>.<format>`` when that variable is set, else
to stdout.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from typing import Optional, Sequence

from . import __version__
from .family import (
    DEFAULT_C_TOL,
    N_MAX_CAP,
    RegimeError,
    a_escape,
    check_alpha,
    iterate,
    kneading,
    param_from_a,
    param_from_abar,
    param_from_t,
    symbol,
)
from .monotonicity import DEFAULT_N_MAX, MP_DIGITS, discrepancy_check, ratio_monotonicity_check, ratio_series
from .poincare import DomainError
from .reports import Table
from .supersink import (
    DEFAULT_TOL,
    TARGETS,
    BracketNotFound,
    ToleranceNotReached,
    g_derivative_scan,
    rlrl_t_range,
    sweep_alpha,
    tau_gamma_scan,
)
from .verify import DEFAULT_ALPHAS, SUITES, random_pairs, run_suite

OUT_DIR_ENV = "POWERKNEADING_OUT_DIR"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# options whose value may start with '-', e.g. --abar-grid -6:-0.1:50
VALUE_FLAGS = ("--alpha", "--alphas", "--a", "--abar", "--abar-prime", "--t", "--abar-grid", "--t-range")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


# ---------------------------------------------------------------------------
# argument types


def _real(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return value


def _alpha_list(text: str) -> list[float]:
    if ":" in text:
        return list(_grid(text))
    return [_real(v) for v in text.split(",") if v.strip()]


def _grid(text: str) -> tuple[float, ...]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"grid must be lo:hi:count, got {text!r}")
    lo, hi = _real(parts[0]), _real(parts[1])
    try:
        count = int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid count must be an integer, got {parts[2]!r}")
    if count < 1:
        raise argparse.ArgumentTypeError("grid count must be positive")
    if count == 1:
        return (lo,)
    if not hi > lo:
        raise argparse.ArgumentTypeError(f"grid needs lo < hi, got {text!r}")
    return tuple(lo + (hi - lo) * i / (count - 1) for i in range(count - 1)) + (hi,)


def _range(text: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"range must be lo:hi, got {text!r}")
    return _real(parts[0]), _real(parts[1])


def _target(text: str) -> str:
    if text not in TARGETS:
        raise argparse.ArgumentTypeError(f"kneading must be one of {', '.join(TARGETS)}")
    return text


# ---------------------------------------------------------------------------
# parser


def _add_output(p):
    p.add_argument("--format", choices=("csv", "json"), default=None, help="output format")
    p.add_argument("--out", default=None, help="output file (default: stdout)")


def _add_param(p, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--a", type=_real, help="raw parameter a")
    g.add_argument("--abar", type=_real, help="parameter in the abar chart")
    g.add_argument("--t", type=_real, help="parameter in the t chart (t > 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="powerkneading", description="Kneading laboratory for f_a(x) = -|x|^alpha + a.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("orbit", help="rescaled and raw post-critical orbit")
    p.add_argument("--alpha", type=_real, required=True)
    _add_param(p)
    p.add_argument("--n", "--n-max", dest="n", type=int, default=16, help="number of iterates")
    p.add_argument("--c-tol", type=_real, default=DEFAULT_C_TOL)
    _add_output(p)

    p = sub.add_parser("kneading", help="kneading sequence of the critical orbit")
    p.add_argument("--alpha", type=_real, required=True)
    _add_param(p)
    p.add_argument("--n", "--n-max", dest="n", type=int, default=16)
    p.add_argument("--c-tol", type=_real, default=DEFAULT_C_TOL)
    _add_output(p)

    for name, help_text in (("solve", "locate super-stable parameters"), ("sweep", "solve across an alpha list")):
        p = sub.add_parser(name, help=help_text)
        if name == "solve":
            g = p.add_mutually_exclusive_group(required=True)
            g.add_argument("--alpha", type=_real)
            g.add_argument("--alphas", type=_alpha_list, help="comma list or lo:hi:count")
        else:
            p.add_argument("--alphas", type=_alpha_list, required=True, help="comma list or lo:hi:count")
        p.add_argument("--kneading", type=_target, required=True, help="RC, RLRC or RLRRRLRC")
        p.add_argument("--tol", type=_real, default=DEFAULT_TOL)
        _add_output(p)

    p = sub.add_parser("scan", help="plot-ready scans")
    scans = p.add_subparsers(dest="scan", required=True, parser_class=_Parser)
    s = scans.add_parser("g", help="g(t) and its secant slopes over the RLRL regime")
    s.add_argument("--alpha", type=_real, required=True)
    s.add_argument("--steps", type=int, default=100)
    s.add_argument("--t-range", type=_range, default=None, help="lo:hi (default: RLRL regime interior)")
    _add_output(s)
    s = scans.add_parser("taugamma", help="(tau, gamma) between the RLRC and RLRRRLRC parameters")
    s.add_argument("--alpha", type=_real, required=True)
    s.add_argument("--samples", type=int, default=50)
    _add_output(s)
    s = scans.add_parser("ratios", help="gap ratios on an abar grid")
    s.add_argument("--alpha", type=_real, required=True)
    s.add_argument("--abar-grid", type=_grid, required=True, help="lo:hi:count")
    s.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    _add_output(s)
    s = scans.add_parser("discrepancy", help="base-coordinate discrepancy between parameter pairs")
    s.add_argument("--alpha", type=_real, required=True)
    s.add_argument("--abar", type=_real, help="first abar of an explicit pair")
    s.add_argument("--abar-prime", type=_real, help="second abar of an explicit pair")
    s.add_argument("--abar-grid", type=_grid, help="lo:hi:count; draw random pairs from it")
    s.add_argument("--samples", type=int, default=10, help="number of random pairs")
    s.add_argument("--seed", type=int, help="seed for random pairs")
    s.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    _add_output(s)

    p = sub.add_parser("verify", help="verification suites")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--tol", type=_real, default=1e-10)
    p.add_argument("--alphas", type=_alpha_list, default=list(DEFAULT_ALPHAS))
    p.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    p.add_argument("--digits", type=int, default=MP_DIGITS, help="decimal digits for extended-precision runs")
    _add_output(p)
    return parser


def _merge_negative_values(argv: Sequence[str]) -> list[str]:
    out, i = [], 0
    argv = list(argv)
    while i < len(argv):
        tok = argv[i]
        if tok in VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") and argv[i + 1][1:2] not in ("-", ""):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


# ---------------------------------------------------------------------------
# commands


def _parameter(args):
    check_alpha(args.alpha)
    if args.a is not None:
        return param_from_a(args.alpha, args.a)
    if args.abar is not None:
        return param_from_abar(args.alpha, args.abar)
    return param_from_t(args.alpha, args.t)


def cmd_orbit(args) -> Table:
    par = _parameter(args)
    orbit = iterate(args.alpha, par.a, args.n, args.c_tol)
    rows = [(n, y, par.a * y, symbol(y, args.c_tol)) for n, y in enumerate(orbit.points)]
    summary = {"alpha": args.alpha, "a": par.a, "status": orbit.status.value}
    if orbit.index is not None:
        summary["index"] = orbit.index
    return Table("orbit", ("n", "y_n", "x_n", "symbol"), rows, summary, True)


def cmd_kneading(args) -> Table:
    par = _parameter(args)
    k = kneading(args.alpha, par.a, args.n, args.c_tol)
    rows = [(args.alpha, par.a, par.abar, k.symbols, k.escaped, args.c_tol)]
    return Table("kneading", ("alpha", "a", "abar", "kneading", "escaped", "c_tol"), rows, {}, True)


def cmd_solve(args) -> Table:
    alphas = [args.alpha] if getattr(args, "alpha", None) is not None else args.alphas
    if not alphas:
        raise DomainError("no alpha values given")
    for alpha in alphas:
        check_alpha(alpha)
    if not args.tol >= 1e-14:
        raise DomainError(f"tol must be at least 1e-14, got {args.tol!r}")
    rows, failures = [], 0
    for row in sweep_alpha(alphas, args.kneading, args.tol):
        r = row.result
        if r is None:
            failures += 1
            rows.append((row.alpha, row.target, None, None, None, None, None, None, None, "fail", row.error))
            continue
        esc = a_escape(row.alpha)
        rows.append(
            (row.alpha, row.target, r.a, r.abar, r.residual, r.iterations, r.bracket[0], r.bracket[1],
             esc, "ok", "")
        )
    columns = ("alpha", "target", "a", "abar", "residual", "iterations", "bracket_lo", "bracket_hi",
               "a_escape", "status", "error")
    summary = {"rows": len(rows), "failures": failures, "all converged": failures == 0}
    return Table(args.command, columns, rows, summary, failures == 0)


def cmd_scan(args) -> Table:
    check_alpha(args.alpha)
    return {"g": _scan_g, "taugamma": _scan_taugamma, "ratios": _scan_ratios, "discrepancy": _scan_discrepancy}[
        args.scan
    ](args)


def _scan_g(args) -> Table:
    lo, hi = args.t_range if args.t_range else rlrl_t_range(args.alpha)
    scan = g_derivative_scan(args.alpha, lo, hi, args.steps)
    slopes = list(scan.slopes) + [None]
    rows = [(s.tcoord, s.g, s.a, slope) for s, slope in zip(scan.samples, slopes)]
    ok = scan.all_slopes_exceed_one
    summary = {"all slopes > 1": ok, "min slope": scan.min_slope, "margin over 1": scan.min_slope - 1.0}
    return Table("scan_g", ("t", "g", "a", "slope"), rows, summary, ok)


def _scan_taugamma(args) -> Table:
    scan = tau_gamma_scan(args.alpha, args.samples)
    slopes = list(scan.slopes) + [None]
    rows = [(s.abar, s.tau, s.gamma, slope) for s, slope in zip(scan.samples, slopes)]
    summary = {
        "gamma strictly increasing in tau": scan.monotone,
        "min slope": scan.min_slope,
        "max slope": scan.max_slope,
    }
    return Table("scan_taugamma", ("abar", "tau", "gamma", "slope"), rows, summary, scan.monotone)


def _scan_ratios(args) -> Table:
    grid = args.abar_grid
    report = ratio_monotonicity_check(args.alpha, grid, args.n_max)
    rows = []
    for v in grid:
        par = param_from_abar(args.alpha, v)
        series = ratio_series(args.alpha, par.a, args.n_max)
        for n, (re, ro) in enumerate(zip(series.evens, series.odds)):
            rows.append((v, par.a, n, re, ro))
    summary = {}
    for n in range(args.n_max + 1):
        inc_e, inc_o = report.min_increase_even[n], report.min_increase_odd[n]
        summary[f"n={n} increasing"] = (inc_e > 0 and inc_o > 0) if not report.vacuous else True
        summary[f"n={n} min increase even"] = inc_e
        summary[f"n={n} min increase odd"] = inc_o
    summary["all ratios strictly increasing"] = report.passed
    if report.vacuous:
        summary["vacuous"] = True
    return Table("scan_ratios", ("abar", "a", "n", "r_even", "r_odd"), rows, summary, report.passed)


def _scan_discrepancy(args) -> Table:
    if args.abar is not None or args.abar_prime is not None:
        if args.abar is None or args.abar_prime is None:
            raise DomainError("--abar and --abar-prime must be given together")
        pairs = [(args.abar, args.abar_prime)]
    elif args.abar_grid is not None:
        if args.seed is None:
            raise DomainError("--seed is required to draw random pairs")
        grid = args.abar_grid
        if len(grid) < 2:
            raise DomainError("grid needs at least two points")
        if args.samples < 1:
            raise DomainError(f"samples must be positive, got {args.samples!r}")
        pairs = [(grid[i], grid[j]) for i, j in random_pairs(args.seed, 0, len(grid), args.samples)]
    else:
        raise DomainError("give --abar and --abar-prime, or --abar-grid with --seed")
    rows, worst = [], math.inf
    for lo, hi in pairs:
        rep = discrepancy_check(args.alpha, lo, hi, args.n_max)
        for n, lhs, margin in rep.per_n:
            rows.append((lo, hi, n, lhs, rep.delta_t, margin))
        worst = min(worst, rep.min_margin)
    ok = worst > 0
    summary = {"all margins > 0": ok, "min margin": worst, "n range": f"0..{args.n_max}"}
    return Table("scan_discrepancy", ("abar", "abar_prime", "n", "lhs", "delta_t", "margin"), rows, summary, ok)


def cmd_verify(args):
    return run_suite(args.suite, args.seed, args.samples, args.tol, args.alphas, args.n_max, args.digits)


COMMANDS = {"orbit": cmd_orbit, "kneading": cmd_kneading, "solve": cmd_solve, "sweep": cmd_solve,
            "scan": cmd_scan, "verify": cmd_verify}


def _emit(args, text: str, fmt: str) -> None:
    path = args.out
    if path is None and os.environ.get(OUT_DIR_ENV):
        name = args.command + (f"_{args.scan}" if args.command == "scan" else "")
        if args.command == "verify":
            name += f"_{args.suite}"
        path = os.path.join(os.environ[OUT_DIR_ENV], f"{name}.{fmt}")
    if path is None:
        sys.stdout.write(text)
        return
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        fh.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    try:
        args = parser.parse_args(_merge_negative_values(argv))
    except UsageError as exc:
        print(f"powerkneading: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if hasattr(args, "n") and not (1 <= args.n <= N_MAX_CAP):
            raise DomainError(f"--n must be in [1, {N_MAX_CAP}], got {args.n}")
        result = COMMANDS[args.command](args)
    except (DomainError, RegimeError) as exc:
        print(f"powerkneading: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BracketNotFound, ToleranceNotReached) as exc:
        print(f"powerkneading: solver failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    fmt = args.format or ("json" if args.command == "verify" else "csv")
    text = result.to_json() if fmt == "json" else result.to_csv()
    try:
        _emit(args, text, fmt)
    except OSError as exc:
        print(f"powerkneading: cannot write output: {exc}", file=sys.stderr)
        return EXIT_FAIL
    passed = result.passed
    return EXIT_OK if passed or passed is None else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
