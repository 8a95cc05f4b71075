"""Verification suites assembled into :class:`~powerkneading.reports.VerificationReport`.

Each runner is deterministic given its arguments.  ``run_suite("all", ...)``
concatenates every suite in a fixed order.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .family import a_escape, param_from_abar
from .monotonicity import (
    DEFAULT_N_MAX,
    LEMMA_MODES,
    MP_DIGITS,
    N_MAX_CAP,
    _rng,
    discrepancy_check,
    lemma_check,
    lemma_conditions,
    nesting_ok,
    proposition_suite,
    ratio_monotonicity_check,
    rlrl_abar_limit,
)
from .poincare import DomainError, extended
from .reports import Check, VerificationReport, merge
from .supersink import (
    g_derivative_scan,
    rlrl_t_range,
    sweep_alpha,
    tau_gamma_scan,
    uniqueness_witness,
)

SUITES = ("props", "lemma", "ratios", "uniqueness", "slopes")
DEFAULT_ALPHAS = (1.5, 2.0, 3.0)
SWEEP_ALPHAS = (1.2, 1.5, 2.0, 2.5, 3.0, math.pi)
RATIO_GRID_POINTS = 50
RATIO_GRID_LO = -6.0
RATIO_GRID_MARGIN = 1e-3
DISCREPANCY_PAIRS = 10
G_STEPS = 100
TAU_GAMMA_SAMPLES = 50
WITNESS_POINTS = 1000
SOUNDNESS_SLACK = -1e-30


def _alpha_tag(alpha: float) -> str:
    return format(alpha, ".6g")


def props_report(samples: int, seed: int, tol: float = 1e-10, digits: int = MP_DIGITS) -> VerificationReport:
    suite = proposition_suite(samples, seed, tol, digits)
    checks = [
        Check("props", c.name, c.passed, c.metric, c.value, c.threshold, c.samples, dict(c.detail))
        for c in suite.checks
    ]
    notes = [
        "identities run in extended precision over chart coordinates |t| <= 30 and in float64 over |t| <= 6",
        "push monotonicity sampled over |t| <= 30 and nonlinearity in [1e-3, 10]",
    ]
    return VerificationReport("props", seed, {"samples": samples, "tol": tol, "digits": digits}, checks, notes)


def lemma_report(samples: int, seed: int, digits: int = MP_DIGITS) -> VerificationReport:
    rep = lemma_check(samples, seed, digits)
    checks = []
    for mode, (count, margin) in rep.by_mode().items():
        checks.append(Check("lemma", f"conclusion[{mode}]", margin > 0, "min_margin", margin, 0.0, count))
    worst_ii = worst_iii = math.inf
    domains = True
    # recomputed from the stored points alone, at the sampling precision
    with extended(digits):
        for s in rep.samples:
            x, y, z = s.triple
            xt, yt, zt = s.triple_tilde
            ok, sii, siii = lemma_conditions(x, xt, y, yt, z, zt)
            domains = domains and ok
            worst_ii, worst_iii = min(worst_ii, float(sii)), min(worst_iii, float(siii))
    sound = domains and min(worst_ii, worst_iii) >= SOUNDNESS_SLACK
    checks.append(
        Check(
            "lemma",
            "hypotheses_reverified",
            sound,
            "min_slack",
            min(worst_ii, worst_iii),
            SOUNDNESS_SLACK,
            len(rep.samples),
            {"min_slack_ii": worst_ii, "min_slack_iii": worst_iii, "domains_ok": domains},
        )
    )
    checks.append(
        Check(
            "lemma",
            "violations",
            rep.violations == 0,
            "count",
            rep.violations,
            0,
            len(rep.samples),
            {
                "rejections": rep.rejections,
                "acceptance_rate": rep.acceptance_rate,
                "log10_margin_histogram": [list(b) for b in rep.histogram()],
            },
        )
    )
    notes = [f"sub-suites by sample index mod 4: {', '.join(LEMMA_MODES)}"]
    config = {"samples": samples, "digits": digits}
    return VerificationReport("lemma", seed, config, checks, notes)


def ratio_grid(alpha: float, points: int = RATIO_GRID_POINTS) -> tuple[float, ...]:
    top = rlrl_abar_limit(alpha) - RATIO_GRID_MARGIN
    return tuple(float(v) for v in np.linspace(RATIO_GRID_LO, top, points))


def random_pairs(seed: int, key: int, size: int, count: int) -> list[tuple[int, int]]:
    rng = _rng(seed, 6, key)
    pairs = []
    for _ in range(count):
        i, j = sorted(int(v) for v in rng.choice(size, 2, replace=False))
        pairs.append((i, j))
    return pairs


def ratios_report(
    seed: int, alphas: Sequence[float] = DEFAULT_ALPHAS, n_max: int = DEFAULT_N_MAX
) -> VerificationReport:
    checks = []
    for k, alpha in enumerate(alphas):
        tag = _alpha_tag(alpha)
        grid = ratio_grid(alpha)
        mono = ratio_monotonicity_check(alpha, grid, n_max)
        worst = min(mono.min_increase_even + mono.min_increase_odd)
        checks.append(
            Check(
                "ratios",
                f"ratio_monotonicity[alpha={tag}]",
                mono.passed and not mono.vacuous,
                "min_increase",
                worst,
                0.0,
                len(grid),
                {
                    "min_increase_even": list(mono.min_increase_even),
                    "min_increase_odd": list(mono.min_increase_odd),
                    "abar_range": [grid[0], grid[-1]],
                    "failures": [list(f) for f in mono.failures],
                },
            )
        )
        nested = [nesting_ok(alpha, param_from_abar(alpha, v).a, n_max, digits=MP_DIGITS) for v in grid]
        checks.append(
            Check(
                "ratios",
                f"nesting[alpha={tag}]",
                all(nested),
                "count",
                nested.count(False),
                0,
                len(grid),
                {"digits": MP_DIGITS},
            )
        )
        margins, per_pair = [], []
        for i, j in random_pairs(seed, k, len(grid), DISCREPANCY_PAIRS):
            rep = discrepancy_check(alpha, grid[i], grid[j], n_max)
            margins.append(rep.min_margin)
            per_pair.append([grid[i], grid[j], rep.delta_t, rep.min_margin])
        checks.append(
            Check(
                "ratios",
                f"discrepancy[alpha={tag}]",
                all(m > 0 for m in margins),
                "min_margin",
                min(margins),
                0.0,
                len(margins),
                {"pairs": per_pair},
            )
        )
    notes = [
        f"RLRL regime taken as abar below abar(a_rlrc); grid tops at abar(a_rlrc) - {RATIO_GRID_MARGIN:g}",
        f"discrepancy tested for n = 0 .. {n_max} (cap {N_MAX_CAP})",
        "ratio increments must exceed floating-point noise; grid spacing is at least 1e-6",
    ]
    config = {"alphas": list(alphas), "n_max": n_max, "grid_points": RATIO_GRID_POINTS, "pairs": DISCREPANCY_PAIRS}
    return VerificationReport("ratios", seed, config, checks, notes)


def uniqueness_report(
    seed: int, alphas: Sequence[float] = DEFAULT_ALPHAS, sweep: Sequence[float] = SWEEP_ALPHAS
) -> VerificationReport:
    checks = []
    for target in ("RLRC", "RLRRRLRC"):
        for alpha in alphas:
            w = uniqueness_witness(alpha, target, WITNESS_POINTS)
            checks.append(
                Check(
                    "uniqueness",
                    f"sign_changes[{target},alpha={_alpha_tag(alpha)}]",
                    w.sign_changes == 1,
                    "sign_changes",
                    w.sign_changes,
                    1,
                    w.grid_points,
                    {"prefix_points": w.prefix_points, "change_locations": list(w.change_locations)},
                )
            )
        rows = sweep_alpha(sweep, target)
        residuals = [r.result.residual for r in rows if r.ok]
        contained = all(r.ok and 1 < r.result.a < a_escape(r.alpha) for r in rows)
        worst = max(residuals) if residuals else math.inf
        checks.append(
            Check(
                "uniqueness",
                f"solve_residual[{target}]",
                len(residuals) == len(rows) and worst <= 1e-12 and contained,
                "max_residual",
                worst,
                1e-12,
                len(rows),
                {
                    "alphas": list(sweep),
                    "a": [r.result.a if r.ok else None for r in rows],
                    "errors": [r.error for r in rows if not r.ok],
                    "inside_escape_bound": contained,
                },
            )
        )
    config = {"alphas": list(alphas), "sweep_alphas": list(sweep), "grid_points": WITNESS_POINTS}
    notes = ["RLRRRLRC grid spans (a_rlrc + 1e-6, a_escape - 1e-6)"]
    return VerificationReport("uniqueness", seed, config, checks, notes)


def slopes_report(seed: int, alphas: Sequence[float] = DEFAULT_ALPHAS) -> VerificationReport:
    checks = []
    for alpha in alphas:
        tag = _alpha_tag(alpha)
        lo, hi = rlrl_t_range(alpha)
        g = g_derivative_scan(alpha, lo, hi, G_STEPS)
        checks.append(
            Check(
                "slopes",
                f"g_slope[alpha={tag}]",
                g.all_slopes_exceed_one,
                "min_slope",
                g.min_slope,
                1.0,
                len(g.samples),
                {"t_range": [lo, hi], "margin_over_one": g.min_slope - 1.0},
            )
        )
        tg = tau_gamma_scan(alpha, TAU_GAMMA_SAMPLES)
        checks.append(
            Check(
                "slopes",
                f"tau_gamma_monotone[alpha={tag}]",
                tg.monotone,
                "min_slope",
                tg.min_slope,
                0.0,
                len(tg.samples),
                {"max_slope": tg.max_slope, "tau_range": [tg.samples[0].tau, tg.samples[-1].tau]},
            )
        )
    config = {"alphas": list(alphas), "g_steps": G_STEPS, "tau_gamma_samples": TAU_GAMMA_SAMPLES}
    notes = ["tau-gamma scans start at abar(a_rlrc) + 1e-4 and end at the RLRRRLRC parameter"]
    return VerificationReport("slopes", seed, config, checks, notes)


def run_suite(
    name: str,
    seed: int,
    samples: int = 10_000,
    tol: float = 1e-10,
    alphas: Sequence[float] = DEFAULT_ALPHAS,
    n_max: int = DEFAULT_N_MAX,
    digits: int = MP_DIGITS,
) -> VerificationReport:
    if samples < 1:
        raise DomainError(f"samples must be positive, got {samples!r}")
    runners = {
        "props": lambda: props_report(samples, seed, tol, digits),
        "lemma": lambda: lemma_report(samples, seed, digits),
        "ratios": lambda: ratios_report(seed, alphas, n_max),
        "uniqueness": lambda: uniqueness_report(seed, alphas),
        "slopes": lambda: slopes_report(seed, alphas),
    }
    if name == "all":
        config = {"samples": samples, "tol": tol, "alphas": list(alphas), "n_max": n_max, "digits": digits}
        return merge("all", seed, config, [runners[s]() for s in SUITES])
    if name not in runners:
        raise DomainError(f"unknown suite {name!r}")
    return runners[name]()
