"""Ratio and discrepancy monotonicity in the RLRL regime, the three-triple lemma,
and the chart-identity suite.

Sampling uses one Philox stream per (suite, check, sample index), derived from
the user seed through ``numpy.random.SeedSequence``, so every sample is
reproducible on its own and reports do not depend on evaluation order.
"""

from __future__ import annotations

import contextlib
import math
import sys
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import gmpy2
import numpy as np

from .family import (
    RegimeError,
    check_alpha,
    iterate_raw,
    kneading,
    orbit_gaps,
    param_from_a,
    param_from_abar,
)
from .poincare import (
    DomainError,
    coord,
    coord_inv,
    extended,
    hbar,
    lib,
    push_at,
    push_limits,
)
from .supersink import find_superstable

N_MAX_CAP = 12
DEFAULT_N_MAX = 8
RLRL_MARGIN = 1e-4
MIN_GRID_SPACING = 1e-6
SMALL_GAP = 1e-10
# chart bounds for the identity samplers
WIDE_CHART = 30.0
FLOAT_CHART = 6.0
MP_DIGITS = 60


def _rng(seed: int, *key: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=key)))


# ---------------------------------------------------------------------------
# ratios


@dataclass(frozen=True)
class RatioSeries:
    a: float
    abar: float
    evens: tuple[float, ...]
    odds: tuple[float, ...]
    n_max: int
    notes: tuple[str, ...] = ()


def _rlrl_prefix(alpha: float, a: float, length: int) -> None:
    symbols = kneading(alpha, a, length, c_tol=0.0).symbols
    expected = ("RL" * length)[:length]
    if symbols != expected:
        raise RegimeError(f"kneading {symbols} at a={a!r} is not {expected}")


def _check_n_max(n_max: int) -> None:
    if not (0 <= n_max <= N_MAX_CAP):
        raise DomainError(f"n_max must be in [0, {N_MAX_CAP}], got {n_max!r}")


def ratio_series(alpha: float, a: float, n_max: int = DEFAULT_N_MAX, raw: bool = False) -> RatioSeries:
    """r^n_e = |d_{2n+2}| / |d_{2n}| and r^n_o = |d_{2n+3}| / |d_{2n+1}|, n = 0 .. n_max,
    where d_k = y_{k+2} - y_k.

    Gaps come from :func:`orbit_gaps`, so they stay accurate far below the
    rounding level of the orbit points.  A series stops early only if a
    denominator leaves the normal floating-point range; denominators below
    1e-10 are kept and listed in ``notes``.
    """
    check_alpha(alpha)
    _check_n_max(n_max)
    par = param_from_a(alpha, a)
    if par.abar is None:
        raise RegimeError(f"a={a!r} is outside (1, a_escape)")
    _rlrl_prefix(alpha, a, 2 * n_max + 5)
    d = orbit_gaps(alpha, a, 2 * n_max + 4, raw=raw)
    evens, odds, notes = [], [], []
    for n in range(n_max + 1):
        den_e, den_o = abs(d[2 * n]), abs(d[2 * n + 1])
        if min(den_e, den_o) < sys.float_info.min:
            notes.append(f"series stopped at n={n}: gap underflow")
            break
        if min(den_e, den_o) < SMALL_GAP:
            notes.append(f"n={n}: denominator {min(den_e, den_o):.3e} below {SMALL_GAP:g}")
        evens.append(abs(d[2 * n + 2]) / den_e)
        odds.append(abs(d[2 * n + 3]) / den_o)
    return RatioSeries(a, par.abar, tuple(evens), tuple(odds), n_max, tuple(notes))


def nesting_ok(alpha: float, a: float, n_max: int = DEFAULT_N_MAX, digits: Optional[int] = None) -> bool:
    """Even points negative, odd points positive, and |d_k| strictly decreasing along each parity.

    Close to the RLRC parameter the attracting cycle has period four and
    1 - |d_{k+2}/d_k| drops below 1e-16 within a few steps, so the strict
    decrease is only decidable with ``digits`` of extended precision.
    """
    ctx = extended(digits) if digits else contextlib.nullcontext()
    with ctx:
        if digits:
            a = gmpy2.mpfr(a)
        d = orbit_gaps(alpha, a, 2 * n_max + 4)
        ys = iterate_raw(alpha, a, 2 * n_max + 5)
        if any(y >= 0 for y in ys[2::2]) or any(y <= 0 for y in ys[1::2]):
            return False
        return all(abs(d[k + 2]) < abs(d[k]) for k in range(len(d) - 2))


@dataclass(frozen=True)
class RatioMonotonicityReport:
    alpha: float
    n_max: int
    grid: tuple[float, ...]
    passed: bool
    vacuous: bool
    min_increase_even: tuple[float, ...]
    min_increase_odd: tuple[float, ...]
    failures: tuple[tuple[str, int, float, float, float], ...] = ()


def rlrl_abar_limit(alpha: float) -> float:
    """abar of the RLRC parameter: the upper end of the RLRL regime."""
    return find_superstable(alpha, "RLRC").abar


def _check_grid(alpha: float, abar_grid: Sequence[float]) -> tuple[float, ...]:
    grid = tuple(float(v) for v in abar_grid)
    for lo, hi in zip(grid, grid[1:]):
        if not (hi - lo >= MIN_GRID_SPACING):
            raise DomainError(f"abar grid must increase by at least {MIN_GRID_SPACING:g}: {lo!r}, {hi!r}")
    top = rlrl_abar_limit(alpha) - RLRL_MARGIN
    if grid and grid[-1] > top:
        raise RegimeError(f"abar {grid[-1]!r} above abar(a_rlrc) - {RLRL_MARGIN:g} = {top!r}")
    return grid


def ratio_monotonicity_check(
    alpha: float, abar_grid: Sequence[float], n_max: int = DEFAULT_N_MAX
) -> RatioMonotonicityReport:
    _check_n_max(n_max)
    grid = _check_grid(alpha, abar_grid)
    series = [ratio_series(alpha, param_from_abar(alpha, v).a, n_max) for v in grid]
    inc_e = [math.inf] * (n_max + 1)
    inc_o = [math.inf] * (n_max + 1)
    failures = []
    for s0, s1 in zip(series, series[1:]):
        for kind, r0, r1, acc in (("even", s0.evens, s1.evens, inc_e), ("odd", s0.odds, s1.odds, inc_o)):
            for n in range(min(len(r0), len(r1))):
                step = r1[n] - r0[n]
                acc[n] = min(acc[n], step)
                if not step > 0:
                    failures.append((kind, n, s0.abar, s1.abar, step))
    return RatioMonotonicityReport(
        alpha,
        n_max,
        grid,
        passed=not failures,
        vacuous=len(grid) < 2,
        min_increase_even=tuple(inc_e),
        min_increase_odd=tuple(inc_o),
        failures=tuple(failures),
    )


# ---------------------------------------------------------------------------
# discrepancy


@dataclass(frozen=True)
class DiscrepancyReport:
    alpha: float
    abar_pair: tuple[float, float]
    delta_t: float
    per_n: tuple[tuple[int, float, float], ...]

    @property
    def passed(self) -> bool:
        return all(margin > 0 for _, _, margin in self.per_n)

    @property
    def min_margin(self) -> float:
        return min(margin for _, _, margin in self.per_n)


def base_coordinates(alpha: float, a: float, n_max: int) -> tuple[float, ...]:
    """coord((y_{n+2}, y_n), y_{n+4}) for n = 0 .. n_max, from the accurate gaps."""
    d = orbit_gaps(alpha, a, n_max + 3)
    out = []
    for n in range(n_max + 1):
        right = -(d[n] + d[n + 2])
        if not (d[n + 2] * d[n] < 0 and right * d[n + 2] > 0):
            raise RegimeError(f"y_{n + 4} is not inside (y_{n + 2}, y_{n}) at a={a!r}")
        out.append(math.log(d[n + 2] / right))
    return tuple(out)


def discrepancy_check(
    alpha: float, abar: float, abar_prime: float, n_max: int = DEFAULT_N_MAX
) -> DiscrepancyReport:
    """Per-n discrepancy of base coordinates between abar and abar_prime, minus delta t."""
    check_alpha(alpha)
    _check_n_max(n_max)
    top = rlrl_abar_limit(alpha) - RLRL_MARGIN
    pars = []
    for v in (abar, abar_prime):
        if v > top:
            raise RegimeError(f"abar {v!r} above abar(a_rlrc) - {RLRL_MARGIN:g} = {top!r}")
        par = param_from_abar(alpha, v)
        _rlrl_prefix(alpha, par.a, n_max + 4)
        pars.append(par)
    p0, p1 = pars
    delta_t = p1.tcoord - p0.tcoord
    c0 = base_coordinates(alpha, p0.a, n_max)
    c1 = base_coordinates(alpha, p1.a, n_max)
    per_n = tuple((n, c1[n] - c0[n], (c1[n] - c0[n]) - delta_t) for n in range(n_max + 1))
    return DiscrepancyReport(alpha, (abar, abar_prime), delta_t, per_n)


# ---------------------------------------------------------------------------
# check results shared by the lemma sampler and the identity suite


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    metric: str  # "max_deviation" or "min_margin"
    value: float
    samples: int
    threshold: float
    detail: dict = field(default_factory=dict)


def _deviation_check(name, samples, threshold, fn, detail=None) -> CheckResult:
    worst = 0.0
    for i in range(samples):
        worst = max(worst, float(abs(fn(i))))
    return CheckResult(name, worst <= threshold, "max_deviation", worst, samples, threshold, detail or {})


def _margin_check(name, samples, threshold, fn, detail=None) -> CheckResult:
    worst = math.inf
    for i in range(samples):
        worst = min(worst, float(fn(i)))
    return CheckResult(name, worst >= threshold, "min_margin", worst, samples, threshold, detail or {})


# ---------------------------------------------------------------------------
# three-triple lemma


class SamplerExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class LemmaSample:
    triple: tuple[float, float, float]
    triple_tilde: tuple[float, float, float]
    slack_ii: float
    slack_iii: float
    conclusion_margin: float
    mode: str


LEMMA_MODES = ("interior", "exact", "z0", "z0_exact")
MAX_REJECTIONS = 10_000


def lemma_threshold_y(x, xt, y):
    """Smallest admissible coord((x~, 1), y~) under condition (ii)."""
    return coord((x, 1), y) + (coord((0, -1), xt) - coord((0, -1), x))


def lemma_threshold_z(x, xt, y, yt, z):
    """Smallest admissible coord((y~, x~), z~) under condition (iii)."""
    m = lib(x, xt, y, yt, z)
    shift_x = coord((0, -1), xt) - coord((0, -1), x)
    shift_y = coord((xt, 1), yt) - coord((x, 1), y)
    return (
        coord((y, x), z)
        + (coord((0, -xt), yt) - coord((0, -x), y))
        + m.log((yt - xt) / (y - x))
        - (shift_y - shift_x)
    )


def lemma_conditions(x, xt, y, yt, z, zt) -> tuple[bool, float, float]:
    """Re-check (i)-(iii) from the points alone; returns (domains ok, slack ii, slack iii)."""
    domains = (
        -1 < x < 0
        and -1 < xt < 0
        and coord((0, -1), xt) > coord((0, -1), x)
        and 0 < y < -x
        and 0 < yt < -xt
        and 0 <= z < y
        and -yt < zt < yt
    )
    if not domains:
        return False, -math.inf, -math.inf
    slack_ii = coord((xt, 1), yt) - lemma_threshold_y(x, xt, y)
    slack_iii = coord((yt, xt), zt) - lemma_threshold_z(x, xt, y, yt, z)
    return True, slack_ii, slack_iii


def _draw_lemma_sample(rng: np.random.Generator, mode: str, num) -> Optional[LemmaSample]:
    th = rng.uniform(-6.0, 6.0, size=2)
    if th[0] == th[1]:
        return None
    lo, hi = sorted(th)
    x = coord_inv((0, -1), num(lo))
    xt = coord_inv((0, -1), num(hi))
    exact = mode in ("exact", "z0_exact")
    slack_ii = 0.0 if exact else float(rng.exponential(0.5))
    slack_iii = 0.0 if exact else float(rng.exponential(0.5))
    y = coord_inv((0, -x), num(rng.uniform(-20.0, 20.0)))
    yt = coord_inv((xt, 1), lemma_threshold_y(x, xt, y) + slack_ii)
    if not (0 < yt < -xt):
        return None
    if mode.startswith("z0"):
        z = num(0)
    else:
        z = coord_inv((y, 0), num(rng.uniform(-20.0, 20.0)))
        if not (0 <= z < y):
            return None
    zt = coord_inv((yt, xt), lemma_threshold_z(x, xt, y, yt, z) + slack_iii)
    if not (-yt < zt < yt):
        return None
    margin = coord((yt, -yt), zt) - coord((y, -y), z)
    return LemmaSample((x, y, z), (xt, yt, zt), slack_ii, slack_iii, margin, mode)


@dataclass(frozen=True)
class LemmaReport:
    seed: int
    samples: tuple[LemmaSample, ...]
    rejections: int
    digits: Optional[int]

    @property
    def violations(self) -> int:
        return sum(1 for s in self.samples if not s.conclusion_margin > 0)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    @property
    def acceptance_rate(self) -> float:
        return len(self.samples) / (len(self.samples) + self.rejections)

    def by_mode(self) -> dict[str, tuple[int, float]]:
        out = {}
        for mode in LEMMA_MODES:
            margins = [float(s.conclusion_margin) for s in self.samples if s.mode == mode]
            if margins:
                out[mode] = (len(margins), min(margins))
        return out

    def histogram(self, bins: int = 10) -> tuple[tuple[float, float, int], ...]:
        """Counts of log10(conclusion margin) in equal-width bins."""
        logs = np.log10([float(s.conclusion_margin) for s in self.samples if s.conclusion_margin > 0])
        if logs.size == 0:
            return ()
        counts, edges = np.histogram(logs, bins=bins)
        return tuple((float(edges[i]), float(edges[i + 1]), int(counts[i])) for i in range(bins))


def lemma_check(samples: int, seed: int, digits: Optional[int] = MP_DIGITS) -> LemmaReport:
    """Draw hypothesis-satisfying triple pairs and record the conclusion margin.

    Sample ``i`` uses sub-suite ``LEMMA_MODES[i % 4]``: random slack, zero
    slack in (ii) and (iii), z = 0, and z = 0 with zero slack.  With
    ``digits`` set, every point is carried as a gmpy2 mpfr at that
    precision, so the zero-slack samples meet their thresholds to that
    precision; ``digits=None`` runs in float64, where points near an
    endpoint miss a threshold by up to ~1e-8 in chart units.
    """
    if samples < 1:
        raise DomainError(f"samples must be positive, got {samples!r}")
    out = []
    rejections = 0
    ctx = extended(digits) if digits else contextlib.nullcontext()
    num = gmpy2.mpfr if digits else float
    with ctx:
        for i in range(samples):
            mode = LEMMA_MODES[i % len(LEMMA_MODES)]
            rng = _rng(seed, 1, i)
            for attempt in range(MAX_REJECTIONS + 1):
                sample = _draw_lemma_sample(rng, mode, num)
                if sample is not None:
                    break
                rejections += 1
            else:
                rate = len(out) / (len(out) + rejections)
                raise SamplerExhausted(
                    f"sample {i} ({mode}) rejected {MAX_REJECTIONS} times; acceptance rate {rate:.3g}"
                )
            out.append(sample)
    return LemmaReport(seed, tuple(out), rejections, digits)


# ---------------------------------------------------------------------------
# identity and push-property suite


def _uniform(rng, bound, num):
    return num(rng.uniform(-bound, bound))


def _half_line_to_unit_chart(rng, bound, num):
    x = -lib(num(0)).exp(_uniform(rng, bound, num))
    return coord((0, -math.inf), x) - coord((x, 1), 0)


def _symmetric_chart_transfer(rng, bound, num):
    x = coord_inv((0, -1), _uniform(rng, bound, num))
    c = coord_inv((x, 1), coord((0, -1), x))
    return coord((1, -1), x) - coord((x, -x), c)


def _half_line_shift(rng, bound, num):
    m = lib(num(0))
    x = -m.exp(_uniform(rng, bound, num))
    xt = -m.exp(_uniform(rng, bound, num))
    y = coord_inv((x, 0), _uniform(rng, bound, num))
    d_theta = coord((0, -math.inf), xt) - coord((0, -math.inf), x)
    c = coord_inv((xt, 1), coord((x, 1), y) + d_theta)
    lhs = coord((xt, 0), c) - coord((x, 0), y)
    return lhs - (coord((1, -math.inf), xt) - coord((1, -math.inf), x))


def _symmetric_chart_shift(rng, bound, num):
    x = coord_inv((0, -1), _uniform(rng, bound, num))
    xt = coord_inv((0, -1), _uniform(rng, bound, num))
    y = coord_inv((x, -x), _uniform(rng, bound, num))
    d_theta = coord((0, -1), xt) - coord((0, -1), x)
    d_t = coord((1, -1), xt) - coord((1, -1), x)
    c = coord_inv((xt, 1), coord((x, 1), y) + d_theta)
    return coord((xt, -xt), c) - coord((x, -x), y) - d_t


def _unit_chart_transfer(rng, bound, num):
    x = coord_inv((0, 1), _uniform(rng, bound, num))
    xp = coord_inv((0, 1), _uniform(rng, bound, num))
    y = coord_inv((x, 1), _uniform(rng, bound, num))
    yp = coord_inv((xp, 1), coord((x, 1), y))
    return (coord((1, 0), xp) - coord((1, 0), x)) - (coord((yp, 0), xp) - coord((y, 0), x))


def _draw_alpha(rng, num):
    return num(rng.uniform(1.05, 6.0))


def _limit_push_difference(rng, bound, num):
    alpha = _draw_alpha(rng, num)
    q = coord_inv((0, 1), _uniform(rng, bound, num))
    qt = coord_inv((0, 1), _uniform(rng, bound, num))
    m = lib(q)
    lhs = push_limits(alpha, q, 1).minus - push_limits(alpha, qt, 1).minus
    h = lambda v: m.exp(alpha * m.log(v))
    rhs = (coord((0, 1), h(q)) - coord((0, 1), h(qt))) - (coord((0, 1), q) - coord((0, 1), qt))
    return lhs - rhs


def _draw_domain(rng, num):
    """(p, q) with 0 < p < q, nonlinearity in [1e-3, 10]."""
    m = lib(num(0))
    p = m.exp(num(rng.uniform(-5.0, 5.0)))
    L = num(rng.uniform(1e-3, 10.0))
    return p, p * m.exp(L)


def _push_formula(rng, bound, num):
    alpha = _draw_alpha(rng, num)
    p, q = _draw_domain(rng, num)
    x = coord_inv((p, q), _uniform(rng, bound, num))
    formula = push_limits(alpha, x, q).minus + push_limits(alpha, p, x).plus
    return abs(push_at(alpha, (p, q), x)) - abs(formula)


def _push_scale(rng, bound, num):
    alpha = _draw_alpha(rng, num)
    p, q = _draw_domain(rng, num)
    x = coord_inv((p, q), _uniform(rng, bound, num))
    s = lib(p).exp(num(rng.uniform(-10.0, 10.0)))
    dev_push = push_at(alpha, (p, q), x) - push_at(alpha, (s * p, s * q), s * x)
    lim0, lim1 = push_limits(alpha, p, q), push_limits(alpha, s * p, s * q)
    return max(abs(dev_push), abs(lim0.minus - lim1.minus), abs(lim0.plus - lim1.plus))


def _roundtrip(rng, bound, num):
    p, q = rng.uniform(-10.0, 10.0, size=2)
    if abs(p - q) < 1e-3:
        q = p + 1.0
    x = coord_inv((p, q), rng.uniform(-bound, bound))
    back = coord_inv((p, q), coord((p, q), x))
    return (back - x) / max(abs(x), 1e-300)


def _antisymmetry(rng, bound, num):
    p, q = rng.uniform(-10.0, 10.0, size=2)
    if abs(p - q) < 1e-3:
        q = p + 1.0
    x = coord_inv((p, q), rng.uniform(-bound, bound))
    if not (min(p, q) < x < max(p, q)):
        return 0.0
    return coord((p, q), x) + coord((q, p), x)


def _random_domain_oriented(rng):
    p, q = _draw_domain(rng, float)
    return (q, p) if rng.random() < 0.5 else (p, q)


def _expansion(rng, bound, num):
    alpha = _draw_alpha(rng, float)
    dom = _random_domain_oriented(rng)
    t1, t2 = sorted(rng.uniform(-bound, bound, size=2))
    return (hbar(alpha, dom, t2) - hbar(alpha, dom, t1)) - (t2 - t1)


def _push_strength(alpha, dom, t):
    return abs(hbar(alpha, dom, t) - t)


def _push_mono_domain(rng, bound, num):
    # |push| at a fixed coordinate grows with the nonlinearity of nested domains (1, e^L)
    alpha = _draw_alpha(rng, float)
    t = rng.uniform(-bound, bound)
    L1, L2 = sorted(rng.uniform(1e-3, 10.0, size=2))
    return _push_strength(alpha, (1.0, math.exp(L2)), t) - _push_strength(alpha, (1.0, math.exp(L1)), t)


def _push_mono_coord(rng, bound, num):
    # on a fixed increasing domain the push points toward p and weakens as t grows
    alpha = _draw_alpha(rng, float)
    p, q = _draw_domain(rng, float)
    t1, t2 = sorted(rng.uniform(-bound, bound, size=2))
    return _push_strength(alpha, (p, q), t1) - _push_strength(alpha, (p, q), t2)


def _push_limits_order(rng, bound, num):
    alpha = _draw_alpha(rng, float)
    p, q = _draw_domain(rng, float)
    lim = push_limits(alpha, p, q)
    return lim.plus - lim.minus


def _push_limits_closed(rng, bound, num):
    alpha = _draw_alpha(rng, float)
    p, q = _draw_domain(rng, float)
    lim = push_limits(alpha, p, q)
    far = 40.0
    return max(
        abs((hbar(alpha, (p, q), -far) + far) - lim.minus),
        abs((hbar(alpha, (p, q), far) - far) - lim.plus),
    )


IdentityFn = Callable[[np.random.Generator, float, Callable], float]

# (name, sampler); equalities run twice, see proposition_suite
EQUALITIES: tuple[tuple[str, IdentityFn], ...] = (
    ("half_line_to_unit_chart", _half_line_to_unit_chart),
    ("symmetric_chart_transfer", _symmetric_chart_transfer),
    ("half_line_shift", _half_line_shift),
    ("symmetric_chart_shift", _symmetric_chart_shift),
    ("unit_chart_transfer", _unit_chart_transfer),
    ("limit_push_difference", _limit_push_difference),
    ("push_strength_formula", _push_formula),
    ("push_scale_invariance", _push_scale),
)

INEQUALITIES: tuple[tuple[str, IdentityFn], ...] = (
    ("hbar_expansion", _expansion),
    ("push_monotone_in_domain", _push_mono_domain),
    ("push_monotone_in_coordinate", _push_mono_coord),
    ("push_limits_order", _push_limits_order),
)

INEQUALITY_SLACK = -1e-12
ROUNDTRIP_TOL = 1e-12
CLOSED_FORM_TOL = 1e-10


def _examples() -> float:
    # reference points with closed-form values: x = -2 and x = -0.5
    dev = abs(coord((0, -math.inf), -2.0) - coord((-2.0, 1), 0.0))
    dev = max(dev, abs(coord((0, -math.inf), -2.0) - math.log(2)))
    x = -0.5
    c = coord_inv((x, 1), coord((0, -1), x))
    dev = max(dev, abs(c - x * x), abs(coord((1, -1), x) - math.log(3)), abs(coord((x, -x), c) - math.log(3)))
    return dev


@dataclass(frozen=True)
class SuiteReport:
    name: str
    seed: int
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def proposition_suite(samples: int, seed: int, tol: float = 1e-10, digits: int = MP_DIGITS) -> SuiteReport:
    """Chart identities and push properties.

    Each identity runs twice: with gmpy2 at ``digits`` over chart
    coordinates |t| <= 30, and in float64 over |t| <= 6, where double
    rounding near nonzero endpoints stays well under ``tol``.  Push
    inequalities, round trips and the closed-form limits run in float64 over
    |t| <= 30 (|t| = 40 for the limits).
    """
    if samples < 1:
        raise DomainError(f"samples must be positive, got {samples!r}")
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    checks = [CheckResult("proposition_examples", _examples() <= 1e-15, "max_deviation", _examples(), 2, 1e-15)]
    for k, (name, fn) in enumerate(EQUALITIES):
        with extended(digits):
            checks.append(
                _deviation_check(
                    name,
                    samples,
                    tol,
                    lambda i, fn=fn, k=k: fn(_rng(seed, 2, k, i), WIDE_CHART, gmpy2.mpfr),
                    {"chart_bound": WIDE_CHART, "digits": digits},
                )
            )
        checks.append(
            _deviation_check(
                f"{name}[float64]",
                samples,
                tol,
                lambda i, fn=fn, k=k: fn(_rng(seed, 3, k, i), FLOAT_CHART, float),
                {"chart_bound": FLOAT_CHART, "digits": 16},
            )
        )
    checks.append(
        _deviation_check(
            "coord_roundtrip",
            samples,
            ROUNDTRIP_TOL,
            lambda i: _roundtrip(_rng(seed, 4, 0, i), WIDE_CHART, float),
            {"chart_bound": WIDE_CHART, "relative": True},
        )
    )
    checks.append(
        _deviation_check(
            "coord_antisymmetry",
            samples,
            tol,
            lambda i: _antisymmetry(_rng(seed, 4, 1, i), WIDE_CHART, float),
            {"chart_bound": WIDE_CHART},
        )
    )
    checks.append(
        _deviation_check(
            "push_limits_closed_form",
            samples,
            CLOSED_FORM_TOL,
            lambda i: _push_limits_closed(_rng(seed, 4, 2, i), 40.0, float),
            {"far_coordinate": 40.0},
        )
    )
    for k, (name, fn) in enumerate(INEQUALITIES):
        checks.append(
            _margin_check(
                name,
                samples,
                INEQUALITY_SLACK,
                lambda i, fn=fn, k=k: fn(_rng(seed, 5, k, i), WIDE_CHART, float),
                {"chart_bound": WIDE_CHART, "nonlinearity_range": [1e-3, 10.0]},
            )
        )
    return SuiteReport("props", seed, tuple(checks))
