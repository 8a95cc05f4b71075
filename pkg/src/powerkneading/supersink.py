"""Super-stable parameters RC, RLRC, RLRRRLRC and the monotone functions g, tau, gamma.

The root objective for a target of period k is the rescaled critical return
y_k itself, restricted to parameters whose first k - 1 symbols match the
target.  Brackets come from a uniform scan in the abar chart and are then
bisected in a.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .family import (
    RegimeError,
    a_escape,
    check_alpha,
    kneading,
    orbit_gaps,
    param_from_a,
    param_from_abar,
    param_from_t,
    power,
)
from .poincare import DomainError, coord

TARGETS = ("RC", "RLRC", "RLRRRLRC")
SCAN_POINTS = 512
ABAR_SPAN = 12.0
MAX_BISECTIONS = 200
DEFAULT_TOL = 1e-12
RLRC_MARGIN = 1e-4


class BracketNotFound(RuntimeError):
    def __init__(self, message, trace=()):
        super().__init__(message)
        self.trace = tuple(trace)


class ToleranceNotReached(RuntimeError):
    pass


def check_target(target: str) -> str:
    if target not in TARGETS:
        raise DomainError(f"unknown kneading target {target!r}; expected one of {', '.join(TARGETS)}")
    return target


def critical_return(alpha: float, a: float, period: int) -> tuple[str, float]:
    """Strict-sign itinerary of y_1 .. y_{period-1} and the value y_period."""
    b = power(a, alpha - 1.0)
    y = 0.0
    symbols = []
    for _ in range(period - 1):
        y = 1.0 - b * power(y, alpha)
        symbols.append("R" if y > 0 else ("L" if y < 0 else "C"))
    y = 1.0 - b * power(y, alpha)
    return "".join(symbols), y


@dataclass(frozen=True)
class SolveResult:
    alpha: float
    target: str
    a: float
    residual: float
    bracket: tuple[float, float]
    iterations: int
    trace: tuple[tuple[float, float], ...] = field(default=(), repr=False, compare=False)

    @property
    def abar(self) -> Optional[float]:
        return param_from_a(self.alpha, self.a).abar


def _scan_bracket(alpha: float, target: str, abar_lo: float, abar_hi: float) -> tuple[float, float]:
    period = len(target)
    prefix = target[:-1]
    trace = []
    prev = None
    step = (abar_hi - abar_lo) / (SCAN_POINTS - 1)
    for i in range(SCAN_POINTS):
        a = param_from_abar(alpha, abar_lo + i * step).a
        symbols, value = critical_return(alpha, a, period)
        trace.append((a, symbols, value))
        if symbols != prefix:
            prev = None
            continue
        if value == 0.0:
            return a, a
        if prev is not None and (prev[1] > 0) != (value > 0):
            return prev[0], a
        prev = (a, value)
    raise BracketNotFound(
        f"no sign change of y_{period} with prefix {prefix} for alpha={alpha!r}", trace
    )


@functools.lru_cache(maxsize=512)
def find_superstable(alpha: float, target: str, tol: float = DEFAULT_TOL) -> SolveResult:
    """Locate the super-stable parameter with kneading ``target``.

    Bisection runs until the bracket can no longer shrink in floating point;
    ``tol`` bounds the final bracket width and sets the C tolerance (10 tol)
    used to confirm the kneading of the result.
    """
    check_alpha(alpha)
    check_target(target)
    if not (tol >= 1e-14):
        raise DomainError(f"tol must be at least 1e-14, got {tol!r}")
    if target == "RC":
        return SolveResult(alpha, target, 1.0, 0.0, (1.0, 1.0), 0)

    period = len(target)
    if target == "RLRC":
        lo, hi = _scan_bracket(alpha, target, -ABAR_SPAN, ABAR_SPAN)
    else:
        start = find_superstable(alpha, "RLRC", tol).abar + RLRC_MARGIN
        lo, hi = _scan_bracket(alpha, target, start, ABAR_SPAN)
    bracket = (lo, hi)

    _, f_lo = critical_return(alpha, lo, period)
    _, f_hi = critical_return(alpha, hi, period)
    trace = [(lo, hi)]
    steps = 0
    while steps < MAX_BISECTIONS and f_lo != 0.0 and f_hi != 0.0:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        steps += 1
        _, f_mid = critical_return(alpha, mid, period)
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
        trace.append((lo, hi))
    if hi - lo > tol:
        raise ToleranceNotReached(
            f"bracket width {hi - lo!r} above tol {tol!r} after {steps} bisections"
        )
    a, residual = (lo, abs(f_lo)) if abs(f_lo) <= abs(f_hi) else (hi, abs(f_hi))
    result = SolveResult(alpha, target, a, residual, bracket, steps, tuple(trace))
    got = kneading(alpha, a, period, c_tol=10 * tol).symbols
    if got != target:
        raise ToleranceNotReached(f"solution a={a!r} has kneading {got}, expected {target}")
    return result


@dataclass(frozen=True)
class SweepRow:
    alpha: float
    target: str
    result: Optional[SolveResult]
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.result is not None


def sweep_alpha(alphas: Sequence[float], target: str, tol: float = DEFAULT_TOL) -> list[SweepRow]:
    check_target(target)
    rows = []
    for alpha in alphas:
        try:
            rows.append(SweepRow(alpha, target, find_superstable(alpha, target, tol)))
        except (DomainError, BracketNotFound, ToleranceNotReached) as exc:
            rows.append(SweepRow(alpha, target, None, f"{type(exc).__name__}: {exc}"))
    return rows


@dataclass(frozen=True)
class UniquenessWitness:
    alpha: float
    target: str
    grid_points: int
    prefix_points: int
    sign_changes: int
    change_locations: tuple[float, ...]


def uniqueness_witness(alpha: float, target: str, grid_points: int = 1000) -> UniquenessWitness:
    """Count sign changes of y_period across a uniform a-grid, keeping prefix matches only.

    The RLRC grid spans (1 + 1e-6, a_escape - 1e-6); the RLRRRLRC grid
    starts at a_rlrc + 1e-6.
    """
    check_target(target)
    if target == "RC":
        raise DomainError("the RC parameter is analytic; no witness grid")
    period = len(target)
    prefix = target[:-1]
    hi = a_escape(alpha) - 1e-6
    lo = 1.0 + 1e-6 if target == "RLRC" else find_superstable(alpha, "RLRC").a + 1e-6
    signs = []
    for i in range(grid_points):
        a = lo + (hi - lo) * i / (grid_points - 1)
        symbols, value = critical_return(alpha, a, period)
        if symbols == prefix:
            signs.append((a, value > 0))
    changes = tuple(signs[i][0] for i in range(len(signs) - 1) if signs[i][1] != signs[i + 1][1])
    return UniquenessWitness(alpha, target, grid_points, len(signs), len(changes), changes)


@dataclass(frozen=True)
class GSample:
    tcoord: float
    g: float
    a: float


def g_of_t(alpha: float, tcoord: float) -> GSample:
    """Coordinate of y_4 in (y_2, -y_2), as a function of t = coord((1, -1), y_2)."""
    par = param_from_t(alpha, tcoord)
    two = par.two_resc
    b = par.b
    three = 1.0 - b * power(two, alpha)
    if not (0.0 < three < 1.0):
        raise RegimeError(f"y_3 = {three!r} outside (0, 1) at t={tcoord!r}")
    four_minus_two = orbit_gaps(alpha, par.a, 3)[2]
    four = two + four_minus_two
    if not (abs(four) < -two):
        raise RegimeError(f"y_4 = {four!r} outside (y_2, -y_2) at t={tcoord!r}")
    # coord((two, -two), four), with the left offset taken from the accurate gap
    g = math.log(four_minus_two / (-two - four))
    return GSample(tcoord, g, par.a)


@dataclass(frozen=True)
class GScan:
    alpha: float
    samples: tuple[GSample, ...]
    slopes: tuple[float, ...]

    @property
    def min_slope(self) -> float:
        return min(self.slopes)

    @property
    def all_slopes_exceed_one(self) -> bool:
        return all(s > 1.0 for s in self.slopes)


def rlrl_t_range(alpha: float, abar_lo: float = -6.0, margin: float = 1e-3) -> tuple[float, float]:
    """Default t-interval for g scans: abar in [abar_lo, abar(a_rlrc) - margin]."""
    top = find_superstable(alpha, "RLRC").abar - margin
    return param_from_abar(alpha, abar_lo).tcoord, param_from_abar(alpha, top).tcoord


def g_derivative_scan(alpha: float, t_lo: float, t_hi: float, steps: int) -> GScan:
    """Sample g on ``steps`` uniform points of [t_lo, t_hi] and return secant slopes."""
    if steps < 2:
        raise DomainError(f"steps must be at least 2, got {steps!r}")
    if not (t_hi > t_lo):
        raise DomainError(f"empty t-range [{t_lo!r}, {t_hi!r}]")
    ts = [t_lo + (t_hi - t_lo) * i / (steps - 1) for i in range(steps)]
    ts[-1] = t_hi
    samples = tuple(g_of_t(alpha, t) for t in ts)
    slopes = tuple(
        (s1.g - s0.g) / (s1.tcoord - s0.tcoord) for s0, s1 in zip(samples, samples[1:])
    )
    return GScan(alpha, samples, slopes)


@dataclass(frozen=True)
class TauGammaSample:
    abar: float
    tau: float
    gamma: float


@dataclass(frozen=True)
class TauGammaScan:
    alpha: float
    samples: tuple[TauGammaSample, ...]
    slopes: tuple[float, ...]

    @property
    def monotone(self) -> bool:
        return all(s > 0 for s in self.slopes)

    @property
    def min_slope(self) -> float:
        return min(self.slopes)

    @property
    def max_slope(self) -> float:
        return max(self.slopes)


def tau_gamma(alpha: float, abar: float) -> TauGammaSample:
    """tau = coord((y_4, -y_4), y_8) and gamma = coord((y_2, -y_2), y_4)."""
    par = param_from_abar(alpha, abar)
    d = orbit_gaps(alpha, par.a, 7)
    two = d[0]
    four = two + d[2]
    eight = four + d[4] + d[6]
    if not (four > 0 and four < -two):
        raise RegimeError(f"gamma undefined or nonpositive at abar={abar!r}")
    if not (abs(eight) < four and eight >= 0):
        raise RegimeError(f"tau undefined or positive at abar={abar!r}")
    gamma = math.log(d[2] / (-two - four))
    tau = math.log((d[4] + d[6]) / (-four - eight))
    return TauGammaSample(abar, tau, gamma)


def tau_gamma_scan(alpha: float, n_samples: int) -> TauGammaScan:
    """Uniform abar samples from abar(a_rlrc) + 1e-4 to abar(a_rlrrrlrc), sorted by tau."""
    if n_samples < 2:
        raise DomainError(f"n_samples must be at least 2, got {n_samples!r}")
    lo = find_superstable(alpha, "RLRC").abar + RLRC_MARGIN
    top = find_superstable(alpha, "RLRRRLRC")
    hi = top.abar
    samples = []
    for i in range(n_samples):
        abar = lo + (hi - lo) * i / (n_samples - 1)
        if i == n_samples - 1:
            # the located root itself: y_8 is zero up to the residual
            samples.append(_tau_gamma_at_root(alpha, top.a, abar))
        else:
            samples.append(tau_gamma(alpha, abar))
    samples.sort(key=lambda s: s.tau)
    slopes = tuple(
        (s1.gamma - s0.gamma) / (s1.tau - s0.tau) for s0, s1 in zip(samples, samples[1:])
    )
    return TauGammaScan(alpha, tuple(samples), slopes)


def _tau_gamma_at_root(alpha: float, a: float, abar: float) -> TauGammaSample:
    d = orbit_gaps(alpha, a, 7)
    two = d[0]
    four = two + d[2]
    gamma = math.log(d[2] / (-two - four))
    eight = four + d[4] + d[6]
    tau = coord((four, -four), eight) if abs(eight) < four else 0.0
    return TauGammaSample(abar, tau, gamma)
