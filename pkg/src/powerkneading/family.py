"""The power-law family f_a(x) = -|x|**alpha + a and its post-critical orbit.

Everything is expressed in rescaled coordinates y = x / a, where the critical
orbit starts 0, 1 and obeys y -> 1 - b |y|**alpha with b = a**(alpha - 1).
Raw coordinates are recovered by multiplying by ``a``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .poincare import DomainError, _logistic_pair, _power_increment, coord, coord_inv, power

N_MAX_CAP = 64
DEFAULT_C_TOL = 1e-9


class RegimeError(ValueError):
    """The dynamics at a parameter do not satisfy the regime an operation needs."""


def check_alpha(alpha: float) -> None:
    if not (alpha > 1) or not math.isfinite(alpha):
        raise DomainError(f"alpha must exceed 1, got {alpha!r}")


def a_escape(alpha: float) -> float:
    """Parameter at which the rescaled second point reaches -1."""
    check_alpha(alpha)
    return 2.0 ** (1.0 / (alpha - 1.0))


@dataclass(frozen=True)
class Family:
    alpha: float

    def __post_init__(self):
        check_alpha(self.alpha)

    def __call__(self, a: float, x: float) -> float:
        return a - power(x, self.alpha)


@dataclass(frozen=True)
class Parameterization:
    """One parameter in four charts.

    ``abar`` and ``tcoord`` are ``None`` unless ``two_resc`` lies in (-1, 0),
    i.e. unless 1 < a < a_escape.
    """

    alpha: float
    a: float
    b: float
    two_resc: float
    abar: Optional[float]
    tcoord: Optional[float]

    @property
    def admissible(self) -> bool:
        return self.abar is not None


def param_from_a(alpha: float, a: float) -> Parameterization:
    check_alpha(alpha)
    if not (a > 0):
        raise DomainError(f"parameter a must be positive, got {a!r}")
    b = power(a, alpha - 1.0)
    two = 1.0 - b
    abar = tcoord = None
    if -1.0 < two < 0.0:
        abar = coord((0.0, 1.0), -two)
        tcoord = coord((1.0, -1.0), two)
    return Parameterization(alpha, a, b, two, abar, tcoord)


def _param_from_two(alpha: float, two: float, abar=None, tcoord=None) -> Parameterization:
    # |two| in (0, 1): b = 1 + |two|
    a = math.exp(math.log1p(-two) / (alpha - 1.0))
    p = param_from_a(alpha, a)
    # keep the chart value the caller asked for rather than its round trip
    return Parameterization(
        alpha,
        a,
        p.b,
        two,
        abar if abar is not None else p.abar,
        tcoord if tcoord is not None else p.tcoord,
    )


def param_from_abar(alpha: float, abar: float) -> Parameterization:
    check_alpha(alpha)
    if not math.isfinite(abar):
        raise DomainError(f"abar must be finite, got {abar!r}")
    w, _ = _logistic_pair(abar)
    return _param_from_two(alpha, -w, abar=abar)


def param_from_t(alpha: float, tcoord: float) -> Parameterization:
    check_alpha(alpha)
    if not (tcoord > 0) or not math.isfinite(tcoord):
        raise DomainError(f"t must be a positive finite number, got {tcoord!r}")
    two = coord_inv((1.0, -1.0), tcoord)
    return _param_from_two(alpha, two, tcoord=tcoord)


def fixed_point_magnitude(alpha: float, b: float) -> float:
    """s* > 0 with b s**alpha = s + 1: minus the repelling negative fixed point."""
    def excess(s):
        return b * power(s, alpha) - s - 1.0

    lo, hi = 0.0, 1.0
    while excess(hi) <= 0:
        lo, hi = hi, 2.0 * hi
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if excess(mid) > 0:
            hi = mid
        else:
            lo = mid
    return hi


class OrbitStatus(str, Enum):
    COMPLETE = "complete"
    ESCAPED = "escaped"
    HIT_CRITICAL = "hit_critical"


@dataclass(frozen=True)
class Orbit:
    """Rescaled post-critical orbit y_0 = 0, y_1 = 1, y_2, ...

    ``index`` is the first escaped point or first return to the critical
    point (n >= 1, within ``c_tol``), ``None`` for a complete orbit.  A
    critical return does not stop the orbit; an escape does.
    """

    alpha: float
    a: float
    points: tuple[float, ...]
    status: OrbitStatus
    index: Optional[int]
    c_tol: float

    @property
    def raw(self) -> tuple[float, ...]:
        return tuple(self.a * y for y in self.points)

    def __len__(self):
        return len(self.points)

    def __getitem__(self, n):
        return self.points[n]


def _check_orbit_args(alpha: float, a: float, n_max: int, c_tol: float) -> None:
    check_alpha(alpha)
    if not (a > 0):
        raise DomainError(f"parameter a must be positive, got {a!r}")
    if not (1 <= n_max <= N_MAX_CAP):
        raise DomainError(f"n_max must be in [1, {N_MAX_CAP}], got {n_max!r}")
    if not (c_tol >= 0):
        raise DomainError(f"c_tol must be nonnegative, got {c_tol!r}")


def iterate(alpha: float, a: float, n_max: int, c_tol: float = DEFAULT_C_TOL) -> Orbit:
    _check_orbit_args(alpha, a, n_max, c_tol)
    b = power(a, alpha - 1.0)
    s_star = fixed_point_magnitude(alpha, b)
    ys = [0.0]
    status, index = OrbitStatus.COMPLETE, None
    y = 0.0
    for n in range(1, n_max + 1):
        y = 1.0 - b * power(y, alpha)
        ys.append(y)
        if y < -s_star:
            status, index = OrbitStatus.ESCAPED, n
            break
        if index is None and abs(y) <= c_tol:
            status, index = OrbitStatus.HIT_CRITICAL, n
    return Orbit(alpha, a, tuple(ys), status, index, c_tol)


def iterate_raw(alpha: float, a: float, n_max: int) -> tuple[float, ...]:
    """Raw orbit x_n = f_a^n(0), no escape detection."""
    _check_orbit_args(alpha, a, n_max, 0.0)
    xs = [0.0]
    for _ in range(n_max):
        xs.append(a - power(xs[-1], alpha))
    return tuple(xs)


def orbit_gaps(alpha: float, a: float, count: int, raw: bool = False) -> tuple[float, ...]:
    """Second-step gaps d_k = y_{k+2} - y_k for k = 0 .. count - 1.

    Each gap is propagated through the map itself,
    d_{k+1} = -b (|y_k + d_k|**alpha - |y_k|**alpha), with the power increment
    evaluated by expm1/log1p.  This keeps the gaps relatively accurate long
    after they fall below the rounding level of the points.  With
    ``raw=True`` the same is done for the unrescaled orbit of f_a.
    """
    check_alpha(alpha)
    if not (a > 0):
        raise DomainError(f"parameter a must be positive, got {a!r}")
    if not (1 <= count <= N_MAX_CAP):
        raise DomainError(f"count must be in [1, {N_MAX_CAP}], got {count!r}")
    if raw:
        coef, top = 1.0, a
    else:
        coef, top = power(a, alpha - 1.0), 1.0
    y = 0.0
    y_next = top
    d = top - coef * power(top, alpha)  # y_2 - y_0
    gaps = [d]
    for _ in range(count - 1):
        # advance (y_k, d_k) -> (y_{k+1}, d_{k+1})
        far = y + d
        if y != 0.0 and (far > 0) == (y > 0) and far != 0.0:
            inc = _power_increment(abs(y), d if y > 0 else -d, alpha)
        else:
            inc = power(far, alpha) - power(y, alpha)
        d = -coef * inc
        y, y_next = y_next, top - coef * power(y_next, alpha)
        gaps.append(d)
    return tuple(gaps)


@dataclass(frozen=True)
class KneadingSequence:
    symbols: str
    c_tol: float
    escaped: bool = False

    def __str__(self):
        return self.symbols

    def startswith(self, prefix: str) -> bool:
        return self.symbols.startswith(prefix)


def symbol(y: float, c_tol: float) -> str:
    if y > c_tol:
        return "R"
    if y < -c_tol:
        return "L"
    return "C"


def kneading(alpha: float, a: float, n_max: int, c_tol: float = DEFAULT_C_TOL) -> KneadingSequence:
    """Itinerary of y_1, y_2, ... up to n_max symbols, the first C or an escape."""
    orbit = iterate(alpha, a, n_max, c_tol)
    out = []
    for y in orbit.points[1:]:
        s = symbol(y, c_tol)
        out.append(s)
        if s == "C":
            break
    return KneadingSequence("".join(out), c_tol, orbit.status is OrbitStatus.ESCAPED)


@dataclass(frozen=True)
class RegimeBounds:
    alpha: float
    a_escape: float
    a_rlrc: float
    a_rlrrrlrc: float


def regime_bounds(alpha: float) -> RegimeBounds:
    from .supersink import find_superstable

    esc = a_escape(alpha)
    rlrc = find_superstable(alpha, "RLRC").a
    rlrrrlrc = find_superstable(alpha, "RLRRRLRC").a
    return RegimeBounds(alpha, esc, rlrc, rlrrrlrc)
