"""Poincaré coordinates on oriented intervals and the homogeneous map x -> x**alpha.

Intervals are oriented: ``(p, q)`` with ``p > q`` is a valid interval whose
coordinate runs from -inf near ``p`` to +inf near ``q``.  The origin ``p`` is
always finite; the target ``q`` may be ``+inf`` or ``-inf``, giving the
one-sided charts ``ln(x - p)`` and ``ln|x - p|``.

The map-related functions work with signed offsets from both endpoints rather
than with the point itself, so coordinates of order +-40 stay accurate even
when the point is within one ulp of an endpoint.

Every function accepts ``gmpy2.mpfr`` arguments as well as floats and then
evaluates in the current gmpy2 context precision (see :func:`extended`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import gmpy2

__all__ = [
    "DomainError",
    "OrientedInterval",
    "PushLimits",
    "as_interval",
    "coord",
    "coord_inv",
    "nonlinearity",
    "power",
    "hbar",
    "push_at",
    "push_limits",
]


class DomainError(ValueError):
    """An argument lies outside the domain of a chart or map."""


def lib(*values):
    """``gmpy2`` if any argument is an mpfr, else ``math``."""
    for v in values:
        if isinstance(v, _MPFR):
            return gmpy2
    return math


_MPFR = type(gmpy2.mpfr(0))


def extended(digits: int):
    """Context manager setting gmpy2 arithmetic to about ``digits`` decimal digits."""
    return gmpy2.context(gmpy2.get_context(), precision=int(digits * 3.33) + 8)


@dataclass(frozen=True)
class OrientedInterval:
    p: float
    q: float

    def __post_init__(self):
        if not math.isfinite(self.p):
            raise DomainError(f"origin endpoint must be finite, got {self.p!r}")
        if math.isnan(self.q):
            raise DomainError("endpoint is NaN")
        if self.p == self.q:
            raise DomainError(f"degenerate interval ({self.p!r}, {self.q!r})")

    @property
    def finite(self) -> bool:
        return math.isfinite(self.q)

    @property
    def increasing(self) -> bool:
        return self.q > self.p

    def contains(self, x: float) -> bool:
        if self.increasing:
            return self.p < x < self.q
        return self.q < x < self.p

    def reversed(self) -> "OrientedInterval":
        if not self.finite:
            raise DomainError("cannot reverse an interval with an infinite endpoint")
        return OrientedInterval(self.q, self.p)


def as_interval(interval) -> OrientedInterval:
    if isinstance(interval, OrientedInterval):
        return interval
    p, q = interval
    return OrientedInterval(p, q)


def coord(interval, x: float) -> float:
    """Poincaré coordinate of ``x`` in the oriented interval ``(p, q)``.

    ``ln((x - p)/(q - x))`` for finite ``q``, ``ln(x - p)`` for ``q = +inf``
    and ``ln|x - p|`` for ``q = -inf``.
    """
    iv = as_interval(interval)
    if not iv.contains(x):
        raise DomainError(f"{x!r} is not interior to ({iv.p!r}, {iv.q!r})")
    m = lib(x, iv.p, iv.q)
    if iv.finite:
        return m.log((x - iv.p) / (iv.q - x))
    return m.log(abs(x - iv.p))


def _logistic_pair(t: float) -> tuple[float, float]:
    """Return (1/(1+e^-t), 1/(1+e^t)) without overflow or cancellation."""
    m = lib(t)
    if t >= 0:
        e = m.exp(-t)
        return 1 / (1 + e), e / (1 + e)
    e = m.exp(t)
    return e / (1 + e), 1 / (1 + e)


def _offsets(iv: OrientedInterval, t: float) -> tuple[float, float]:
    # signed distances x - p and q - x of the point with coordinate t
    if lib(iv.p, iv.q) is gmpy2 and lib(t) is math:
        t = gmpy2.mpfr(t)
    w, wc = _logistic_pair(t)
    length = iv.q - iv.p
    return length * w, length * wc


def coord_inv(interval, t: float) -> float:
    """Point of a finite oriented interval whose Poincaré coordinate is ``t``."""
    iv = as_interval(interval)
    if not iv.finite:
        raise DomainError("coord_inv needs two finite endpoints")
    u, v = _offsets(iv, t)
    x = iv.p + u if t < 0 else iv.q - v
    # rounding can land exactly on an endpoint for |t| beyond ~36
    return x


def nonlinearity(p: float, q: float) -> float:
    """Length of ``(p, q)`` in the metric dt/t on the positive half-line."""
    if p <= 0 or q <= 0:
        raise DomainError(f"nonlinearity needs positive endpoints, got ({p!r}, {q!r})")
    return abs(lib(p, q).log(q / p))


def power(x: float, alpha: float) -> float:
    """|x|**alpha as exp(alpha*ln|x|), with 0 -> 0."""
    if x == 0:
        return 0 * x
    m = lib(x, alpha)
    return m.exp(alpha * m.log(abs(x)))


def _power_increment(base: float, delta: float, alpha: float) -> float:
    """(base + delta)**alpha - base**alpha for base > 0, base + delta > 0."""
    m = lib(base, delta, alpha)
    return m.exp(alpha * m.log(base)) * m.expm1(alpha * m.log1p(delta / base))


def _check_positive_domain(alpha: float, iv: OrientedInterval) -> None:
    if alpha <= 1:
        raise DomainError(f"alpha must exceed 1, got {alpha!r}")
    if not iv.finite or iv.p <= 0 or iv.q <= 0:
        raise DomainError(f"({iv.p!r}, {iv.q!r}) is not inside (0, inf)")


def _image_coord(alpha: float, iv: OrientedInterval, u: float, v: float) -> float:
    # coordinate of h(x) in (h(p), h(q)) from u = x - p, v = q - x
    left = _power_increment(iv.p, u, alpha)
    right = -_power_increment(iv.q, -v, alpha)
    return lib(left, right).log(left / right)


def hbar(alpha: float, interval, t: float) -> float:
    """The map h(x) = x**alpha read in Poincaré coordinates.

    Takes the coordinate ``t`` of a point of ``(p, q)`` to the coordinate of
    its image in ``(p**alpha, q**alpha)``.
    """
    iv = as_interval(interval)
    _check_positive_domain(alpha, iv)
    u, v = _offsets(iv, t)
    return _image_coord(alpha, iv, u, v)


def push_at(alpha: float, interval, x: float) -> float:
    """Non-euclidean push of h at ``x``: image coordinate minus domain coordinate."""
    iv = as_interval(interval)
    _check_positive_domain(alpha, iv)
    if not iv.contains(x):
        raise DomainError(f"{x!r} is not interior to ({iv.p!r}, {iv.q!r})")
    u, v = x - iv.p, iv.q - x
    return _image_coord(alpha, iv, u, v) - lib(u, v).log(u / v)


@dataclass(frozen=True)
class PushLimits:
    minus: float
    plus: float


def push_limits(alpha: float, p: float, q: float) -> PushLimits:
    """Limits of hbar(t) - t as t -> -inf and t -> +inf on the domain (p, q).

    Both depend on the domain only through its nonlinearity ``L = ln(q/p)``::

        minus = ln(alpha (e^L - 1) / (e^(alpha L) - 1))
        plus  = ln((e^(alpha L) - 1) / (alpha e^((alpha-1) L) (e^L - 1)))
    """
    iv = as_interval((p, q))
    _check_positive_domain(alpha, iv)
    m = lib(p, q, alpha)
    L = m.log(q / p)
    # expm1 keeps both limits accurate as L -> 0
    gain = m.log(m.expm1(alpha * L) / m.expm1(L))
    minus = m.log(alpha) - gain
    plus = gain - m.log(alpha) - (alpha - 1) * L
    return PushLimits(minus=minus, plus=plus)
