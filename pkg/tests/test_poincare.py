import math

import gmpy2
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from powerkneading.poincare import (
    DomainError,
    OrientedInterval,
    coord,
    coord_inv,
    extended,
    hbar,
    nonlinearity,
    push_at,
    push_limits,
)

finite = st.floats(-50, 50, allow_nan=False)
positive = st.floats(1e-3, 1e3)
alphas = st.floats(1.01, 8.0)


def test_midpoint_coordinate():
    assert coord((0, 1), 0.5) == 0.0


def test_origin_chart_and_two_sided_chart_agree():
    assert coord((0, -math.inf), -2.0) == pytest.approx(math.log(2), abs=1e-15)
    assert coord((-2.0, 1), 0.0) == pytest.approx(math.log(2), abs=1e-15)


def test_decreasing_chart():
    assert coord((1, -1), -0.2) == pytest.approx(math.log(1.5), abs=1e-15)


def test_positive_infinite_chart():
    assert coord((1, math.inf), 1 + math.e) == pytest.approx(1.0)


@pytest.mark.parametrize(
    "interval, x",
    [((0, 1), 1.0), ((0, 1), -0.1), ((1, -1), 1.5), ((0, math.inf), -1.0), ((0, -math.inf), 0.5)],
)
def test_coord_rejects_points_outside(interval, x):
    with pytest.raises(DomainError):
        coord(interval, x)


@pytest.mark.parametrize("p, q", [(1.0, 1.0), (math.inf, 0.0), (0.0, math.nan)])
def test_bad_intervals(p, q):
    with pytest.raises(DomainError):
        OrientedInterval(p, q)


def test_coord_inv_examples():
    assert coord_inv((0, 1), 0.0) == 0.5
    assert coord_inv((-2.0, 1), math.log(2)) == pytest.approx(0.0, abs=1e-15)
    x = coord_inv((0, 1), 10.0)
    assert abs(coord((0, 1), x) - 10.0) < 1e-12


def test_coord_inv_needs_finite_endpoints():
    with pytest.raises(DomainError):
        coord_inv((0, math.inf), 1.0)


def test_coord_inv_stays_interior_far_out():
    for t in (-35.0, 35.0):
        x = coord_inv((0, 1), t)
        assert 0 < x < 1


def test_nonlinearity_examples():
    assert nonlinearity(1, math.e) == pytest.approx(1.0)
    assert nonlinearity(3.0, 3.0) == 0.0
    assert nonlinearity(2, 6) == pytest.approx(nonlinearity(1, 3))
    assert nonlinearity(6, 2) == nonlinearity(2, 6)
    with pytest.raises(DomainError):
        nonlinearity(0, 1)


def test_hbar_hand_value():
    # x = 1.5, h(x) = 2.25 in (1, 4)
    assert hbar(2, (1, 2), 0.0) == pytest.approx(math.log(1.25 / 1.75), abs=1e-15)
    assert hbar(2, (1, 2), 0.0) == pytest.approx(-0.33647, abs=1e-5)


def test_hbar_near_identity_for_alpha_close_to_one():
    for t in (-3.0, 0.0, 2.5):
        assert hbar(1 + 1e-9, (1, 2), t) == pytest.approx(t, abs=1e-7)


def test_hbar_far_right_matches_plus_limit():
    assert hbar(2, (1, 2), 40.0) - 40.0 == pytest.approx(math.log(0.75), abs=1e-10)
    assert hbar(2, (1, 2), -40.0) + 40.0 == pytest.approx(math.log(2 / 3), abs=1e-10)


def test_hbar_domain_errors():
    with pytest.raises(DomainError):
        hbar(2, (-1, 2), 0.0)
    with pytest.raises(DomainError):
        hbar(1.0, (1, 2), 0.0)
    with pytest.raises(DomainError):
        hbar(2, (1, math.inf), 0.0)


def test_push_at_hand_value():
    assert push_at(2, (1, 2), 1.5) == pytest.approx(hbar(2, (1, 2), 0.0), abs=1e-15)
    with pytest.raises(DomainError):
        push_at(2, (1, 2), 2.0)


def test_push_limits_example():
    lim = push_limits(2, 1, 2)
    assert lim.minus == pytest.approx(math.log(2 / 3), abs=1e-15)
    assert lim.plus == pytest.approx(math.log(3 / 4), abs=1e-15)
    assert lim.minus == pytest.approx(-0.405465, abs=1e-6)
    assert lim.plus == pytest.approx(-0.287682, abs=1e-6)


def test_push_limits_vanish_on_tiny_domains():
    lim = push_limits(3.3, 1.0, 1.0 + 1e-12)
    assert abs(lim.minus) < 1e-10 and abs(lim.plus) < 1e-10


def test_extended_precision_backend():
    with extended(50):
        x = gmpy2.mpfr(1) / 3
        t = coord((0, 1), x)
        assert isinstance(t, type(gmpy2.mpfr(0)))
        assert abs(t + gmpy2.log(2)) < gmpy2.mpfr(10) ** -45
        back = coord_inv((0, 1), t)
        assert abs(back - x) < gmpy2.mpfr(10) ** -45


@given(p=finite, width=st.floats(1e-3, 50), u=st.floats(0.001, 0.999), flip=st.booleans())
def test_roundtrip_relative(p, width, u, flip):
    q = p + width
    iv = (q, p) if flip else (p, q)
    x = p + u * width
    assume(p < x < q)
    back = coord_inv(iv, coord(iv, x))
    assert abs(back - x) <= 1e-12 * max(abs(x), abs(p), abs(q))


@given(p=finite, width=st.floats(1e-3, 50), u=st.floats(0.001, 0.999))
def test_orientation_antisymmetry(p, width, u):
    q = p + width
    x = p + u * width
    assume(p < x < q)
    assert coord((p, q), x) == pytest.approx(-coord((q, p), x), abs=1e-12)


@given(alpha=alphas, p=positive, ratio=st.floats(1.001, 50), t1=st.floats(-30, 30), t2=st.floats(-30, 30))
def test_hbar_monotone_and_expanding(alpha, p, ratio, t1, t2):
    assume(t1 < t2)
    iv = (p, p * ratio)
    h1, h2 = hbar(alpha, iv, t1), hbar(alpha, iv, t2)
    assert h2 - h1 >= (t2 - t1) - 1e-12


@given(alpha=alphas, p=positive, ratio=st.floats(1.001, 50), s=st.floats(1e-3, 1e3), u=st.floats(0.01, 0.99))
def test_push_scale_invariance(alpha, p, ratio, s, u):
    q = p * ratio
    x = p + u * (q - p)
    assume(p < x < q and p < s * x / s < q)
    a, b = push_at(alpha, (p, q), x), push_at(alpha, (s * p, s * q), s * x)
    assert a == pytest.approx(b, abs=1e-9)


@given(alpha=alphas, p=positive, ratio=st.floats(1.001, 100), s=st.floats(1e-3, 1e3))
def test_push_limits_ordered_and_homogeneous(alpha, p, ratio, s):
    lim = push_limits(alpha, p, p * ratio)
    scaled = push_limits(alpha, s * p, s * p * ratio)
    assert lim.minus <= lim.plus
    assert lim.minus == pytest.approx(scaled.minus, abs=1e-9)
    assert lim.plus == pytest.approx(scaled.plus, abs=1e-9)


@given(alpha=alphas, p=positive, ratio=st.floats(1.01, 20), u=st.floats(0.05, 0.95))
@settings(max_examples=200)
def test_push_strength_formula(alpha, p, ratio, u):
    q = p * ratio
    x = p + u * (q - p)
    push = push_at(alpha, (p, q), x)
    expected = push_limits(alpha, x, q).minus + push_limits(alpha, p, x).plus
    assert push == pytest.approx(expected, abs=1e-10)
