import math

import mpmath
import pytest

from powerkneading.family import a_escape, kneading, param_from_a, param_from_abar
from powerkneading.poincare import DomainError
from powerkneading.supersink import (
    TARGETS,
    g_derivative_scan,
    g_of_t,
    find_superstable,
    rlrl_t_range,
    sweep_alpha,
    tau_gamma,
    tau_gamma_scan,
    uniqueness_witness,
)

from . import oracles

SWEEP = [1.2, 1.5, 2.0, 2.5, 3.0, math.pi]


def test_oracle_reproduces_frozen_roots():
    with mpmath.workdps(400):
        assert abs(oracles.polynomial_root(4, "1.2", "1.4") - mpmath.mpf(oracles.RLRC_A)) < 1e-24
        assert abs(oracles.polynomial_root(8, "1.35", "1.40") - mpmath.mpf(oracles.RLRRRLRC_A)) < 1e-24


@pytest.mark.parametrize("alpha", [1.05, 1.5, 2.0, math.e, 7.0])
def test_rc_is_exactly_one(alpha):
    r = find_superstable(alpha, "RC")
    assert r.a == 1.0 and r.residual == 0.0


def test_rlrc_against_polynomial_oracle():
    r = find_superstable(2.0, "RLRC")
    assert abs(r.a - float(oracles.RLRC_A)) < 1e-15
    assert r.residual <= 1e-12
    assert r.bracket[0] <= r.a <= r.bracket[1]
    assert kneading(2.0, r.a, 8, 10 * 1e-12).symbols == "RLRC"


def test_rlrrrlrc_against_polynomial_oracle():
    r = find_superstable(2.0, "RLRRRLRC")
    assert abs(r.a - float(oracles.RLRRRLRC_A)) < 1e-15
    assert r.residual <= 1e-12
    assert kneading(2.0, r.a, 12, 10 * 1e-12).symbols == "RLRRRLRC"


def test_unknown_target_and_tolerance():
    with pytest.raises(DomainError):
        find_superstable(2.0, "RLC")
    with pytest.raises(DomainError):
        find_superstable(2.0, "RLRC", tol=1e-15)
    with pytest.raises(DomainError, match="alpha must exceed 1"):
        find_superstable(0.9, "RLRC")


def test_solver_is_deterministic():
    find_superstable.cache_clear()
    first = find_superstable(2.5, "RLRRRLRC")
    find_superstable.cache_clear()
    second = find_superstable(2.5, "RLRRRLRC")
    assert first == second
    assert first.trace == second.trace


@pytest.mark.parametrize("target", TARGETS)
def test_sweep_converges_inside_escape_bound(target):
    rows = sweep_alpha(SWEEP, target)
    assert [r.alpha for r in rows] == SWEEP
    for row in rows:
        assert row.ok, row.error
        assert row.result.residual <= 1e-12
        if target == "RC":
            assert row.result.a == 1.0
        else:
            assert 1 < row.result.a < a_escape(row.alpha)


def test_sweep_records_row_errors():
    rows = sweep_alpha([2.0, 0.5], "RLRC")
    assert rows[0].ok and not rows[1].ok
    assert "alpha must exceed 1" in rows[1].error


def test_targets_nest_in_parameter():
    for alpha in (1.5, 2.0, 3.0):
        assert find_superstable(alpha, "RLRC").a < find_superstable(alpha, "RLRRRLRC").a


@pytest.mark.parametrize("alpha", [1.5, 2.0, 3.0])
@pytest.mark.parametrize("target", ["RLRC", "RLRRRLRC"])
def test_uniqueness_witness(alpha, target):
    w = uniqueness_witness(alpha, target)
    assert w.sign_changes == 1
    root = find_superstable(alpha, target).a
    step = (a_escape(alpha) - 1) / 999
    assert abs(w.change_locations[0] - root) <= step


def test_uniqueness_witness_rejects_rc():
    with pytest.raises(DomainError):
        uniqueness_witness(2.0, "RC")


def test_g_hand_value():
    s = g_of_t(2.0, math.log(1.5))
    assert s.a == pytest.approx(1.2)
    assert s.g == pytest.approx(math.log(0.1124352 / 0.2875648), abs=1e-12)
    assert s.g == pytest.approx(-0.9391, abs=1e-4)


def test_g_vanishes_at_rlrc():
    r = find_superstable(2.0, "RLRC")
    t = param_from_a(2.0, r.a).tcoord
    assert abs(g_of_t(2.0, t).g) <= 1e-9
    assert g_of_t(2.0, t - 1e-3).g < 0 < g_of_t(2.0, t + 1e-3).g


def test_g_scan_rejects_degenerate_grid():
    with pytest.raises(DomainError):
        g_derivative_scan(2.0, 1.0, 1.0, 2)
    with pytest.raises(DomainError):
        g_derivative_scan(2.0, 0.5, 1.0, 1)


@pytest.mark.parametrize("alpha, floor", [(1.5, 3.52), (2.0, 3.83), (3.0, 4.17)])
def test_g_slopes_exceed_one(alpha, floor):
    scan = g_derivative_scan(alpha, *rlrl_t_range(alpha), 100)
    assert len(scan.samples) == 100
    assert scan.all_slopes_exceed_one
    assert scan.min_slope > floor


def test_tau_gamma_endpoint_and_sign():
    scan = tau_gamma_scan(2.0, 50)
    assert scan.monotone
    assert all(s.gamma > 0 for s in scan.samples)
    assert all(s.tau <= 1e-9 for s in scan.samples)
    assert abs(scan.samples[-1].tau) < 1e-6
    assert 0 < scan.min_slope <= scan.max_slope < math.inf


def test_tau_gamma_sample_regime():
    lo = find_superstable(2.0, "RLRC").abar
    hi = find_superstable(2.0, "RLRRRLRC").abar
    mid = tau_gamma(2.0, 0.5 * (lo + hi))
    assert mid.gamma > 0 and mid.tau < 0
    with pytest.raises(ValueError):
        tau_gamma(2.0, lo - 0.5)
    with pytest.raises(ValueError):
        tau_gamma(2.0, param_from_abar(2.0, hi).abar + 0.5)
