import math
import warnings

import numpy as np
import pytest
import scipy.special as ss

from kfgvolkov import quadrature as q
from kfgvolkov.propagators import psi_minus, psi_plus


def test_adaptive_polynomial_and_endpoint_singularity():
    res = q.integrate_adaptive(lambda x: x**5 - 2 * x, 0.0, 2.0, 1e-13)
    assert res.converged and res.value == pytest.approx(64 / 6 - 4, rel=1e-14)
    res = q.integrate_adaptive(lambda x: 1 / np.sqrt(x), 0.0, 1.0, 1e-10)
    assert res.value == pytest.approx(2.0, rel=1e-9)


def test_adaptive_infinite_range():
    res = q.integrate_adaptive(lambda x: np.exp(-x * x), 0.0, math.inf, 1e-13)
    assert res.value == pytest.approx(math.sqrt(math.pi) / 2, rel=1e-12)


def test_adaptive_breakpoints_and_complex():
    res = q.integrate_adaptive(lambda x: np.abs(x - 0.3), 0.0, 1.0, 1e-14, points=[0.3])
    assert res.value == pytest.approx(0.045 + 0.245, rel=1e-13)
    res = q.integrate_adaptive(lambda x: np.exp(1j * x), 0.0, math.pi, 1e-13)
    assert res.value == pytest.approx(2j, abs=1e-13)


def test_unreachable_tolerance_is_graceful():
    res = q.integrate_adaptive(lambda x: np.sin(1 / (x + 1e-3)), 0.0, 1.0, 1e-300, max_rounds=5)
    assert not res.converged
    assert math.isfinite(res.value)


@pytest.mark.parametrize("order", [0, 1])
def test_weber_integrals(order):
    # int_0^inf J_n(k) dk = 1
    from kfgvolkov import special_functions as sf

    zeros = sf.bessel_zeros(order, 400)
    res = q.integrate_bessel_tail(lambda k: sf.jn(order, k), 0.0, zeros, 1e-12)
    assert res.value == pytest.approx(1.0, abs=1e-11)


def test_iterated_average_levels():
    partial = np.cumsum([(-1) ** n / (n + 1) for n in range(40)])
    levels = q.iterated_average_levels(partial)
    assert abs(levels[10] - math.log(2)) < abs(levels[0] - math.log(2)) * 1e-6


@pytest.mark.parametrize("tau, x_perp, k0", [(2.0, 1.0, 1.0), (3.0, 0.5, 2.2), (1.0, 0.95, 0.7)])
def test_sonin_inside(tau, x_perp, k0):
    res = q.sonin_numeric(tau, x_perp, k0)
    lam = math.sqrt(tau * tau - x_perp * x_perp)
    # m=1, n=0 closed form J0(k0 lam)/tau
    assert res.value == pytest.approx(ss.j0(k0 * lam) / tau, rel=1e-8)
    assert q.sonin_rhs(tau, x_perp, k0) == pytest.approx(ss.j0(k0 * lam) / tau, rel=1e-13)


@pytest.mark.parametrize("tau, x_perp", [(0.5, 1.0), (1.0, 3.0)])
def test_sonin_outside_vanishes(tau, x_perp):
    assert abs(q.sonin_numeric(tau, x_perp, 1.3).value) < 1e-9
    assert q.sonin_rhs(tau, x_perp, 1.3) == 0.0


@pytest.mark.parametrize("m, n, tau, x_perp, k0", [(2, 0, 2.0, 0.7, 1.1), (3, 1, 2.5, 1.2, 0.8)])
def test_sonin_higher_order(m, n, tau, x_perp, k0):
    # the radial factor is (lam / k0)^(m-n-1) J_{m-n-1}(k0 lam)
    lam = math.sqrt(tau * tau - x_perp * x_perp)
    p = m - n - 1
    expect = x_perp**n / tau**m * (lam / k0) ** p * ss.jv(p, k0 * lam)
    res = q.sonin_numeric(tau, x_perp, k0, m=m, n=n)
    assert res.value == pytest.approx(expect, rel=1e-8)
    assert q.sonin_rhs(tau, x_perp, k0, m, n) == pytest.approx(expect, rel=1e-12)


def test_sonin_massless_limit():
    assert q.sonin_rhs(2.0, 1.0, 0.0) == 0.5
    assert q.sonin_rhs(2.0, 1.0, 0.0, m=2, n=0) == pytest.approx(q.sonin_rhs(2.0, 1.0, 1e-7, m=2, n=0), rel=1e-12)


def test_sonin_jump_is_localised():
    # crossing tau = x_perp the integral drops from the RHS branch to ~0
    x_perp, k0 = 1.0, 1.0
    below = q.sonin_numeric(0.9, x_perp, k0).value
    above = q.sonin_numeric(1.1, x_perp, k0).value
    assert abs(below) < 1e-6
    assert above == pytest.approx(q.sonin_rhs(1.1, x_perp, k0), rel=1e-6)
    with pytest.raises(ValueError):
        q.sonin_numeric(1.0, 0.5, 1.0, m=0, n=1)


def test_psi_plus_numeric():
    res = q.psi_plus_numeric(2.0, 0.8, 1.3)
    assert res.value == pytest.approx(psi_plus(2.0, 0.8, 1.3).smooth, rel=1e-6)
    with pytest.warns(q.QuadratureWarning):
        q.psi_plus_numeric(1.0, 1.0 - 1e-5, 1.0, max_intervals=50)


def test_psi_minus_numeric():
    res = q.psi_minus_numeric(2.0, 1.1, 0.9)
    assert res.value == pytest.approx(psi_minus(2.0, 0.9).smooth, rel=1e-10)


@pytest.mark.parametrize("x_perp, k0", [(0.3, 0.5), (2.0, 1.0), (5.0, 2.5)])
def test_macdonald(x_perp, k0):
    res = q.macdonald_superposition(x_perp, k0)
    assert res.value == pytest.approx(k0 * ss.k1(k0 * x_perp) / x_perp, rel=1e-10)
    # no extra 1/(2 pi) factor
    assert res.value != pytest.approx(k0 * ss.k1(k0 * x_perp) / x_perp / (2 * math.pi), rel=1e-3)


@pytest.mark.parametrize("k0, lam_sq", [(1.0, 2.0), (1.7, 0.5), (1.0, -2.0), (0.6, -0.3)])
def test_proper_time_closed_form(k0, lam_sq):
    res = q.proper_time_numeric(k0, lam_sq)
    ref = q.proper_time_closed_form(k0, lam_sq)
    assert res.converged
    assert abs(res.value - ref) < 1e-7 * abs(ref)


def test_proper_time_validation():
    with pytest.raises(ValueError):
        q.proper_time_numeric(1.0, 0.0)
    with pytest.raises(ValueError):
        q.proper_time_numeric(1.0, 1.0, epsilon=0.5)


def test_proper_time_scaling_covariance():
    base = q.proper_time_numeric(1.0, 1.5).value
    scaled = q.proper_time_numeric(2.0, 1.5 / 4).value
    assert abs(scaled - 4 * base) < 1e-7 * abs(base)


def test_proper_time_spacelike_decay():
    from kfgvolkov import special_functions as sf

    vals = [abs(q.proper_time_numeric(k0, -1.0).value) for k0 in (2.0, 4.0, 8.0)]
    assert vals[0] > vals[1] > vals[2]
    assert vals[2] == pytest.approx(8.0 * sf.k1(8.0), rel=1e-6)
