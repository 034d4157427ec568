import math

import mpmath
import numpy as np
import pytest
import scipy.special as ss
from hypothesis import given, settings
from hypothesis import strategies as st

from kfgvolkov import special_functions as sf

# Relative accuracy away from zeros; absolute floor where a function crosses zero.
RTOL = 1e-12
ATOL = 1e-14

XS = np.concatenate([np.linspace(1e-6, 1.0, 50), np.linspace(1.0, 24.9, 200), np.linspace(25.0, 200.0, 200)])


def _close(got, ref, rtol=RTOL, atol=ATOL):
    bad = np.abs(got - ref) > rtol * np.abs(ref) + atol
    assert not bad.any(), f"worst mismatch at x index {np.flatnonzero(bad)[:5]}"


@pytest.mark.parametrize(
    "fn, ref",
    [
        (sf.j0, ss.j0),
        (sf.j1, ss.j1),
        (sf.y0, ss.y0),
        (sf.y1, ss.y1),
        (sf.i0, ss.i0),
        (sf.i1, ss.i1),
        (sf.k0, ss.k0),
        (sf.k1, ss.k1),
    ],
)
def test_against_reference_library(fn, ref):
    xs = XS if fn not in (sf.i0, sf.i1) else XS[XS < 600]
    _close(fn(xs), ref(xs), atol=ATOL * np.maximum(1.0, np.abs(ref(xs))))


@pytest.mark.parametrize("x", [0.3, 1.7, 8.4, 19.0, 31.5])
def test_integral_representations(x):
    # Bessel integrals evaluated independently in high precision
    j0_int = mpmath.quad(lambda th: mpmath.cos(x * mpmath.sin(th)), [0, mpmath.pi]) / mpmath.pi
    j1_int = mpmath.quad(lambda th: mpmath.cos(th - x * mpmath.sin(th)), [0, mpmath.pi]) / mpmath.pi
    # the K integrands are below exp(-60) beyond t_max
    t_max = math.acosh(60.0 / x + 1.0)
    k0_int = mpmath.quad(lambda t: mpmath.exp(-x * mpmath.cosh(t)), mpmath.linspace(0, t_max, 24))
    k1_int = mpmath.quad(lambda t: mpmath.exp(-x * mpmath.cosh(t)) * mpmath.cosh(t), mpmath.linspace(0, t_max, 24))
    assert sf.j0(x) == pytest.approx(float(j0_int), rel=RTOL, abs=ATOL)
    assert sf.j1(x) == pytest.approx(float(j1_int), rel=RTOL, abs=ATOL)
    assert sf.k0(x) == pytest.approx(float(k0_int), rel=1e-12, abs=1e-26)
    assert sf.k1(x) == pytest.approx(float(k1_int), rel=1e-12, abs=1e-26)


@pytest.mark.parametrize("n", [0, 1, 2, 5, 10, 20])
def test_jn_matches_mpmath(n):
    for x in (0.01, 0.9, 4.4, 12.0, 26.0, 60.0):
        ref = float(mpmath.besselj(n, x))
        assert sf.jn(n, x) == pytest.approx(ref, rel=1e-11, abs=1e-15)


def test_small_argument_series():
    x = 1e-3
    assert sf.j0(x) == pytest.approx(1 - x * x / 4, rel=1e-15)
    assert sf.j1(x) == pytest.approx(x / 2 - x**3 / 16, rel=1e-15)
    assert sf.k0(x) == pytest.approx(-math.log(x / 2) - sf.EULER_GAMMA, rel=1e-6)


def test_limits_at_zero():
    assert sf.j0(0.0) == 1.0
    assert sf.j1(0.0) == 0.0
    assert sf.i0(0.0) == 1.0
    assert sf.j1_ratio(0.0) == 0.5
    assert sf.y1_scaled(0.0) == pytest.approx(-2 / math.pi)
    assert sf.k1_scaled(0.0) == 1.0


def test_domain_errors():
    with pytest.raises(sf.DomainError):
        sf.y0(0.0)
    with pytest.raises(sf.DomainError):
        sf.k1(-1.0)
    with pytest.raises(sf.DomainError):
        sf.j0(float("nan"))


def test_zeros_are_roots():
    for n in (0, 1, 2):
        z = sf.bessel_zeros(n, 30)
        np.testing.assert_allclose(z, ss.jn_zeros(n, 30), rtol=1e-13)
        assert np.all(np.abs(sf.jn(n, z)) < 1e-13)
    assert sf.bessel_zeros(0, 1)[0] == pytest.approx(2.404825557695773, rel=1e-14)


def test_cyl_dispatch():
    x = np.array([0.5, 3.0])
    for kind, fn in [("J0", sf.j0), ("J1", sf.j1), ("N1", sf.y1), ("K0", sf.k0), ("K1", sf.k1)]:
        np.testing.assert_array_equal(sf.cyl(kind, x), fn(x))
        np.testing.assert_array_equal(sf.cyl(sf.CylinderKind[kind], x), fn(x))


def test_scalar_in_scalar_out():
    assert isinstance(sf.j0(1.0), float)
    assert sf.j0(np.array([1.0])).shape == (1,)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.05, 150.0))
def test_wronskians(x):
    # J1 Y0 - J0 Y1 = 2/(pi x),  I0 K1 + I1 K0 = 1/x
    w_jy = sf.j1(x) * sf.y0(x) - sf.j0(x) * sf.y1(x)
    assert w_jy == pytest.approx(2 / (math.pi * x), rel=1e-11)
    if x < 300:
        w_ik = sf.i0(x) * sf.k1(x) + sf.i1(x) * sf.k0(x)
        assert w_ik == pytest.approx(1 / x, rel=1e-11)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.1, 80.0), st.integers(1, 15))
def test_three_term_recurrence(x, n):
    lhs = sf.jn(n - 1, x) + sf.jn(n + 1, x)
    rhs = 2 * n / x * sf.jn(n, x)
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-13)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.0, 3.0))
def test_addition_normalization(x):
    # 1 = J0 + 2 sum J_2k; terms beyond J_20 are below 1e-16 for x <= 3
    total = sf.jn(0, x) + 2 * sum(sf.jn(2 * k, x) for k in range(1, 11))
    assert total == pytest.approx(1.0, abs=1e-13)


def test_j1_ratio_continuity():
    xs = np.array([1e-6, 1e-4 * (1 - 1e-9), 1e-4, 1e-4 * (1 + 1e-9), 1e-2])
    np.testing.assert_allclose(sf.j1_ratio(xs), ss.j1(xs) / xs, rtol=1e-14)


def test_order_raise_residual_converges():
    r1 = sf.order_raise_residual(2.0, 1.3, 1e-3)
    r2 = sf.order_raise_residual(2.0, 1.3, 5e-4)
    assert r1 < 1e-6
    assert r1 / r2 == pytest.approx(4.0, abs=0.5)
    with pytest.raises(sf.DomainError):
        sf.order_raise_residual(1e-5, 1.0, 1e-4)
