import math

import numpy as np
import pytest
import scipy.special as ss
from hypothesis import given, settings
from hypothesis import strategies as st

from kfgvolkov import special_functions as sf
from kfgvolkov.geometry import PhysicalConstants, Region, SpacetimePoint, classify, to_lightcone
from kfgvolkov.potentials import CircularPolarized, Constant, LinearPolarized, Zero, average_over
from kfgvolkov.propagators import (
    SCHWINGER_NORMALIZATION,
    ConeError,
    delta_1_free,
    delta_c_free,
    delta_s_free,
    psi_minus,
    psi_plus,
    riemann_function,
    schwinger_propagator,
    volkov_psi,
)

K = PhysicalConstants(e=0.5, k0=1.0)


def _cls(t, r):
    return classify(SpacetimePoint(t, r, 0.0, 0.0), PhysicalConstants.natural())


def test_delta_s_inside_matches_reference():
    cls = _cls(2.0, 1.0)
    lam = math.sqrt(3.0)
    val = delta_s_free(cls, 1.4)
    assert val.delta_coeff == 0.0
    assert val.smooth == pytest.approx(-1.4 * ss.j1(1.4 * lam) / lam / (2 * math.pi), rel=1e-13)


def test_delta_s_support_and_cone():
    assert delta_s_free(_cls(1.0, 2.0), 1.0).smooth == 0.0
    cone = delta_s_free(_cls(1.0, 1.0), 2.0)
    assert cone.delta_coeff == pytest.approx(1 / (2 * math.pi))
    # smooth limit at the cone: -(k0^2/2)/(2 pi)
    assert cone.smooth == pytest.approx(-2.0 / (2 * math.pi))


def test_delta_1_two_sides():
    inside = delta_1_free(_cls(2.0, 1.0), 1.4)
    lam = math.sqrt(3.0)
    assert inside.smooth == pytest.approx(1.4 * ss.y1(1.4 * lam) / (4 * math.pi * lam), rel=1e-13)
    outside = delta_1_free(_cls(1.0, 2.0), 1.4)
    lt = math.sqrt(3.0)
    assert outside.smooth == pytest.approx(1.4 * ss.k1(1.4 * lt) / (2 * math.pi**2 * lt), rel=1e-13)
    with pytest.raises(ConeError):
        delta_1_free(_cls(1.0, 1.0), 1.0)


def test_delta_c_combination():
    cls = _cls(3.0, 1.0)
    c = delta_c_free(cls, 0.8)
    assert c.smooth == pytest.approx(0.5 * (delta_s_free(cls, 0.8).smooth + 1j * delta_1_free(cls, 0.8).smooth))


def test_massless_limits():
    # k0 -> 0: Delta_S smooth part vanishes, Delta^(1) -> -1/(2 pi^2 lam^2)
    cls = _cls(2.0, 1.0)
    assert delta_s_free(cls, 1e-8).smooth == pytest.approx(0.0, abs=1e-15)
    assert delta_1_free(cls, 1e-8).smooth == pytest.approx(-1 / (2 * math.pi**2 * 3.0), rel=1e-12)
    assert psi_minus(1.5, 1e-6).smooth == pytest.approx(1 / (2 * math.pi * 2.25), rel=1e-10)


def test_riemann_function():
    assert riemann_function(0.0, 5.0, 3.0) == (1.0, False)
    v = riemann_function(1.2, 0.7, 2.0)
    assert v.value == pytest.approx(ss.j0(math.sqrt(1.68)), rel=1e-14) and not v.growing
    g = riemann_function(1.2, 0.7, -2.0)
    assert g.growing and g.value == pytest.approx(ss.i0(math.sqrt(1.68)), rel=1e-14)


def test_psi_plus_normalisations():
    inside = psi_plus(2.0, 1.0, 1.3)
    lam = math.sqrt(3.0)
    assert inside.smooth == pytest.approx(-1.3 * ss.j1(1.3 * lam) / lam / (2 * math.pi), rel=1e-13)
    cone = psi_plus(1.0, 1.0, 1.3)
    assert cone.delta_coeff == pytest.approx(1 / math.pi)
    assert psi_plus(1.0, 2.0, 1.3).smooth == 0.0
    with pytest.raises(ValueError):
        psi_plus(-1.0, 0.0, 1.0)


def test_psi_minus_domain():
    with pytest.raises(sf.DomainError):
        psi_minus(0.0, 1.0)
    assert psi_minus(2.0, 1.0).region.region is Region.SPACELIKE


@settings(max_examples=200, deadline=None)
@given(st.floats(0.05, 5.0), st.floats(-0.95, 0.95), st.floats(0.0, 6.0))
def test_volkov_zero_field_is_free(t, frac, x_perp):
    p = SpacetimePoint(t, x_perp, 0.0, frac * t)
    v = volkov_psi(p, Zero(), K)
    xi, eta = to_lightcone(p, K)
    ref = psi_plus(math.sqrt(xi * eta), x_perp, K.k0)
    assert v.smooth == ref.smooth and v.delta_coeff == ref.delta_coeff
    assert v.phase == 1.0


def test_volkov_outside_characteristic_wedge_vanishes():
    v = volkov_psi(SpacetimePoint(1.0, 0.0, 0.0, 2.0), LinearPolarized(), K)
    assert v.smooth == 0.0 and v.delta_coeff == 0.0


def test_volkov_field_dresses_mass_and_phase():
    spec = CircularPolarized(1.0, 2.0, 0.0)
    p = SpacetimePoint(2.0 + math.pi / 2, 0.5, 0.0, -2.0 + math.pi / 2)  # xi = 4, eta = pi
    xi, _ = to_lightcone(p, K)
    v = volkov_psi(p, spec, K)
    avg = average_over(spec, 0.0, xi, K)
    assert v.effective_k0 == pytest.approx(avg.k0_eff)
    assert v.effective_k0 > K.k0
    assert abs(v.phase) == pytest.approx(1.0, abs=1e-14)
    free = psi_plus(math.sqrt(xi * math.pi), 0.5, avg.k0_eff)
    assert v.smooth == pytest.approx(v.phase * free.smooth, rel=1e-12)


def test_schwinger_propagator():
    p_in = SpacetimePoint(0.3, 0.1, 0.0, 0.2)
    p_out = SpacetimePoint(2.5, 0.6, -0.4, 0.9)
    zero = schwinger_propagator(p_out, p_in, Zero(), K)
    cls = classify(p_out - p_in, K)
    dc = delta_c_free(cls, K.k0)
    assert zero.normalization == SCHWINGER_NORMALIZATION
    assert zero.smooth == pytest.approx(SCHWINGER_NORMALIZATION * dc.smooth, rel=1e-14)
    field = schwinger_propagator(p_out, p_in, Constant(0.4, 0.1), K)
    assert field.effective_k0 == pytest.approx(K.k0)
    assert abs(field.phase) == pytest.approx(1.0)
    assert field.phase != 1.0
    # phase reverses when the endpoints swap
    back = schwinger_propagator(p_in, p_out, Constant(0.4, 0.1), K)
    assert back.phase == pytest.approx(field.phase.conjugate(), rel=1e-14)
