"""Closed-form fundamental solutions of the Klein-Fock-Gordon equation.

Each value is split into the coefficient of ``delta(lambda^2)`` and the
regular (smooth) part, so the light-cone term is never smeared numerically.
Two normalisations of the cone term coexist: the Cauchy-problem ``Delta_S``
carries ``1/(2 pi)`` while the characteristic-representation ``Psi+`` carries
``1/pi``. They are kept attached to their own functions and never converted.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from . import special_functions as sf
from .geometry import (
    IntervalClassification,
    PhysicalConstants,
    Region,
    SpacetimePoint,
    classify,
    classify_2d,
    to_lightcone,
)
from .potentials import PotentialSpec, average_over, phase_factor

TWO_PI = 2.0 * math.pi


class ConeError(ValueError):
    """Evaluation on the light cone, where the function is not integrable."""


@dataclass(frozen=True)
class PropagatorValue:
    """``delta_coeff * delta(lambda^2) + smooth``.

    ``normalization`` is the constant prefactor already folded into both
    parts; ``phase`` is the field-dependent gauge factor (1 for free
    propagators).
    """

    delta_coeff: complex
    smooth: complex
    region: IntervalClassification
    effective_k0: float
    phase: complex = 1.0 + 0.0j
    normalization: complex = 1.0 + 0.0j


def _j1_over_lambda_times_k0(k0: float, lambda_sq: float) -> float:
    # k0 * J1(k0 lam) / lam, continuous at lam -> 0
    lam = math.sqrt(lambda_sq)
    return k0 * k0 * sf.j1_ratio(k0 * lam)


def delta_s_free(cls: IntervalClassification, k0: float) -> PropagatorValue:
    """Real part of the free causal function, cone coefficient ``1/(2 pi)``."""
    if cls.region is Region.TIMELIKE:
        smooth = -_j1_over_lambda_times_k0(k0, cls.lambda_sq) / TWO_PI
        return PropagatorValue(0.0, smooth, cls, k0)
    if cls.region is Region.LIGHTLIKE:
        return PropagatorValue(1.0 / TWO_PI, -k0 * k0 * sf.j1_ratio(0.0) / TWO_PI, cls, k0)
    return PropagatorValue(0.0, 0.0, cls, k0)


def delta_1_free(cls: IntervalClassification, k0: float) -> PropagatorValue:
    """Imaginary part of the free causal function (Neumann inside, MacDonald outside)."""
    if cls.region is Region.LIGHTLIKE:
        raise ConeError("Delta^(1) is singular on the light cone")
    if cls.region is Region.TIMELIKE:
        lam_sq = cls.lambda_sq
        smooth = sf.y1_scaled(k0 * math.sqrt(lam_sq)) / (4.0 * math.pi * lam_sq)
    else:
        lam_sq = -cls.lambda_sq
        smooth = sf.k1_scaled(k0 * math.sqrt(lam_sq)) / (2.0 * math.pi**2 * lam_sq)
    return PropagatorValue(0.0, smooth, cls, k0)


def delta_c_free(cls: IntervalClassification, k0: float) -> PropagatorValue:
    """Causal function ``(Delta_S + i Delta^(1)) / 2``."""
    s = delta_s_free(cls, k0)
    d1 = delta_1_free(cls, k0)
    return PropagatorValue(0.5 * s.delta_coeff, 0.5 * (s.smooth + 1j * d1.smooth), cls, k0)


class RiemannValue(NamedTuple):
    value: float
    growing: bool


def riemann_function(xi: float, eta: float, a_sq: float) -> RiemannValue:
    """``J0(sqrt(xi eta a^2))``, continued to ``I0`` when ``xi eta a^2 < 0``.

    The continuation is the growing solution and is flagged as such.
    """
    arg = xi * eta * a_sq
    if not math.isfinite(arg):
        raise ValueError("riemann_function: non-finite argument")
    if arg >= 0:
        return RiemannValue(sf.j0(math.sqrt(arg)), False)
    return RiemannValue(sf.i0(math.sqrt(-arg)), True)


def psi_plus(tau: float, x_perp: float, k0: float) -> PropagatorValue:
    """Characteristic-representation solution for ``c^2 t^2 >= z^2``.

    ``tau = sqrt(c^2 t^2 - z^2)``; cone coefficient ``1/pi``, smooth part
    ``-(k0 / 2 pi) J1(k0 lam) / lam`` inside the cone and zero outside.
    """
    if not tau >= 0:
        raise ValueError("psi_plus requires tau >= 0")
    cls = classify_2d(tau, x_perp)
    if cls.region is Region.TIMELIKE:
        smooth = -_j1_over_lambda_times_k0(k0, cls.lambda_sq) / TWO_PI
        return PropagatorValue(0.0, smooth, cls, k0)
    if cls.region is Region.LIGHTLIKE:
        return PropagatorValue(1.0 / math.pi, -k0 * k0 * sf.j1_ratio(0.0) / TWO_PI, cls, k0)
    return PropagatorValue(0.0, 0.0, cls, k0)


def psi_minus(lam_tilde: float, k0: float) -> PropagatorValue:
    """Characteristic-representation solution outside the cone, ``(k0/2pi) K1(k0 lam~)/lam~``.

    The returned classification carries ``tau_sq = nan``: only the
    4-interval is known here.
    """
    if not lam_tilde > 0:
        raise sf.DomainError("psi_minus requires lam_tilde > 0")
    lam_sq = lam_tilde * lam_tilde
    cls = IntervalClassification(-lam_sq, math.nan, Region.SPACELIKE)
    smooth = sf.k1_scaled(k0 * lam_tilde) / (TWO_PI * lam_sq)
    return PropagatorValue(0.0, smooth, cls, k0)


def volkov_psi(p: SpacetimePoint, spec: PotentialSpec, k: PhysicalConstants) -> PropagatorValue:
    """Fundamental solution with the plane-wave interaction, relative to the origin.

    The field averages run over ``[0, xi]``; the mass is replaced by the
    effective ``k0(xi)`` and the whole value is multiplied by the gauge
    phase.
    """
    xi, eta = to_lightcone(p, k)
    avg = average_over(spec, 0.0, xi, k)
    origin = SpacetimePoint()
    phase = phase_factor(spec, p, origin, k, averages=avg)
    tau_sq = xi * eta
    x_perp = p.x_perp
    if tau_sq < 0:
        cls = IntervalClassification(tau_sq - x_perp * x_perp, tau_sq, Region.SPACELIKE)
        return PropagatorValue(0.0, 0.0, cls, avg.k0_eff, phase)
    free = psi_plus(math.sqrt(tau_sq), x_perp, avg.k0_eff)
    if phase == 1.0:
        return PropagatorValue(free.delta_coeff, free.smooth, free.region, avg.k0_eff, phase)
    return PropagatorValue(
        phase * free.delta_coeff, phase * free.smooth, free.region, avg.k0_eff, phase
    )


SCHWINGER_NORMALIZATION = -1.0 / (4.0 * math.pi**2)


def schwinger_propagator(
    p_out: SpacetimePoint,
    p_in: SpacetimePoint,
    spec: PotentialSpec,
    k: PhysicalConstants,
) -> PropagatorValue:
    """Two-point propagator: gauge phase times the free causal function at ``k0(xi', xi'')``.

    ``-(1/4pi^2) * phase * Delta_C(x' - x'', k0_eff)``; the constant
    ``-1/(4 pi^2)`` is stored as ``normalization``.
    """
    xi_out, _ = to_lightcone(p_out, k)
    xi_in, _ = to_lightcone(p_in, k)
    avg = average_over(spec, xi_in, xi_out, k)
    phase = phase_factor(spec, p_out, p_in, k, averages=avg)
    cls = classify(p_out - p_in, k)
    dc = delta_c_free(cls, avg.k0_eff)
    pref = SCHWINGER_NORMALIZATION * phase
    return PropagatorValue(
        pref * dc.delta_coeff,
        pref * dc.smooth,
        cls,
        avg.k0_eff,
        phase,
        SCHWINGER_NORMALIZATION,
    )
