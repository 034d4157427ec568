"""Oracle suites shared by ``kfgvolkov verify`` and the acceptance tests.

Every suite draws its random points from ``numpy.random.default_rng`` seeded
with ``seed`` plus a fixed per-suite offset, so selecting a subset of suites
does not change the points of the others. Reports carry no timings and are
therefore reproducible byte for byte.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import goursat, quadrature
from . import special_functions as sf
from .geometry import PhysicalConstants, Region, SpacetimePoint, classify, to_lightcone
from .potentials import (
    CircularPolarized,
    Constant,
    LinearPolarized,
    PulseEnvelope,
    Tabulated,
    Zero,
    average_over,
    big_k_squared,
    f_accumulate,
)
from .propagators import delta_1_free, delta_s_free, psi_minus, psi_plus, volkov_psi

REPORT_VERSION = "1.0"


@dataclass
class SuiteResult:
    name: str
    paper_ref: str
    required_tol: float
    achieved: float
    passed: bool
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "paper_ref": self.paper_ref,
            "required_tol": self.required_tol,
            "achieved": self.achieved,
            "pass": self.passed,
            "details": self.details,
        }


@dataclass(frozen=True)
class Suite:
    name: str
    paper_ref: str
    required_tol: float
    offset: int
    run: Callable


def _rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b)


# --------------------------------------------------------------------------
# individual suites; each returns (achieved, extra pass condition, details)


def _sonin(rng, tol):
    inside = []
    for _ in range(10):
        tau = rng.uniform(0.5, 5.0)
        x_perp = tau * rng.uniform(0.05, 0.9)
        k0 = rng.uniform(0.5, 3.0)
        num = quadrature.sonin_numeric(tau, x_perp, k0)
        inside.append(_rel(num.value, quadrature.sonin_rhs(tau, x_perp, k0)))
    outside = []
    for _ in range(5):
        tau = rng.uniform(0.2, 4.0)
        x_perp = tau / rng.uniform(0.1, 0.8)
        k0 = rng.uniform(0.5, 3.0)
        num = quadrature.sonin_numeric(tau, x_perp, k0)
        outside.append(abs(num.value) / max(1.0, 1.0 / tau))
    achieved = max(max(inside), max(outside))
    return achieved, True, {"max_rel_inside": max(inside), "max_scaled_abs_outside": max(outside)}


def _psi_plus(rng, tol):
    errs = []
    for _ in range(10):
        tau = rng.uniform(0.5, 4.0)
        x_perp = tau * rng.uniform(0.1, 0.85)
        k0 = rng.uniform(0.5, 2.0)
        num = quadrature.psi_plus_numeric(tau, x_perp, k0)
        errs.append(_rel(num.value, psi_plus(tau, x_perp, k0).smooth))
    return max(errs), True, {"points": len(errs)}


def _psi_minus(rng, tol):
    errs = []
    for _ in range(10):
        lam_t = rng.uniform(0.3, 4.0)
        x_perp = lam_t * rng.uniform(0.2, 1.0)
        k0 = rng.uniform(0.3, 3.0)
        num = quadrature.psi_minus_numeric(lam_t, x_perp, k0)
        errs.append(_rel(num.value, psi_minus(lam_t, k0).smooth))
    lam_t = 1.5
    massless = 1.0 / (2.0 * math.pi * lam_t * lam_t)
    limit_err = _rel(psi_minus(lam_t, 1e-6).smooth, massless)
    return max(errs), limit_err <= 1e-4, {"massless_rel_err": limit_err, "massless_tol": 1e-4}


def _macdonald(rng, tol):
    errs = []
    for _ in range(10):
        x_perp = rng.uniform(0.2, 5.0)
        k0 = rng.uniform(0.3, 3.0)
        num = quadrature.macdonald_superposition(x_perp, k0)
        errs.append(_rel(num.value, k0 * sf.k1(k0 * x_perp) / x_perp))
    return max(errs), True, {"normalization": "k0 K1(k0 x)/x, no extra 1/(2 pi)"}


def _halving_ratio(coarse, fine) -> float:
    return float(np.sum(coarse) / np.sum(fine))


def _order_raise(rng, tol):
    tau = rng.uniform(0.5, 5.0, 100)
    s = rng.uniform(0.5, 3.0, 100)
    r1 = np.array([sf.order_raise_residual(t, q, 1e-4) for t, q in zip(tau, s)])
    r2 = np.array([sf.order_raise_residual(t, q, 5e-5) for t, q in zip(tau, s)])
    ratio = _halving_ratio(r1, r2)
    ok = abs(ratio - 4.0) <= 0.5
    return float(r1.max()), ok, {"halving_ratio": ratio, "ratio_band": [3.5, 4.5]}


def _volkov_families():
    """``(label, K^2, f)`` for the constant, linear and circular families."""
    k = PhysicalConstants(e=0.8, k0=1.0)
    k1, k2 = 0.3, -0.2
    out = []
    for label, spec in (
        ("constant", Constant(0.6, -0.3)),
        ("linear", LinearPolarized(0.9, 1.7, 0.4)),
        ("circular", CircularPolarized(0.7, 1.3, 0.2)),
    ):
        out.append(
            (
                label,
                lambda xi, spec=spec: big_k_squared(spec, k1, k2, xi, k),
                lambda xi, spec=spec: f_accumulate(spec, k1, k2, xi, k),
            )
        )
    return out


def _riemann(rng, tol):
    xi = rng.uniform(0.2, 3.0, 50)
    eta = rng.uniform(0.2, 3.0, 50)
    worst = 0.0
    ratios = {}
    for label, ksq, f in _volkov_families():
        r1 = np.array([goursat.riemann_residual(ksq, f, a, b, 1e-3) for a, b in zip(xi, eta)])
        r2 = np.array([goursat.riemann_residual(ksq, f, a, b, 5e-4) for a, b in zip(xi, eta)])
        worst = max(worst, float(r1.max()))
        ratios[label] = _halving_ratio(r1, r2)
    ok = all(abs(r - 4.0) <= 0.5 for r in ratios.values())
    return worst, ok, {"halving_ratio": ratios}


def _goursat(rng, tol):
    orders = {}
    finest = {}
    for label, ksq, f in _volkov_families():
        study = goursat.convergence_study(ksq, 2.0, 2.0, 4, f=f, n0=32)
        orders[label] = study.orders
        finest[label] = study.errors[-1]
    zero = goursat.solve_goursat(0.0, 2.0, 2.0, 64, 64, f=lambda xi: 0.0 * xi)
    flat = [p for o in orders.values() for p in o]
    achieved = max(abs(p - 2.0) for p in flat)
    ok = zero.max_abs_error == 0.0
    return achieved, ok, {
        "orders": orders,
        "finest_max_error": finest,
        "zero_coefficient_error": zero.max_abs_error,
    }


def _random_spec(rng):
    kind = rng.integers(0, 5)
    a = rng.uniform(-2.0, 2.0)
    kappa = rng.uniform(0.1, 4.0)
    if kind == 0:
        return Constant(a, rng.uniform(-2.0, 2.0))
    if kind == 1:
        return LinearPolarized(a, kappa, rng.uniform(0.0, 2 * math.pi))
    if kind == 2:
        return CircularPolarized(a, kappa, rng.uniform(0.0, 2 * math.pi))
    if kind == 3:
        return PulseEnvelope(a, kappa, rng.uniform(0.3, 2.0))
    xs = np.linspace(-3.0, 3.0, 9)
    return Tabulated(tuple(zip(xs, rng.uniform(-1, 1, 9), rng.uniform(-1, 1, 9))))


def _effective_mass(rng, tol):
    k = PhysicalConstants(e=0.9, k0=1.2)
    worst_var = math.inf
    for _ in range(1000):
        spec = _random_spec(rng)
        lo, hi = np.sort(rng.uniform(-4.0, 4.0, 2))
        worst_var = min(worst_var, average_over(spec, lo, hi, k).variance)
    a, kappa = 0.8, 1.7
    spec = CircularPolarized(a, kappa, 0.3)
    start = rng.uniform(-2.0, 2.0)
    got = average_over(spec, start, start + 2 * math.pi / kappa, k).k0_eff
    expect = k.k0 * math.sqrt(1.0 + (k.coupling * a / k.k0) ** 2)
    circ_err = _rel(got, expect)
    uncharged = PhysicalConstants(e=0.0, k0=1.2)
    e_zero = average_over(spec, 0.1, 2.3, uncharged).k0_eff == uncharged.k0
    ok = worst_var >= -1e-10 and e_zero
    return circ_err, ok, {"min_variance": float(worst_var), "uncharged_exact": e_zero}


def _free_reduction(rng, tol):
    k = PhysicalConstants(e=1.0, k0=rng.uniform(0.5, 2.0))
    mismatches = 0
    phase_ok = True
    count = 0
    for t in np.linspace(0.1, 3.0, 10):
        for frac in np.linspace(-0.9, 0.9, 10):
            for xp in np.linspace(0.05, 3.5, 10):
                p = SpacetimePoint(float(t), float(xp) * 0.6, float(xp) * 0.8, float(frac * t))
                got = volkov_psi(p, Zero(), k)
                xi, eta = to_lightcone(p, k)
                ref = psi_plus(math.sqrt(xi * eta), p.x_perp, k.k0)
                same = (
                    got.delta_coeff == ref.delta_coeff
                    and got.smooth == ref.smooth
                    and got.region == ref.region
                    and got.effective_k0 == ref.effective_k0
                )
                mismatches += not same
                phase_ok &= got.phase == 1.0
                count += 1
    return float(mismatches), phase_ok, {"points": count, "phase_identically_one": phase_ok}


def _proper_time(rng, tol):
    k = PhysicalConstants(e=0.6, k0=1.0)
    spec = CircularPolarized(0.8, 1.5, 0.0)

    def sample(region):
        while True:
            p_in = SpacetimePoint(0.0, 0.0, 0.0, rng.uniform(-0.5, 0.5))
            t = rng.uniform(0.5, 3.0)
            r = t * (rng.uniform(0.2, 0.8) if region is Region.TIMELIKE else rng.uniform(1.3, 3.0))
            th = rng.uniform(0.0, math.pi)
            ph = rng.uniform(0.0, 2 * math.pi)
            d = SpacetimePoint(
                t, r * math.sin(th) * math.cos(ph), r * math.sin(th) * math.sin(ph), r * math.cos(th)
            )
            p_out = SpacetimePoint(d.t, d.x1, d.x2, d.z + p_in.z)
            cls = classify(d, k)
            if cls.region is region:
                xi_out, _ = to_lightcone(p_out, k)
                xi_in, _ = to_lightcone(p_in, k)
                return cls, average_over(spec, xi_in, xi_out, k).k0_eff

    def structures(cls, k0e):
        return delta_s_free(cls, k0e).smooth, delta_1_free(cls, k0e).smooth

    ref_cls, ref_k = sample(Region.TIMELIKE)
    ref = quadrature.proper_time_numeric(ref_k, ref_cls.lambda_sq).value
    s_ref, d_ref = structures(ref_cls, ref_k)
    c_re, c_im = ref.real / s_ref, ref.imag / d_ref
    errs = []
    for region in [Region.TIMELIKE] * 4 + [Region.SPACELIKE] * 4:
        cls, k0e = sample(region)
        val = quadrature.proper_time_numeric(k0e, cls.lambda_sq).value
        s, d = structures(cls, k0e)
        model = complex(c_re * s, c_im * d)
        errs.append(abs(val - model) / abs(model))
    return max(errs), True, {
        "real_constant_over_pi2": c_re / math.pi**2,
        "imag_constant_over_pi2": c_im / math.pi**2,
    }


SUITES = [
    Suite("sonin", "Sonin discontinuous integral", 1e-6, 1, _sonin),
    Suite("psi_plus", "in-cone Hankel integral vs closed form", 1e-5, 2, _psi_plus),
    Suite("psi_minus", "out-of-cone MacDonald integral vs closed form", 1e-6, 3, _psi_minus),
    Suite("macdonald", "MacDonald superposition", 1e-8, 4, _macdonald),
    Suite("order_raise", "Bessel order-raising identity", 1e-6, 5, _order_raise),
    Suite("riemann", "Riemann function property", 1e-5, 6, _riemann),
    Suite("goursat", "characteristic Goursat solver order, |p - 2|", 0.2, 7, _goursat),
    Suite("effective_mass", "field-averaged effective mass", 1e-10, 8, _effective_mass),
    Suite("free_reduction", "zero-field reduction (mismatch count)", 0.0, 9, _free_reduction),
    Suite("proper_time", "proper-time integral vs causal structures", 1e-3, 10, _proper_time),
]
SUITE_NAMES = [s.name for s in SUITES]


def run_suite(name: str, seed: int = 0, required_tol: float | None = None) -> SuiteResult:
    suite = next((s for s in SUITES if s.name == name), None)
    if suite is None:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    tol = suite.required_tol if required_tol is None else float(required_tol)
    rng = np.random.default_rng([seed, suite.offset])
    achieved, extra_ok, details = suite.run(rng, tol)
    passed = bool(extra_ok and math.isfinite(achieved) and achieved <= tol)
    return SuiteResult(suite.name, suite.paper_ref, tol, float(achieved), passed, details)


def run_all(
    names=None, seed: int = 0, tolerances: dict | float | None = None
) -> list[SuiteResult]:
    """Run the named suites (all by default) in their canonical order."""
    names = SUITE_NAMES if not names else list(names)
    for n in names:
        if n not in SUITE_NAMES:
            raise KeyError(f"unknown suite {n!r}; choose from {', '.join(SUITE_NAMES)}")
    out = []
    for n in [s for s in SUITE_NAMES if s in names]:
        if isinstance(tolerances, dict):
            tol = tolerances.get(n)
        else:
            tol = tolerances
        out.append(run_suite(n, seed, tol))
    return out


def report(results: list[SuiteResult]) -> dict:
    return {
        "version": REPORT_VERSION,
        "suites": [r.to_dict() for r in results],
        "all_pass": all(r.passed for r in results),
    }
