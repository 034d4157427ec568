"""Plane-wave (Volkov) potentials ``A = (A1(xi), A2(xi), 0, 0)`` and their averages.

The square of the potential is taken as the Euclidean transverse square
``A1**2 + A2**2``, which makes the field variance non-negative and the
effective mass grow with the field strength.
"""
from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.interpolate import CubicSpline

from .geometry import PhysicalConstants, SpacetimePoint, to_lightcone
from .quadrature import QuadratureResult, integrate_adaptive

DEFAULT_RTOL = 1e-10
#: Intervals shorter than this fraction of their scale are treated as a point.
DEGENERATE_GAP = 1e-12


class QuadratureError(RuntimeError):
    """An average or antiderivative did not reach the requested tolerance."""

    def __init__(self, message: str, achieved: float):
        super().__init__(f"{message} (achieved error estimate {achieved:.3g})")
        self.achieved = achieved


class InterpolationError(ValueError):
    pass


class PotentialSpec:
    """Base class; subclasses are immutable dataclasses."""

    family = "abstract"

    def evaluate(self, xi):
        raise NotImplementedError

    def moments(self, lo: float, hi: float):
        """``(int A1, int A2, int A1^2 + A2^2)`` over ``[lo, hi]`` in closed form.

        Returns ``None`` when the family has no closed form.
        """
        return None

    def breakpoints(self, lo: float, hi: float):
        return None

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Zero(PotentialSpec):
    family = "zero"

    def evaluate(self, xi):
        z = np.zeros_like(np.asarray(xi, dtype=float))
        return z, z.copy()

    def moments(self, lo, hi):
        return 0.0, 0.0, 0.0

    def to_dict(self):
        return {"family": self.family}


@dataclass(frozen=True)
class Constant(PotentialSpec):
    a1: float = 0.0
    a2: float = 0.0
    family = "constant"

    def evaluate(self, xi):
        shape = np.shape(xi)
        return np.full(shape, float(self.a1)), np.full(shape, float(self.a2))

    def moments(self, lo, hi):
        d = hi - lo
        return self.a1 * d, self.a2 * d, (self.a1**2 + self.a2**2) * d

    def to_dict(self):
        return {"family": self.family, "a1": self.a1, "a2": self.a2}


@dataclass(frozen=True)
class LinearPolarized(PotentialSpec):
    """``A1 = a cos(kappa xi + phase)``, ``A2 = 0``."""

    a: float = 1.0
    kappa: float = 1.0
    phase: float = 0.0
    family = "linear"

    def evaluate(self, xi):
        xi = np.asarray(xi, dtype=float)
        return self.a * np.cos(self.kappa * xi + self.phase), np.zeros_like(xi)

    def moments(self, lo, hi):
        a, k, p = self.a, self.kappa, self.phase
        if k == 0:
            return Constant(a * math.cos(p), 0.0).moments(lo, hi)
        th_hi, th_lo = k * hi + p, k * lo + p
        i1 = a * (np.sin(th_hi) - np.sin(th_lo)) / k
        isq = a * a * (0.5 * (hi - lo) + (np.sin(2 * th_hi) - np.sin(2 * th_lo)) / (4 * k))
        return i1, 0.0 * i1, isq

    def to_dict(self):
        return {"family": self.family, "a": self.a, "kappa": self.kappa, "phase": self.phase}


@dataclass(frozen=True)
class CircularPolarized(PotentialSpec):
    """``A = a (cos(kappa xi + phase), sin(kappa xi + phase))``."""

    a: float = 1.0
    kappa: float = 1.0
    phase: float = 0.0
    family = "circular"

    def evaluate(self, xi):
        theta = self.kappa * np.asarray(xi, dtype=float) + self.phase
        return self.a * np.cos(theta), self.a * np.sin(theta)

    def moments(self, lo, hi):
        a, k, p = self.a, self.kappa, self.phase
        if k == 0:
            return Constant(a * math.cos(p), a * math.sin(p)).moments(lo, hi)
        th_hi, th_lo = k * hi + p, k * lo + p
        i1 = a * (np.sin(th_hi) - np.sin(th_lo)) / k
        i2 = a * (np.cos(th_lo) - np.cos(th_hi)) / k
        return i1, i2, a * a * (hi - lo)

    def to_dict(self):
        return {"family": self.family, "a": self.a, "kappa": self.kappa, "phase": self.phase}


@dataclass(frozen=True)
class PulseEnvelope(PotentialSpec):
    """Gaussian pulse ``A1 = a exp(-xi^2 / 2 width^2) cos(kappa xi)``, ``A2 = 0``."""

    a: float = 1.0
    kappa: float = 1.0
    width: float = 1.0
    family = "pulse"

    def __post_init__(self):
        if not self.width > 0:
            raise ValueError("pulse width must be > 0")

    def evaluate(self, xi):
        xi = np.asarray(xi, dtype=float)
        env = np.exp(-0.5 * (xi / self.width) ** 2)
        return self.a * env * np.cos(self.kappa * xi), np.zeros_like(xi)

    def breakpoints(self, lo, hi):
        w = self.width
        return [p for p in (-4 * w, -w, 0.0, w, 4 * w) if lo < p < hi]

    def to_dict(self):
        return {"family": self.family, "a": self.a, "kappa": self.kappa, "width": self.width}


@dataclass(frozen=True)
class Tabulated(PotentialSpec):
    """Samples ``(xi, A1, A2)`` joined by cubic splines, zero outside the table."""

    samples: tuple = field(default=())
    family = "tabulated"

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=float)
        if arr.ndim != 2 or arr.shape[1] not in (2, 3):
            raise InterpolationError("tabulated samples must be rows of (xi, A1[, A2])")
        if arr.shape[0] < 4:
            raise InterpolationError("cubic interpolation needs at least 4 samples")
        if arr.shape[1] == 2:
            arr = np.column_stack([arr, np.zeros(arr.shape[0])])
        if np.any(np.diff(arr[:, 0]) <= 0):
            raise InterpolationError("tabulated xi must be strictly increasing")
        object.__setattr__(self, "samples", tuple(map(tuple, arr)))
        object.__setattr__(self, "_spline1", CubicSpline(arr[:, 0], arr[:, 1]))
        object.__setattr__(self, "_spline2", CubicSpline(arr[:, 0], arr[:, 2]))
        object.__setattr__(self, "_knots", arr[:, 0].copy())

    def evaluate(self, xi):
        xi = np.asarray(xi, dtype=float)
        inside = (xi >= self._knots[0]) & (xi <= self._knots[-1])
        a1 = np.where(inside, self._spline1(xi), 0.0)
        a2 = np.where(inside, self._spline2(xi), 0.0)
        return a1, a2

    def breakpoints(self, lo, hi):
        return [p for p in self._knots if lo < p < hi]

    def to_dict(self):
        return {"family": self.family, "samples": [list(s) for s in self.samples]}


def eval_potential(spec: PotentialSpec, xi):
    """``(A1, A2)`` at light-cone coordinate(s) ``xi``."""
    a1, a2 = spec.evaluate(xi)
    if np.ndim(xi) == 0:
        return float(a1), float(a2)
    return a1, a2


def load_tabulated_csv(path) -> Tabulated:
    """Read ``xi, A1[, A2]`` columns (header row required)."""
    with Path(path).open(newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if len(rows) < 2:
        raise InterpolationError(f"{path}: no data rows")
    data = [[float(v) for v in row] for row in rows[1:] if row]
    return Tabulated(tuple(map(tuple, data)))


def potential_from_dict(d: dict) -> PotentialSpec:
    family = d.get("family", "zero")
    if family == "zero":
        return Zero()
    if family == "constant":
        return Constant(d.get("a1", 0.0), d.get("a2", 0.0))
    if family == "linear":
        return LinearPolarized(d.get("a", 1.0), d.get("kappa", 1.0), d.get("phase", 0.0))
    if family == "circular":
        return CircularPolarized(d.get("a", 1.0), d.get("kappa", 1.0), d.get("phase", 0.0))
    if family == "pulse":
        return PulseEnvelope(d.get("a", 1.0), d.get("kappa", 1.0), d.get("width", 1.0))
    if family == "tabulated":
        if "csv" in d:
            return load_tabulated_csv(d["csv"])
        return Tabulated(tuple(map(tuple, d["samples"])))
    raise ValueError(f"unknown potential family {family!r}")


# --------------------------------------------------------------------------
# Integrals and averages


def _quad(f, lo, hi, rtol, points) -> QuadratureResult:
    res = integrate_adaptive(f, lo, hi, 1e-14 * max(hi - lo, 1.0), rtol=rtol, points=points)
    if not res.converged:
        raise QuadratureError("potential quadrature did not converge", res.abs_error_estimate)
    return res


def potential_moments(spec: PotentialSpec, lo: float, hi: float, rtol: float = DEFAULT_RTOL):
    """Signed integrals ``(int A1, int A2, int |A|^2)`` from ``lo`` to ``hi``."""
    closed = spec.moments(lo, hi)
    if closed is not None:
        return tuple(float(v) for v in closed)
    if lo == hi:
        return 0.0, 0.0, 0.0
    sign = 1.0
    if hi < lo:
        lo, hi, sign = hi, lo, -1.0
    pts = spec.breakpoints(lo, hi)
    out = []
    for fn in (
        lambda x: spec.evaluate(x)[0],
        lambda x: spec.evaluate(x)[1],
        lambda x: sum(c * c for c in spec.evaluate(x)),
    ):
        out.append(sign * _quad(fn, lo, hi, rtol, pts).value)
    return tuple(out)


@dataclass(frozen=True)
class FieldAverages:
    xi_lo: float
    xi_hi: float
    mean_A1: float
    mean_A2: float
    mean_Asq: float
    variance: float
    k0_eff: float


def effective_k0(variance: float, k: PhysicalConstants) -> float:
    """Field-dressed inverse Compton length ``k0 sqrt(1 + (e/(hbar c k0))^2 var)``."""
    g = k.coupling
    var = max(variance, 0.0)
    if k.k0 > 0:
        return k.k0 * math.sqrt(1.0 + (g / k.k0) ** 2 * var)
    return abs(g) * math.sqrt(var)


def average_over(
    spec: PotentialSpec,
    xi_lo: float,
    xi_hi: float,
    k: PhysicalConstants,
    rtol: float = DEFAULT_RTOL,
) -> FieldAverages:
    """Interval averages of the potential and the resulting effective mass.

    The result does not depend on the order of the endpoints. An interval
    shorter than ``1e-12`` of its scale collapses to the pointwise values,
    which have zero variance.
    """
    lo, hi = min(xi_lo, xi_hi), max(xi_lo, xi_hi)
    scale = max(abs(lo), abs(hi), 1.0)
    if hi - lo <= DEGENERATE_GAP * scale:
        a1, a2 = eval_potential(spec, 0.5 * (lo + hi))
        return FieldAverages(lo, hi, a1, a2, a1 * a1 + a2 * a2, 0.0, k.k0)
    i1, i2, isq = potential_moments(spec, lo, hi, rtol)
    d = hi - lo
    m1, m2, msq = i1 / d, i2 / d, isq / d
    variance = msq - m1 * m1 - m2 * m2
    return FieldAverages(lo, hi, m1, m2, msq, variance, effective_k0(variance, k))


def big_k_squared(spec: PotentialSpec, k1: float, k2: float, xi, k: PhysicalConstants):
    """Variable telegraph coefficient ``K^2(xi)`` at transverse momentum ``(k1, k2)``."""
    g = k.coupling
    a1, a2 = spec.evaluate(xi)
    val = k1 * k1 + k2 * k2 + k.k0 * k.k0 + 2.0 * g * (a1 * k1 + a2 * k2) + g * g * (a1 * a1 + a2 * a2)
    return float(val) if np.ndim(xi) == 0 else val


def f_accumulate(spec: PotentialSpec, k1: float, k2: float, xi, k: PhysicalConstants, rtol: float = DEFAULT_RTOL):
    """Antiderivative ``f(xi) = int_0^xi K^2``; ``f(0) = 0`` exactly.

    ``xi`` may be an array; closed forms are used where the family has them.
    """
    g = k.coupling
    base = k1 * k1 + k2 * k2 + k.k0 * k.k0
    xi_arr = np.asarray(xi, dtype=float)
    closed = spec.moments(0.0, xi_arr)
    if closed is not None:
        i1, i2, isq = (np.asarray(v, dtype=float) for v in closed)
    else:
        flat = np.atleast_1d(xi_arr).ravel()
        mom = np.array([potential_moments(spec, 0.0, float(x), rtol) for x in flat])
        i1, i2, isq = (mom[:, j].reshape(xi_arr.shape) for j in range(3))
    val = base * xi_arr + 2.0 * g * (k1 * i1 + k2 * i2) + g * g * isq
    val = np.where(xi_arr == 0.0, 0.0, val)
    return float(val) if xi_arr.ndim == 0 else val


def phase_factor(
    spec: PotentialSpec,
    p_out: SpacetimePoint,
    p_in: SpacetimePoint,
    k: PhysicalConstants,
    averages: FieldAverages | None = None,
) -> complex:
    """``exp(-i (e/hbar c) dx_perp . <A>)`` with ``<A>`` averaged between the two ``xi``.

    Only transverse displacements enter because ``A`` is transverse.
    """
    if averages is None:
        xi_out, _ = to_lightcone(p_out, k)
        xi_in, _ = to_lightcone(p_in, k)
        averages = average_over(spec, xi_in, xi_out, k)
    g = k.coupling
    arg = g * ((p_out.x1 - p_in.x1) * averages.mean_A1 + (p_out.x2 - p_in.x2) * averages.mean_A2)
    if arg == 0.0:
        return 1.0 + 0.0j
    return cmath.exp(-1j * arg)
