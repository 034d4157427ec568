"""Minkowski intervals, light-cone coordinates and region tags."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

#: Relative width of the band around the light cone that is tagged lightlike.
CONE_REL_TOL = 1e-9


@dataclass(frozen=True)
class PhysicalConstants:
    """Unit system plus particle data.

    ``k0`` is the inverse Compton length ``mu c / hbar``; ``e`` may be zero or
    of either sign.
    """

    c: float = 1.0
    hbar: float = 1.0
    e: float = 1.0
    k0: float = 1.0

    def __post_init__(self):
        for name in ("c", "hbar"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0")
        if not self.k0 >= 0:
            raise ValueError("k0 must be >= 0")
        if not math.isfinite(self.e):
            raise ValueError("e must be finite")

    @property
    def coupling(self) -> float:
        """``e / (hbar c)``, the factor in front of the potential."""
        return self.e / (self.hbar * self.c)

    @classmethod
    def natural(cls, e: float = 1.0, k0: float = 1.0) -> "PhysicalConstants":
        return cls(c=1.0, hbar=1.0, e=e, k0=k0)


@dataclass(frozen=True)
class SpacetimePoint:
    t: float = 0.0
    x1: float = 0.0
    x2: float = 0.0
    z: float = 0.0

    @property
    def x_perp(self) -> float:
        return math.hypot(self.x1, self.x2)

    def __sub__(self, other: "SpacetimePoint") -> "SpacetimePoint":
        return SpacetimePoint(
            self.t - other.t, self.x1 - other.x1, self.x2 - other.x2, self.z - other.z
        )


class Region(enum.Enum):
    TIMELIKE = "timelike"
    SPACELIKE = "spacelike"
    LIGHTLIKE = "lightlike"


@dataclass(frozen=True)
class IntervalClassification:
    """Signed intervals of an event relative to the origin.

    ``lambda_sq`` is the 4-interval ``c^2 t^2 - r^2`` and ``tau_sq`` the
    2-interval ``c^2 t^2 - z^2``.
    """

    lambda_sq: float
    tau_sq: float
    region: Region

    @property
    def lam(self) -> float:
        """Timelike interval; only defined inside the cone."""
        if self.region is not Region.TIMELIKE:
            raise ValueError("lambda is reported only for timelike intervals")
        return math.sqrt(self.lambda_sq)

    @property
    def lam_tilde(self) -> float:
        """Spacelike interval; only defined outside the cone."""
        if self.region is not Region.SPACELIKE:
            raise ValueError("lambda-tilde is reported only for spacelike intervals")
        return math.sqrt(-self.lambda_sq)


def to_lightcone(p: SpacetimePoint, k: PhysicalConstants) -> tuple[float, float]:
    """Characteristic coordinates ``(xi, eta) = (ct - z, ct + z)``."""
    ct = k.c * p.t
    return ct - p.z, ct + p.z


def from_lightcone(xi: float, eta: float, k: PhysicalConstants) -> tuple[float, float]:
    """Inverse of :func:`to_lightcone` in the ``(t, z)`` plane."""
    return 0.5 * (xi + eta) / k.c, 0.5 * (eta - xi)


def region_of(lambda_sq: float, tol_cone: float) -> Region:
    if lambda_sq > tol_cone:
        return Region.TIMELIKE
    if lambda_sq < -tol_cone:
        return Region.SPACELIKE
    return Region.LIGHTLIKE


def default_cone_tol(ct: float, r: float) -> float:
    scale = max(abs(ct), abs(r))
    return CONE_REL_TOL * scale * scale


def classify(
    p: SpacetimePoint, k: PhysicalConstants, tol_cone: float | None = None
) -> IntervalClassification:
    """Interval classification of ``p`` relative to the origin.

    ``tol_cone`` defaults to ``1e-9 * max(|ct|, r)**2``. It only governs the
    region tag; delta-function coefficients are reported separately.
    """
    ct = k.c * p.t
    rho_sq = p.x1 * p.x1 + p.x2 * p.x2
    lambda_sq = ct * ct - rho_sq - p.z * p.z
    tau_sq = ct * ct - p.z * p.z
    if tol_cone is None:
        tol_cone = default_cone_tol(ct, math.sqrt(rho_sq + p.z * p.z))
    elif tol_cone < 0:
        raise ValueError("tol_cone must be >= 0")
    return IntervalClassification(lambda_sq, tau_sq, region_of(lambda_sq, tol_cone))


def classify_2d(tau: float, x_perp: float, tol_cone: float | None = None) -> IntervalClassification:
    """Classification from the 2-interval ``tau`` and transverse distance."""
    lambda_sq = tau * tau - x_perp * x_perp
    if tol_cone is None:
        tol_cone = default_cone_tol(tau, x_perp)
    return IntervalClassification(lambda_sq, tau * tau, region_of(lambda_sq, tol_cone))
