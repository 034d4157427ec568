"""Characteristic-grid solver for ``4 Phi_{xi eta} + K^2(xi) Phi = 0``.

Data ``Phi = 1`` is imposed on both characteristics ``xi = 0`` and
``eta = 0``; this is the trace of ``J0(sqrt(eta f(xi)))``. Each cell is
updated from the integral form of the equation

    Phi(P) = Phi(W) + Phi(S) - Phi(SW) - 1/4 * iint K^2 Phi

with the cell integral taken by the four-corner trapezoidal rule; ``Phi(P)``
enters linearly and is solved for directly. The scheme is second order.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import special_functions as sf
from .quadrature import _adaptive_segments

INSTABILITY_THRESHOLD = 1e6


class GoursatInstabilityWarning(RuntimeWarning):
    pass


def _as_coefficient(ksq) -> Callable:
    if callable(ksq):
        return ksq
    value = float(ksq)
    return lambda xi: np.full(np.shape(xi), value)


@dataclass
class GoursatGrid:
    """Grid solution; ``values[i, j]`` sits at ``(i * h_xi, j * h_eta)``."""

    xi_max: float
    eta_max: float
    n_xi: int
    n_eta: int
    values: np.ndarray
    analytic: np.ndarray | None = None
    max_abs_error: float | None = None
    unstable: bool = False

    @property
    def h_xi(self) -> float:
        return self.xi_max / self.n_xi

    @property
    def h_eta(self) -> float:
        return self.eta_max / self.n_eta

    @property
    def xi(self) -> np.ndarray:
        return np.linspace(0.0, self.xi_max, self.n_xi + 1)

    @property
    def eta(self) -> np.ndarray:
        return np.linspace(0.0, self.eta_max, self.n_eta + 1)


def riemann_solution(f_values, eta) -> np.ndarray:
    """``J0(sqrt(eta f))`` on an outer-product grid, ``I0`` where ``eta f < 0``."""
    arg = np.multiply.outer(np.asarray(f_values, dtype=float), np.asarray(eta, dtype=float))
    out = np.empty_like(arg)
    pos = arg >= 0
    out[pos] = sf.j0(np.sqrt(arg[pos]))
    if not pos.all():
        out[~pos] = sf.i0(np.sqrt(-arg[~pos]))
    return out


def solve_goursat(
    ksq,
    xi_max: float,
    eta_max: float,
    n_xi: int,
    n_eta: int,
    f: Callable | None = None,
) -> GoursatGrid:
    """Solve on ``[0, xi_max] x [0, eta_max]`` with ``n_xi x n_eta`` cells.

    ``ksq`` is a vectorised callable of ``xi`` or a constant. If the
    antiderivative ``f`` is given, the analytic solution and the maximum
    error are attached to the grid.
    """
    if n_xi < 2 or n_eta < 2:
        raise ValueError("need at least 2 cells in each direction")
    if not (xi_max > 0 and eta_max > 0):
        raise ValueError("grid extents must be positive")
    ksq = _as_coefficient(ksq)
    xi = np.linspace(0.0, xi_max, n_xi + 1)
    kv = np.asarray(ksq(xi), dtype=float)
    r = (xi_max / n_xi) * (eta_max / n_eta) / 16.0
    den = 1.0 + r * kv
    if np.any(den == 0):
        raise ValueError("cell equation is singular for this step size")
    phi = np.ones((n_xi + 1, n_eta + 1))
    # sweep anti-diagonals d = i + j; cell (i, j) needs (i-1, j), (i, j-1), (i-1, j-1)
    for d in range(2, n_xi + n_eta + 1):
        i = np.arange(max(1, d - n_eta), min(n_xi, d - 1) + 1)
        j = d - i
        kw = kv[i - 1]
        phi[i, j] = (
            phi[i - 1, j] * (1.0 - r * kw)
            + phi[i, j - 1] * (1.0 - r * kv[i])
            - phi[i - 1, j - 1] * (1.0 + r * kw)
        ) / den[i]
    unstable = bool(np.any(~np.isfinite(phi)) or np.max(np.abs(phi)) > INSTABILITY_THRESHOLD)
    if unstable:
        warnings.warn(
            "Goursat solution exceeds 1e6: growing regime (K^2 < 0)",
            GoursatInstabilityWarning,
            stacklevel=2,
        )
    grid = GoursatGrid(xi_max, eta_max, n_xi, n_eta, phi, unstable=unstable)
    if f is not None:
        grid.analytic = riemann_solution(f(xi), grid.eta)
        grid.max_abs_error = float(np.max(np.abs(phi - grid.analytic)))
    return grid


def riemann_residual(ksq, f: Callable, xi: float, eta: float, h: float) -> float:
    """``|4 D_xi_eta u + K^2(xi) u|`` for ``u = J0(sqrt(eta f(xi)))``.

    ``D_xi_eta`` is the four-point cross difference with step ``h``.
    """
    ksq = _as_coefficient(ksq)

    def u(x, e):
        arg = e * f(x)
        return sf.j0(math.sqrt(arg)) if arg >= 0 else sf.i0(math.sqrt(-arg))

    cross = (u(xi + h, eta + h) - u(xi + h, eta - h) - u(xi - h, eta + h) + u(xi - h, eta - h)) / (
        4.0 * h * h
    )
    k_here = float(np.asarray(ksq(np.array([xi])))[0])
    return abs(4.0 * cross + k_here * u(xi, eta))


@dataclass
class ConvergenceStudy:
    steps: list = field(default_factory=list)
    errors: list = field(default_factory=list)
    unstable: bool = False

    @property
    def orders(self) -> list:
        out = []
        for coarse, fine in zip(self.errors, self.errors[1:]):
            if coarse > 0 and fine > 0:
                out.append(math.log2(coarse / fine))
            else:
                out.append(math.nan)
        return out

    def rows(self):
        return list(zip(self.steps, self.errors))


def antiderivative(ksq, tol: float = 1e-13) -> Callable:
    """``f(xi) = int_0^xi K^2`` by cumulative Gauss-Kronrod over the sample points."""
    if not callable(ksq):
        value = float(ksq)
        return lambda xi: value * np.asarray(xi, dtype=float)

    def f(xi):
        xi = np.asarray(xi, dtype=float)
        flat = np.atleast_1d(xi).ravel()
        order = np.argsort(flat)
        edges = np.concatenate([[0.0], flat[order]])
        seg, _, _, ok = _adaptive_segments(ksq, edges, tol)
        if not ok:
            raise RuntimeError("antiderivative of K^2 did not converge")
        out = np.empty_like(flat)
        out[order] = np.cumsum(seg)
        return out.reshape(xi.shape) if xi.ndim else float(out[0])

    return f


def convergence_study(
    ksq,
    xi_max: float,
    eta_max: float,
    levels: int,
    f: Callable | None = None,
    n0: int = 32,
) -> ConvergenceStudy:
    """Errors against the analytic solution on ``levels + 1`` grids halving ``h``.

    Without ``f`` the antiderivative of ``ksq`` is computed numerically.
    """
    if f is None:
        f = antiderivative(ksq)
    study = ConvergenceStudy()
    for level in range(levels + 1):
        n = n0 * 2**level
        grid = solve_goursat(ksq, xi_max, eta_max, n, n, f=f)
        study.steps.append(max(grid.h_xi, grid.h_eta))
        study.errors.append(grid.max_abs_error)
        study.unstable |= grid.unstable
    return study
