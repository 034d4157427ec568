"""Numerical oracles for the closed-form propagator results.

Everything here integrates the original integral representations directly:
Gauss-Kronrod adaptive quadrature for smooth or exponentially decaying
integrands, zero-interval partial sums with iterated averaging for the
conditionally convergent Bessel-product integrals, and an epsilon-regularised
proper-time integral extrapolated to ``epsilon -> 0``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import special_functions as sf

# Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
_XGK = np.array(
    [
        0.991455371120812639206854697526329,
        0.949107912342758524526189684047851,
        0.864864423359769072789712788640926,
        0.741531185599394439863864773280788,
        0.586087235467691130294144845693013,
        0.405845151377397166906606412076961,
        0.207784955007898467600689403773245,
        0.000000000000000000000000000000000,
    ]
)
_WGK = np.array(
    [
        0.022935322010529224963732008058970,
        0.063092092629978553290700663189204,
        0.104790010322250183839876322541518,
        0.140653259715525918745189590510238,
        0.169004726639267902826583426598550,
        0.190350578064785409913256402421014,
        0.204432940075298892414161999234649,
        0.209482141084727828012999174891714,
    ]
)
_WG = np.array(
    [
        0.129484966168869693270611432679082,
        0.279705391489276667901467771423780,
        0.381830050505118944950369775488975,
        0.417959183673469387755102040816327,
    ]
)
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])  # 15 ascending nodes
_WK = np.concatenate([_WGK[:-1], _WGK[::-1]])
_WG15 = np.zeros(15)
_WG15[[1, 3, 5, 7, 9, 11, 13]] = np.concatenate([_WG[:3], [_WG[3]], _WG[2::-1]])
_ROUNDOFF = 50.0 * np.finfo(float).eps


@dataclass
class QuadratureResult:
    value: complex | float
    abs_error_estimate: float
    evaluations: int
    converged: bool

    def __float__(self) -> float:
        return float(np.real(self.value))


class QuadratureWarning(RuntimeWarning):
    pass


def _gk15(f, lo: np.ndarray, hi: np.ndarray):
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    x = mid[:, None] + half[:, None] * _NODES[None, :]
    fx = np.asarray(f(x.ravel())).reshape(x.shape)
    kron = half * (fx @ _WK)
    gauss = half * (fx @ _WG15)
    resabs = np.abs(half) * (np.abs(fx) @ _WK)
    return kron, np.abs(kron - gauss), resabs


def _adaptive_segments(f, edges, tol, rtol=0.0, max_rounds=60, max_intervals=200_000):
    """Integrate ``f`` over consecutive ``edges``; per-segment values.

    Intervals are bisected in vectorised rounds until the summed error
    estimate meets ``max(tol, rtol * |total|)``, floored at the round-off
    level of ``int |f|``.
    """
    edges = np.asarray(edges, dtype=float)
    lo, hi = edges[:-1].copy(), edges[1:].copy()
    owner = np.arange(lo.size)
    nseg = lo.size
    done_val = None
    done_err = 0.0
    done_abs = 0.0
    evals = 0
    for _ in range(max_rounds):
        abs_total = done_abs
        val, err, resabs = _gk15(f, lo, hi)
        evals += 15 * lo.size
        roundoff = err <= _ROUNDOFF * resabs
        if done_val is None:
            done_val = np.zeros(nseg, dtype=val.dtype)
        elif np.iscomplexobj(val) and not np.iscomplexobj(done_val):
            done_val = done_val.astype(complex)
        total = done_val.sum() + val.sum()
        abs_total += float(resabs.sum())
        # never ask for less than the round-off floor of the whole integral
        target = max(tol, rtol * abs(total), _ROUNDOFF * abs_total)
        if done_err + err.sum() <= target:
            np.add.at(done_val, owner, val)
            return done_val, done_err + float(err.sum()), evals, True
        # accept intervals already below their length share of the budget
        share = (target - done_err) * (hi - lo) / max(float(np.sum(hi - lo)), 1e-300)
        keep = (err <= 0.5 * np.maximum(share, 0.0)) | roundoff
        if keep.all() and roundoff.any():
            # remaining error is at the round-off floor
            np.add.at(done_val, owner, val)
            return done_val, done_err + float(err[~roundoff].sum()), evals, True
        if not np.any(~keep):
            keep[np.argmax(err)] = False
        np.add.at(done_val, owner[keep], val[keep])
        done_err += float(err[keep].sum())
        done_abs += float(resabs[keep].sum())
        split = ~keep
        if 2 * np.count_nonzero(split) + lo.size > max_intervals:
            np.add.at(done_val, owner[split], val[split])
            return done_val, done_err + float(err[split].sum()), evals, False
        mid = 0.5 * (lo[split] + hi[split])
        lo = np.concatenate([lo[split], mid])
        hi = np.concatenate([mid, hi[split]])
        owner = np.concatenate([owner[split], owner[split]])
    val, err, _ = _gk15(f, lo, hi)
    evals += 15 * lo.size
    np.add.at(done_val, owner, val)
    return done_val, done_err + float(err.sum()), evals, False


def integrate_adaptive(
    f: Callable,
    a: float,
    b: float,
    tol: float = 1e-10,
    *,
    rtol: float = 0.0,
    points=None,
    scale: float = 1.0,
    max_rounds: int = 60,
) -> QuadratureResult:
    """Adaptive Gauss-Kronrod (7/15) quadrature of a vectorised ``f``.

    ``b`` may be ``inf``; the half line is then mapped onto ``[0, 1)`` with
    ``x = a + scale * u / (1 - u)``. ``points`` are extra breakpoints inside
    ``(a, b)``. ``f`` must accept a 1-D array and may return complex values.
    """
    if not (math.isfinite(a) and a < b):
        raise ValueError("integrate_adaptive requires finite a < b")
    if math.isinf(b):
        g = f

        def f(u, g=g):
            w = 1.0 - u
            return g(a + scale * u / w) * (scale / (w * w))

        lo_, hi_ = 0.0, 1.0
        if points is not None:
            p = (np.asarray(points, dtype=float) - a) / scale
            points = p / (1.0 + p)
    else:
        lo_, hi_ = a, b
    edges = [lo_, hi_]
    if points is not None:
        inner = sorted(float(p) for p in np.atleast_1d(points) if lo_ < p < hi_)
        edges = [lo_, *inner, hi_]
    vals, err, evals, ok = _adaptive_segments(f, edges, tol, rtol, max_rounds)
    value = vals.sum()
    if not np.iscomplexobj(vals):
        value = float(value)
    return QuadratureResult(value, err, evals, ok)


def integrate_bessel_tail(
    f: Callable,
    a: float,
    kernel_zeros,
    tol: float = 1e-10,
    *,
    max_intervals: int = 200,
) -> QuadratureResult:
    """Semi-infinite oscillatory integral by zero-interval partial sums.

    ``f`` is integrated over ``[a, z_1], [z_1, z_2], ...`` where ``z_j`` are
    the ascending ``kernel_zeros`` beyond ``a``; the partial sums are then
    accelerated by repeated pairwise averaging (the Euler transform of an
    alternating tail). The level whose estimate moved least is returned.
    """
    zeros = np.asarray(kernel_zeros, dtype=float)
    zeros = zeros[zeros > a][:max_intervals]
    if zeros.size < 4:
        raise ValueError("need at least 4 kernel zeros beyond the lower limit")
    edges = np.concatenate([[a], zeros])
    segs, qerr, evals, qok = _adaptive_segments(f, edges, 1e-2 * tol)
    partial = np.cumsum(segs)
    value, accel_err = _iterated_average(partial)
    # stability against dropping the last two intervals
    value_short, _ = _iterated_average(partial[:-2])
    err = max(accel_err, abs(value - value_short)) + qerr
    converged = qok and err <= tol
    return QuadratureResult(value, err, evals, converged)


def _iterated_average(partial: np.ndarray):
    seq = np.asarray(partial, dtype=float)
    prev = seq[-1]
    best, best_diff = prev, math.inf
    while seq.size > 1:
        seq = 0.5 * (seq[:-1] + seq[1:])
        est = seq[-1]
        diff = abs(est - prev)
        if diff < best_diff:
            best, best_diff = est, diff
        prev = est
    return float(best), float(best_diff)


def iterated_average_levels(partial) -> np.ndarray:
    """Estimate at every averaging level (level 0 is the raw last partial sum)."""
    seq = np.asarray(partial, dtype=float)
    out = [seq[-1]]
    while seq.size > 1:
        seq = 0.5 * (seq[:-1] + seq[1:])
        out.append(seq[-1])
    return np.array(out)


def _kernel_zeros(order: int, freq: float, shift: float, count: int) -> np.ndarray:
    """Zeros in ``k`` of ``J_order(freq * sqrt(k**2 + shift**2))``."""
    skip = int(freq * shift / math.pi) + 2
    z = sf.bessel_zeros(order, count + skip) / freq
    z = z[z > shift]
    return np.sqrt(z * z - shift * shift)[:count]


def sonin_rhs(tau: float, x_perp: float, k0: float, m: int = 1, n: int = 0) -> float:
    """Closed form of the Sonin discontinuous integral.

    ``theta(tau - x) x^n / tau^m (lam / k0)^(m-n-1) J_{m-n-1}(k0 lam)``; the
    power is of ``lam / k0`` (the two forms coincide for ``m = n + 1``).
    """
    if tau <= x_perp:
        return 0.0
    lam = math.sqrt(tau * tau - x_perp * x_perp)
    p = m - n - 1
    if p == 0:
        radial = sf.jn(0, k0 * lam)
    elif k0 == 0:
        radial = lam ** (2 * p) / (2**p * math.factorial(p))
    else:
        radial = (lam / k0) ** p * sf.jn(p, k0 * lam)
    return x_perp**n / tau**m * radial


def sonin_numeric(
    tau: float,
    x_perp: float,
    k0: float,
    m: int = 1,
    n: int = 0,
    tol: float = 1e-10,
    *,
    max_intervals: int | None = None,
) -> QuadratureResult:
    """Integral of ``k^(n+1) J_m(tau q) q^-m J_n(k x_perp)``, ``q = sqrt(k^2+k0^2)``.

    Partial sums are taken at the zeros of whichever Bessel factor
    oscillates faster. Both beat components of the tail then lose a factor
    ``sin(pi r / 2)`` per averaging level, ``r = min(tau, x_perp)/max(...)``,
    so by default the number of intervals grows like ``(1 - r)**-2`` as the
    point approaches the cone.
    """
    if not (m > n >= 0):
        raise ValueError("sonin_numeric requires m > n >= 0")
    if not (tau > 0 and x_perp > 0 and k0 >= 0):
        raise ValueError("sonin_numeric requires tau, x_perp > 0 and k0 >= 0")

    def integrand(k):
        q = np.sqrt(k * k + k0 * k0)
        return k ** (n + 1) * sf.jn(m, tau * q) / q**m * sf.jn(n, k * x_perp)

    if max_intervals is None:
        r = min(tau, x_perp) / max(tau, x_perp)
        max_intervals = int(min(max(20.0 / (1.0 - r) ** 2, 200), 20000))
    if tau >= x_perp:
        zeros = _kernel_zeros(m, tau, k0, max_intervals + 1)
    else:
        zeros = _kernel_zeros(n, x_perp, 0.0, max_intervals + 1)
    return integrate_bessel_tail(integrand, 0.0, zeros, tol, max_intervals=max_intervals)


def psi_plus_numeric(
    tau: float, x_perp: float, k0: float, tol: float = 1e-12, *, max_intervals: int | None = None
) -> QuadratureResult:
    """Smooth part of the in-cone fundamental solution from its Hankel integral.

    The order-0 kernel is raised to order 1 by writing
    ``J0(tau q) = (1/tau) d/dtau [tau J1(tau q)/q]``; the order-1 Sonin
    integral is evaluated numerically at ``tau +- h`` and differentiated by
    a central difference with ``h = 1e-4 tau``.
    """
    if not tau > 0:
        raise ValueError("psi_plus_numeric requires tau > 0")
    h = 1e-4 * tau
    if abs(tau - x_perp) < 10.0 * h:
        warnings.warn(
            "psi_plus_numeric evaluated within 10 finite-difference steps of the cone",
            QuadratureWarning,
            stacklevel=2,
        )
    up = sonin_numeric(tau + h, x_perp, k0, 1, 0, tol, max_intervals=max_intervals)
    down = sonin_numeric(tau - h, x_perp, k0, 1, 0, tol, max_intervals=max_intervals)
    scale = 1.0 / (2.0 * math.pi * tau * 2.0 * h)
    value = scale * ((tau + h) * up.value - (tau - h) * down.value)
    err = scale * ((tau + h) * up.abs_error_estimate + (tau - h) * down.abs_error_estimate)
    return QuadratureResult(
        value, err, up.evaluations + down.evaluations, up.converged and down.converged
    )


def psi_minus_numeric(
    lam_tilde: float, x_perp: float, k0: float, tol: float = 1e-12
) -> QuadratureResult:
    """Outside-cone solution from its MacDonald-superposition integral.

    ``lam_tilde**2 = x_perp**2 + (z**2 - c**2 t**2)``. The substitution
    ``u**2 = k**2 - k0**2`` removes the branch point at ``k = k0``::

        (1/2pi) int_0^inf J0(sqrt(s) u) K0(x_perp sqrt(u^2 + k0^2)) u du
    """
    if not lam_tilde > 0:
        raise ValueError("psi_minus_numeric requires lam_tilde > 0")
    if not 0 < x_perp <= lam_tilde:
        raise ValueError("psi_minus_numeric requires 0 < x_perp <= lam_tilde")
    root_s = math.sqrt(max(lam_tilde * lam_tilde - x_perp * x_perp, 0.0))

    def integrand(u):
        return sf.j0(root_s * u) * sf.k0(x_perp * np.sqrt(u * u + k0 * k0)) * u

    res = integrate_adaptive(
        integrand, 0.0, math.inf, 1e-300, rtol=tol, scale=1.0 / x_perp
    )
    res.value /= 2.0 * math.pi
    res.abs_error_estimate /= 2.0 * math.pi
    return res


def macdonald_superposition(x_perp: float, k0: float, tol: float = 1e-12) -> QuadratureResult:
    """``int_{k0}^inf K0(k x_perp) k dk``; closed form ``k0 K1(k0 x_perp) / x_perp``."""
    if not (x_perp > 0 and k0 >= 0):
        raise ValueError("macdonald_superposition requires x_perp > 0, k0 >= 0")

    def integrand(k):
        return sf.k0(k * x_perp) * k

    return integrate_adaptive(integrand, k0, math.inf, 1e-300, rtol=tol, scale=1.0 / x_perp)


# --------------------------------------------------------------------------
# Proper-time integral


def _regularised_proper_time(a: float, sigma: float, eps: float, tol: float):
    """``int_0^inf exp(-i a(1-i eps)/alpha - i (sigma - i eps|sigma|) alpha) d alpha``.

    Split at ``rho = sqrt(a/|sigma|)``; below ``rho`` the variable ``u = 1/alpha``
    turns the accumulating oscillation into a uniform one.
    """
    abs_sigma = abs(sigma)
    pa = (1j + eps) * a
    ps = 1j * sigma + eps * abs_sigma
    cut = 40.0 / eps
    evals = 0
    err = 0.0
    ok = True
    total = 0.0 + 0.0j
    if a > 0:
        rho = math.sqrt(a / abs_sigma)

        def near(u):
            return np.exp(-pa * u - ps / u) / (u * u)

        u0 = 1.0 / rho
        u1 = u0 + cut / a
        nseg = max(int((u1 - u0) * a / (2.0 * math.pi)) + 1, 4)
        vals, e, n, c = _adaptive_segments(near, np.linspace(u0, u1, nseg + 1), tol * rho)
        total += vals.sum()
        err += e
        evals += n
        ok &= c
    else:
        rho = 0.0

    def far(alpha):
        return np.exp(-pa / alpha - ps * alpha)

    a0 = rho
    a1 = rho + cut / abs_sigma
    nseg = max(int((a1 - a0) * abs_sigma / (2.0 * math.pi)) + 1, 4)
    scale = max(rho, 1.0 / abs_sigma)
    vals, e, n, c = _adaptive_segments(far, np.linspace(a0, a1, nseg + 1), tol * scale)
    total += vals.sum()
    return total, err + e, evals + n, ok and c


def proper_time_numeric(
    k0_eff: float,
    lambda_sq: float,
    epsilon: float = 1e-2,
    tol: float = 1e-10,
    *,
    levels: int = 4,
) -> QuadratureResult:
    """Proper-time integral ``int_0^inf exp(-i k0^2/(4 alpha) - i sigma alpha) d alpha``.

    ``sigma`` is the signed interval ``c^2 t^2 - r^2`` (positive inside the
    cone). The oscillatory integral is damped by ``k0^2 -> k0^2 (1 - i eps)``
    and ``sigma -> sigma - i eps |sigma|``, evaluated for
    ``eps = epsilon, epsilon/2, ...`` and Richardson-extrapolated to
    ``eps -> 0`` (the damped integral is analytic in ``eps``).
    """
    if not 0 < epsilon <= 0.1:
        raise ValueError("epsilon must lie in (0, 0.1]")
    if lambda_sq == 0 or not math.isfinite(lambda_sq):
        raise ValueError("lambda_sq must be finite and non-zero")
    if k0_eff < 0:
        raise ValueError("k0_eff must be >= 0")
    a = 0.25 * k0_eff * k0_eff
    eps = [epsilon / 2**j for j in range(levels)]
    raw = []
    total_err = 0.0
    evals = 0
    ok = True
    for e in eps:
        v, err, n, c = _regularised_proper_time(a, lambda_sq, e, tol)
        raw.append(v)
        total_err += err
        evals += n
        ok &= c
    table = [raw]
    for m in range(1, levels):
        prev = table[-1]
        factor = 2.0**m - 1.0
        table.append([prev[j] + (prev[j] - prev[j - 1]) / factor for j in range(1, len(prev))])
    value = table[-1][-1]
    extrap_err = abs(value - table[-2][-1]) if levels > 1 else abs(raw[0])
    diffs = [abs(raw[j] - raw[j - 1]) for j in range(1, levels)]
    contracting = all(d2 < d1 for d1, d2 in zip(diffs, diffs[1:]))
    if not contracting:
        warnings.warn("proper-time extrapolation is not contracting", QuadratureWarning, stacklevel=2)
    return QuadratureResult(complex(value), extrap_err + total_err, evals, ok and contracting)


def proper_time_closed_form(k0_eff: float, lambda_sq: float) -> complex:
    """Analytic value of the proper-time integral (limit ``eps -> 0``).

    Inside the cone ``-(pi k0 / 2 lam) (J1 - i Y1)(k0 lam)``; outside
    ``i (k0 / lam~) K1(k0 lam~)``.
    """
    if lambda_sq > 0:
        lam = math.sqrt(lambda_sq)
        x = k0_eff * lam
        return -(math.pi / 2.0) * complex(
            k0_eff * sf.j1_ratio(x) * k0_eff, -sf.y1_scaled(x) / lambda_sq
        )
    lam_t = math.sqrt(-lambda_sq)
    return 1j * sf.k1_scaled(k0_eff * lam_t) / (-lambda_sq)
