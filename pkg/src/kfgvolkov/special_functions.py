r"""Integer-order cylinder functions for real arguments.

The functions here are written from series, recurrences and asymptotic
expansions rather than wrapped from a platform library, so that the
quadrature oracles in :mod:`kfgvolkov.quadrature` check something
independent.

Methods by range
----------------
``J_n``, ``Y_0``, ``Y_1``
    ``x < 25``: Miller backward recurrence normalised with
    :math:`1 = J_0 + 2\sum_k J_{2k}`; the Neumann series
    :math:`\tfrac{\pi}{2}Y_0 = (\ln\tfrac{x}{2}+\gamma)J_0 - 2\sum_k (-1)^k J_{2k}/k`
    and its derivative give ``Y_0`` and ``Y_1`` from the same sweep.
    ``x >= 25``: Hankel asymptotic expansion (truncation error below
    :math:`e^{-2x}`).
``K_0``, ``K_1``
    ``x <= 2``: ascending series; ``x > 2``: Steed's continued fraction
    (Temme's CF2).
``I_0``, ``I_1``
    ascending series up to ``x = 40``, asymptotic expansion beyond.

All public functions accept scalars or array_like and return ``float`` for
scalar input, ``ndarray`` otherwise.
"""
from __future__ import annotations

import enum
import math

import numpy as np

EULER_GAMMA = 0.57721566490153286061
_ASYMPTOTIC_X = 25.0
_SERIES_X = 1e-3
_SMALL_RATIO_X = 1e-4


class DomainError(ValueError):
    """Argument outside the domain of a cylinder function."""


class CylinderKind(enum.Enum):
    J0 = "J0"
    J1 = "J1"
    N1 = "N1"
    K0 = "K0"
    K1 = "K1"


def _as_array(x, *, positive: bool, name: str) -> tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name}: non-finite argument")
    if positive:
        if np.any(arr <= 0):
            raise DomainError(f"{name}: argument must be > 0")
    elif np.any(arr < 0):
        raise DomainError(f"{name}: argument must be >= 0")
    return arr, scalar


def _out(values: np.ndarray, scalar: bool):
    return float(values[0]) if scalar else values


# --------------------------------------------------------------------------
# Bessel functions of the first and second kind


def _miller(x: np.ndarray, nmax: int):
    """Backward recurrence for ``0 < x < 25``.

    Returns ``(J, Y0, Y1)`` with ``J`` of shape ``(nmax + 1, len(x))``.
    """
    xmax = float(x.max())
    start = int(xmax + 3.0 * math.sqrt(40.0 * max(xmax, nmax, 1.0))) + nmax + 20
    start += start % 2
    m = x.size
    jn = np.zeros((nmax + 1, m))
    j_next = np.zeros(m)  # J_{k+1}
    j_curr = np.full(m, 1e-30)  # J_k, arbitrary scale
    norm = np.zeros(m)  # J0 + 2 sum J_2k
    s0 = np.zeros(m)  # sum_{k>=1} (-1)^k J_2k / k
    s1 = np.zeros(m)  # sum_{k>=1} (-1)^k (J_{2k-1} - J_{2k+1}) / k
    j_odd_above = np.zeros(m)  # J_{2k+1} for the pending even index
    two_over_x = 2.0 / x
    k = start
    while True:
        if k <= nmax:
            jn[k] = j_curr
        if k % 2 == 0:
            if k == 0:
                norm += j_curr
            else:
                half = k // 2
                sign = -1.0 if half % 2 else 1.0
                norm += 2.0 * j_curr
                s0 += sign * j_curr / half
                # (J_{2h-1} - J_{2h+1}) needs J_{2h-1}: defer using the
                # identity J_{2h-1} - J_{2h+1} = (2*2h/x) J_{2h} - 2 J_{2h+1}
                s1 += sign * (two_over_x * k * j_curr - 2.0 * j_odd_above) / half
        else:
            j_odd_above = j_curr
        if k == 0:
            break
        j_prev = k * two_over_x * j_curr - j_next
        j_next, j_curr = j_curr, j_prev
        k -= 1
        big = np.abs(j_curr) > 1e200
        if big.any():
            scale = np.where(big, 1e-200, 1.0)
            # out of place: j_odd_above may alias j_next
            j_curr = j_curr * scale
            j_next = j_next * scale
            j_odd_above = j_odd_above * scale
            norm = norm * scale
            s0 = s0 * scale
            s1 = s1 * scale
            jn[k + 1 :] *= scale
    jn /= norm
    return jn, *_neumann_y(x, jn[0], jn[1], s0 / norm, s1 / norm)


def _series_small(x: np.ndarray, nmax: int):
    """Power series for ``0 < x < 1e-3``, where backward recurrence would overflow."""
    top = nmax + 14
    half = 0.5 * x
    hsq = half * half
    jn = np.zeros((top + 1, x.size))
    lead = np.ones_like(x)  # (x/2)^n / n!
    for n in range(top + 1):
        term = lead.copy()
        acc = lead.copy()
        for k in range(1, 6):
            term = term * (-hsq / (k * (k + n)))
            acc += term
        jn[n] = acc
        lead = lead * half / (n + 1)
    ks = np.arange(1, top // 2)
    sign = np.where(ks % 2, -1.0, 1.0)[:, None]
    s0 = np.sum(sign * jn[2 * ks] / ks[:, None], axis=0)
    s1 = np.sum(sign * (jn[2 * ks - 1] - jn[2 * ks + 1]) / ks[:, None], axis=0)
    return jn[: nmax + 1], *_neumann_y(x, jn[0], jn[1], s0, s1)


def _neumann_y(x, j0, j1, s0, s1):
    # Neumann series for Y0 and Y1 in terms of the J_n sums
    log_term = np.log(x / 2.0) + EULER_GAMMA
    y0 = (2.0 / math.pi) * (log_term * j0 - 2.0 * s0)
    with np.errstate(over="ignore"):  # Y1 -> -inf for subnormal x
        y1 = (2.0 / math.pi) * (-j0 / x + log_term * j1 + s1)
    return y0, y1


def _hankel_pq(nu: int, x: np.ndarray):
    """Hankel asymptotic ``P`` and ``Q`` for order ``nu``, ``x >= 25``."""
    mu = 4.0 * nu * nu
    p = np.ones_like(x)
    q = np.zeros_like(x)
    term = np.ones_like(x)
    for k in range(1, 40):
        term = term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        if k % 2:
            q += term if (k // 2) % 2 == 0 else -term
        else:
            p += -term if (k // 2) % 2 else term
        if np.all(np.abs(term) < 1e-17):
            break
    return p, q


def _hankel_jy(nu: int, x: np.ndarray):
    p, q = _hankel_pq(nu, x)
    chi = x - (0.5 * nu + 0.25) * math.pi
    amp = np.sqrt(2.0 / (math.pi * x))
    c, s = np.cos(chi), np.sin(chi)
    return amp * (p * c - q * s), amp * (p * s + q * c)


def _bessel_jy(x: np.ndarray, nmax: int):
    """J_0..J_nmax (and Y0, Y1) for an array of ``x >= 0``."""
    m = x.size
    jn = np.zeros((nmax + 1, m))
    y0 = np.full(m, np.nan)
    y1 = np.full(m, np.nan)
    zero = x == 0.0
    jn[0, zero] = 1.0
    tiny = (x > 0.0) & (x < _SERIES_X)
    if tiny.any():
        j_t, y0_t, y1_t = _series_small(x[tiny], max(nmax, 1))
        jn[:, tiny] = j_t[: nmax + 1]
        y0[tiny] = y0_t
        y1[tiny] = y1_t
    low = (x >= _SERIES_X) & (x < _ASYMPTOTIC_X)
    if low.any():
        j_low, y0_low, y1_low = _miller(x[low], max(nmax, 1))
        jn[:, low] = j_low[: nmax + 1]
        y0[low] = y0_low
        y1[low] = y1_low
    high = x >= _ASYMPTOTIC_X
    if high.any():
        xh = x[high]
        j0h, y0h = _hankel_jy(0, xh)
        j1h, y1h = _hankel_jy(1, xh)
        jn[0, high] = j0h
        y0[high] = y0h
        y1[high] = y1h
        if nmax >= 1:
            jn[1, high] = j1h
        # upward recurrence is stable for n < x
        for n in range(1, nmax):
            jn[n + 1, high] = (2.0 * n / xh) * jn[n, high] - jn[n - 1, high]
    return jn, y0, y1


def j0(x):
    """Bessel function of the first kind, order 0, for ``x >= 0``."""
    arr, scalar = _as_array(x, positive=False, name="J0")
    return _out(_bessel_jy(arr, 0)[0][0], scalar)


def j1(x):
    """Bessel function of the first kind, order 1, for ``x >= 0``."""
    arr, scalar = _as_array(x, positive=False, name="J1")
    return _out(_bessel_jy(arr, 1)[0][1], scalar)


def jn(n: int, x):
    """Bessel function of the first kind of integer order ``0 <= n <= 20``."""
    if not 0 <= n <= 20:
        raise DomainError(f"J_n: order {n} outside 0..20")
    arr, scalar = _as_array(x, positive=False, name=f"J{n}")
    return _out(_bessel_jy(arr, n)[0][n], scalar)


def y0(x):
    """Bessel function of the second kind (Neumann), order 0, ``x > 0``."""
    arr, scalar = _as_array(x, positive=True, name="Y0")
    return _out(_bessel_jy(arr, 1)[1], scalar)


def y1(x):
    """Bessel function of the second kind (Neumann) ``N_1 = Y_1``, ``x > 0``."""
    arr, scalar = _as_array(x, positive=True, name="N1")
    return _out(_bessel_jy(arr, 1)[2], scalar)


def y1_scaled(x):
    """``x * Y_1(x)`` with the limit ``-2/pi`` at ``x = 0``."""
    arr, scalar = _as_array(x, positive=False, name="x*N1")
    out = np.full(arr.shape, -2.0 / math.pi)
    pos = arr > 0
    if pos.any():
        out[pos] = arr[pos] * _bessel_jy(arr[pos], 1)[2]
    return _out(out, scalar)


def j1_ratio(x):
    """``J_1(x)/x`` with the removable singularity at 0 filled in.

    Below ``x = 1e-4`` the even series ``1/2 - x**2/16 + x**4/384`` is used.
    """
    arr, scalar = _as_array(x, positive=False, name="J1/x")
    out = np.empty_like(arr)
    small = arr <= _SMALL_RATIO_X
    x2 = arr[small] ** 2
    out[small] = 0.5 - x2 / 16.0 + x2 * x2 / 384.0
    big = ~small
    if big.any():
        out[big] = _bessel_jy(arr[big], 1)[0][1] / arr[big]
    return _out(out, scalar)


# --------------------------------------------------------------------------
# Modified Bessel functions


def _i01_series(x: np.ndarray):
    q = 0.25 * x * x
    i0 = np.ones_like(x)
    i1 = np.ones_like(x)  # I1 / (x/2)
    t0 = np.ones_like(x)
    t1 = np.ones_like(x)
    nterms = int(2.0 * float(x.max(initial=0.0))) + 30
    for k in range(1, nterms):
        t0 = t0 * q / (k * k)
        t1 = t1 * q / (k * (k + 1))
        i0 += t0
        i1 += t1
        if np.all(t0 < 1e-17 * i0):
            break
    return i0, 0.5 * x * i1


def _i_asymptotic(nu: int, x: np.ndarray):
    mu = 4.0 * nu * nu
    total = np.ones_like(x)
    term = np.ones_like(x)
    for k in range(1, 30):
        term = -term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        total += term
    return np.exp(x) / np.sqrt(2.0 * math.pi * x) * total


def _modified_i(x: np.ndarray):
    i0 = np.empty_like(x)
    i1 = np.empty_like(x)
    low = x <= 40.0
    if low.any():
        i0[low], i1[low] = _i01_series(x[low])
    high = ~low
    if high.any():
        i0[high] = _i_asymptotic(0, x[high])
        i1[high] = _i_asymptotic(1, x[high])
    return i0, i1


def i0(x):
    """Modified Bessel function ``I_0`` for ``x >= 0``."""
    arr, scalar = _as_array(x, positive=False, name="I0")
    return _out(_modified_i(arr)[0], scalar)


def i1(x):
    """Modified Bessel function ``I_1`` for ``x >= 0``."""
    arr, scalar = _as_array(x, positive=False, name="I1")
    return _out(_modified_i(arr)[1], scalar)


def _k01_series(x: np.ndarray):
    q = 0.25 * x * x
    i0, i1 = _i01_series(x)
    log_term = np.log(0.5 * x) + EULER_GAMMA
    # K0 = -(ln(x/2)+gamma) I0 + sum q^k/(k!)^2 H_k
    # K1 = 1/x + ln(x/2) I1 - (x/4) sum (psi(k+1)+psi(k+2)) q^k/(k!(k+1)!)
    s0 = np.zeros_like(x)
    s1 = np.full_like(x, 1.0 - 2.0 * EULER_GAMMA)  # k = 0 term: psi(1)+psi(2)
    t0 = np.ones_like(x)
    t1 = np.ones_like(x)
    harmonic = 0.0
    for k in range(1, 30):
        harmonic += 1.0 / k
        t0 = t0 * q / (k * k)
        t1 = t1 * q / (k * (k + 1))
        s0 += t0 * harmonic
        s1 += t1 * (2.0 * harmonic + 1.0 / (k + 1) - 2.0 * EULER_GAMMA)
    k0 = -log_term * i0 + s0
    k1 = 1.0 / x + np.log(0.5 * x) * i1 - 0.25 * x * s1
    return k0, k1


def _k01_steed(x: np.ndarray):
    """Temme's CF2 evaluated with Steed's algorithm, ``x > 2``."""
    eps = 1e-17
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = d.copy()
    delh = d.copy()
    q1 = np.zeros_like(x)
    q2 = np.ones_like(x)
    a1 = 0.25
    q = np.full_like(x, a1)
    c = np.full_like(x, a1)
    a = -a1
    s = 1.0 + q * delh
    for i in range(2, 10000):
        a -= 2 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1 = q2
        q2 = qnew
        q = q + c * qnew
        b = b + 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h = h + delh
        dels = q * delh
        s = s + dels
        if np.all(np.abs(dels) < eps * np.abs(s)):
            break
    h = a1 * h
    k0 = np.sqrt(math.pi / (2.0 * x)) * np.exp(-x) / s
    k1 = k0 * (x + 0.5 - h) / x
    return k0, k1


def _modified_k(x: np.ndarray):
    k0 = np.empty_like(x)
    k1 = np.empty_like(x)
    low = x <= 2.0
    if low.any():
        k0[low], k1[low] = _k01_series(x[low])
    high = ~low
    if high.any():
        k0[high], k1[high] = _k01_steed(x[high])
    return k0, k1


def k0(x):
    """MacDonald function ``K_0`` for ``x > 0``."""
    arr, scalar = _as_array(x, positive=True, name="K0")
    return _out(_modified_k(arr)[0], scalar)


def k1(x):
    """MacDonald function ``K_1`` for ``x > 0``."""
    arr, scalar = _as_array(x, positive=True, name="K1")
    return _out(_modified_k(arr)[1], scalar)


def k1_scaled(x):
    """``x * K_1(x)`` with the limit 1 at ``x = 0``."""
    arr, scalar = _as_array(x, positive=False, name="x*K1")
    out = np.ones_like(arr)
    pos = arr > 0
    if pos.any():
        out[pos] = arr[pos] * _modified_k(arr[pos])[1]
    return _out(out, scalar)


_DISPATCH = {
    CylinderKind.J0: j0,
    CylinderKind.J1: j1,
    CylinderKind.N1: y1,
    CylinderKind.K0: k0,
    CylinderKind.K1: k1,
}


def cyl(kind: CylinderKind | str, x):
    """Evaluate one of the cylinder functions listed in :class:`CylinderKind`.

    >>> cyl("J0", 0.0)
    1.0
    """
    return _DISPATCH[CylinderKind(kind)](x)


def bessel_zeros(n: int, count: int) -> np.ndarray:
    """First ``count`` positive zeros of ``J_n`` (McMahon start, Newton polish)."""
    s = np.arange(1, count + 1, dtype=float)
    beta = (s + 0.5 * n - 0.25) * math.pi
    mu = 4.0 * n * n
    x = beta - (mu - 1.0) / (8.0 * beta) - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (
        3.0 * (8.0 * beta) ** 3
    )
    for _ in range(8):
        jx = _bessel_jy(x, n + 1)[0]
        # J_n' = J_{n-1} - (n/x) J_n, with J_{-1} = -J_1
        prev = -jx[1] if n == 0 else jx[n - 1]
        deriv = prev - (n / x) * jx[n]
        step = jx[n] / deriv
        x = x - step
        if np.all(np.abs(step) < 1e-15 * x):
            break
    return x


def order_raise_residual(tau: float, s: float, h: float) -> float:
    """Finite-difference residual of ``J0(tau s) = (1/tau) d/dtau[tau J1(tau s)/s]``.

    The derivative is a central difference with step ``h``; the residual
    shrinks as ``O(h**2)``.
    """
    if not (tau > h > 0 and s > 0):
        raise DomainError("order_raise_residual requires tau > h > 0 and s > 0")
    up = (tau + h) * j1((tau + h) * s) / s
    down = (tau - h) * j1((tau - h) * s) / s
    return abs((up - down) / (2.0 * h) / tau - j0(tau * s))
