"""Where the causal function comes from: the proper-time integral.

The integral oscillates without decay, so it is damped by a small epsilon
and extrapolated back. The extrapolated value is split into a real part
proportional to the smooth part of Delta_S and an imaginary part
proportional to Delta^(1); the two proportionality constants are printed.
"""
import math

from kfgvolkov import proper_time_numeric
from kfgvolkov.geometry import PhysicalConstants, SpacetimePoint, classify
from kfgvolkov.propagators import delta_1_free, delta_s_free
from kfgvolkov.quadrature import _regularised_proper_time, proper_time_closed_form

k0 = 1.0
lam_sq = 2.0

print("damped values before extrapolation")
for j in range(5):
    eps = 1e-2 / 2**j
    v, *_ = _regularised_proper_time(k0 * k0 / 4, lam_sq, eps, 1e-10)
    print(f"  eps={eps:.5f}  {v:.10f}")
res = proper_time_numeric(k0, lam_sq)
print("extrapolated     ", res.value)
print("closed form      ", proper_time_closed_form(k0, lam_sq))

k = PhysicalConstants.natural(k0=k0)
print("\nratios to the causal structures")
for t, r in ((2.0, 1.0), (3.0, 0.5), (1.0, 2.0), (0.5, 3.0)):
    cls = classify(SpacetimePoint(t, r), k)
    val = proper_time_numeric(k0, cls.lambda_sq).value
    s = delta_s_free(cls, k0).smooth
    d1 = delta_1_free(cls, k0).smooth
    re = val.real / s / math.pi**2 if s else float("nan")
    print(f"  {cls.region.value:>9}: Re/(pi^2 Delta_S) = {re:.8f}   Im/(pi^2 Delta1) = {val.imag / d1 / math.pi**2:.8f}")
