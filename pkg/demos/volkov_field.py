"""A charge in a circularly polarised plane wave.

The field enters the characteristic solution only through its averages
between the two light-cone times: the mean shifts the phase, the variance
dresses the mass. Over a full period the variance is exactly a^2, so the
effective inverse Compton length is constant; over part of a period it
oscillates toward that value.
"""
import math

import numpy as np

from kfgvolkov import CircularPolarized, LinearPolarized, average_over, volkov_psi
from kfgvolkov.geometry import PhysicalConstants, SpacetimePoint
from kfgvolkov.goursat import convergence_study
from kfgvolkov.potentials import big_k_squared, f_accumulate

k = PhysicalConstants(e=0.6, k0=1.0)
circ = CircularPolarized(a=1.0, kappa=2.0)
lin = LinearPolarized(a=1.0, kappa=2.0)
period = 2 * math.pi / circ.kappa

print("k0_eff over a growing window [0, xi]")
print(f"{'xi/period':>9} {'circular':>10} {'linear':>10}")
for frac in (0.1, 0.25, 0.5, 0.75, 1.0, 2.0, 5.0):
    xi = frac * period
    print(f"{frac:9.2f} {average_over(circ, 0, xi, k).k0_eff:10.6f} {average_over(lin, 0, xi, k).k0_eff:10.6f}")
print("full-period prediction", k.k0 * math.sqrt(1 + (k.coupling * circ.a / k.k0) ** 2))

# The solution itself: free form at k0_eff times a unit-modulus phase.
p = SpacetimePoint(t=2.0, x1=0.4, x2=0.3, z=0.5)
v = volkov_psi(p, circ, k)
print(f"\nPsi at {p}: smooth {v.smooth:.6e}, |phase| {abs(v.phase):.15f}, k0_eff {v.effective_k0:.6f}")

# The same structure appears as the variable telegraph equation along the
# characteristics; the grid solver reproduces J0(sqrt(eta f(xi))) at second order.
ksq = lambda xi: big_k_squared(circ, 0.3, -0.2, xi, k)  # noqa: E731
f = lambda xi: f_accumulate(circ, 0.3, -0.2, xi, k)  # noqa: E731
study = convergence_study(ksq, 2.0, 2.0, 4, f=f)
print("\nGoursat grid: h, max error, order")
for (h, e), p_ord in zip(study.rows(), [float("nan")] + study.orders):
    print(f"  {h:.5f}  {e:.3e}  {p_ord:.3f}")
