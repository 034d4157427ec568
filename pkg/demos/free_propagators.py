"""Free fundamental solutions along a line of sight.

Walks a ray of fixed time through the light cone and prints the closed-form
values next to the quadrature that produces them, so the reader can see the
smooth part switch off at the cone and the MacDonald tail take over.
"""
import math

import numpy as np

from kfgvolkov import psi_minus, psi_plus, psi_minus_numeric, psi_plus_numeric
from kfgvolkov.geometry import PhysicalConstants, SpacetimePoint, classify
from kfgvolkov.propagators import delta_1_free, delta_s_free

k = PhysicalConstants.natural(k0=1.0)
t = 2.0

# Inside the cone both representations agree; the numeric one goes through
# the order-raised Sonin integral and a central difference in tau.
print("inside the cone (z = 0, so tau = t)")
print(f"{'x_perp':>8} {'closed':>14} {'quadrature':>14} {'rel err':>9}")
for x_perp in np.linspace(0.2, 1.6, 8):
    exact = psi_plus(t, x_perp, k.k0).smooth
    num = psi_plus_numeric(t, x_perp, k.k0).value
    print(f"{x_perp:8.3f} {exact:14.6e} {num:14.6e} {abs(num / exact - 1):9.1e}")

# Outside, only the MacDonald branch survives.
print("\noutside the cone")
for lam_t in (0.5, 1.0, 2.0, 4.0):
    exact = psi_minus(lam_t, k.k0).smooth
    num = psi_minus_numeric(lam_t, 0.5 * lam_t, k.k0).value
    print(f"lam~={lam_t:4.1f}  closed {exact:.10e}  quadrature {num:.10e}")

# The Cauchy-problem pair: Delta_S lives inside the cone only, Delta^(1) is
# Neumann inside and MacDonald outside. Step off the cone on either side.
print("\nDelta_S and Delta^(1) across the cone at t = 2")
for r in (1.0, 1.9, 1.99, 2.01, 2.1, 3.0):
    cls = classify(SpacetimePoint(t, r), k)
    s = delta_s_free(cls, k.k0).smooth
    d1 = delta_1_free(cls, k.k0).smooth
    print(f"r={r:5.2f} {cls.region.value:>9}  Delta_S {s: .6e}  Delta1 {d1: .6e}")

# Massless limit of the outside branch
lam_t = 1.5
print("\nmassless check:", psi_minus(lam_t, 1e-6).smooth * 2 * math.pi * lam_t**2)
