"""
A tour of the area lower bound
==============================

Evaluate the lower bound for a few weight profiles and compare the general
quadrature route with the closed forms available for the analytic ones.
"""
import numpy as np

from qarea import BoundParams, Constant, Logarithmic, PowerLaw, area_lower_bound
from qarea.bounds import constant_bound, log_bound, power_law_bound

p = 4.0

# A constant weight q0 gives pi * q0**(2/(2-p)) * r**2.  For q0 = 2 and p = 4
# that is pi/2 * r**2, so the disc of radius 1 inside the disc of radius 2 has
# image area at least pi/2.
print("constant, r=1, d0=2:", area_lower_bound(Constant(2.0), BoundParams(p, 1.0, d0=2.0)))

# The general route integrates t**(-1/(p-1)) q(t)**(-1/(p-1)) numerically.
# Switching off the fast path forces the adaptive Gauss-Kronrod integrator
# even when a closed form exists, which makes a handy self-check.
print()
print(f"{'r':>6} {'profile':>28} {'quadrature':>14} {'closed form':>14}")
for r in (0.1, 0.5, 0.9):
    params = BoundParams(p, r)
    rows = [
        (Constant(0.5), constant_bound(0.5, p, r)),
        (PowerLaw(1.0, 2.0), power_law_bound(1.0, 2.0, p, r)),
        (Logarithmic(1.0), log_bound(1.0, p, r)),
    ]
    for prof, closed in rows:
        general = area_lower_bound(prof, params, fast_path=False)
        print(f"{r:6.2f} {prof.profile_id:>28} {general:14.10f} {closed:14.10f}")

# Growing weights mean weaker bounds.  A steeper power law near the origin
# lowers the bound at every radius.
print()
radii = np.linspace(0.1, 0.9, 5)
for alpha in (0.0, 1.0, 2.0):
    values = [area_lower_bound(PowerLaw(1.0, alpha), BoundParams(p, r)) for r in radii]
    print(f"alpha={alpha}:", np.array2string(np.array(values), precision=5))
