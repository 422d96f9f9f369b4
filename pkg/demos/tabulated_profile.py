"""
Bounds from sampled data
========================

When the weight is only known at a handful of radii it can be wrapped in a
Table profile (log-log interpolation between knots, held constant below the
first knot).  Here the samples come from the circle mean of a field that is
not radially symmetric.
"""
import numpy as np

from qarea import BoundParams, Table, area_lower_bound
from qarea.bounds import bound_curve
from qarea.profiles import ScalarField, circle_average

z0 = 0.0
field = ScalarField(lambda z: 1.5 + np.real(z) ** 2 + 0.5 * np.abs(np.imag(z)), 1.0)

ts = np.geomspace(1e-3, 0.99, 12)
knots = tuple((float(t), circle_average(field, z0, t, n=128)) for t in ts)
tab = Table(knots)
for t, q in knots[::3]:
    print(f"t={t:.4f}  mean weight {q:.6f}")

p = 3.0
print()
print("bound at r=0.5:", area_lower_bound(tab, BoundParams(p, 0.5)))
curve = bound_curve(tab, p, 1.0, 8)
print(curve.to_csv())
