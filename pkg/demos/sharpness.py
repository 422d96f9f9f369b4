"""
Where the bound is attained
===========================

The linear scaling z -> q0**(1/(2-p)) z has constant inner p-dilatation q0,
and its image areas meet the constant-profile bound exactly.  Power
stretches show how far from sharp the bound can be.
"""
import numpy as np

from qarea import BoundParams, Constant, PowerStretch, area_lower_bound, extremal_map, image_disc_area
from qarea.maps import dilatations_at
from qarea.profiles import profile_from_map

q0, p = 4.0, 3.0
f0 = extremal_map(q0, p)
print("extremal map:", f0)
print("K_Ip at t=0.3:", dilatations_at(f0, 0.3, p).K_Ip)

for r in (0.2, 0.5, 0.8):
    bound = area_lower_bound(Constant(q0), BoundParams(p, r))
    print(f"r={r}: bound {bound:.15f}  image area {image_disc_area(f0, r):.15f}")

# The stretch z |z|**(s-1) has K_Ip = s t**((s-1)(2-p)) for s > 1.  Feeding
# that profile back into the bound gives a fixed fraction s**(-2p/(p-2)) of
# the true area, independent of r.
print()
for s in (1.5, 2.0, 3.0):
    fmap = PowerStretch(s)
    prof = profile_from_map(fmap, 4.0)
    ratios = [area_lower_bound(prof, BoundParams(4.0, r)) / image_disc_area(fmap, r) for r in np.geomspace(0.01, 0.99, 6)]
    print(f"s={s}: ratios {np.round(ratios, 12)}  predicted {s ** (-2 * 4.0 / 2.0):.12f}")

# For s < 1 the stretch contracts, its profile vanishes at the origin, and
# the bound is an equality again.
fmap = PowerStretch(0.5)
prof = profile_from_map(fmap, 4.0)
print()
print("s=0.5 profile:", prof.profile_id)
print("ratio at r=0.6:", area_lower_bound(prof, BoundParams(4.0, 0.6)) / image_disc_area(fmap, 0.6))
