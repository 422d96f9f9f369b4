"""
Three routes to the capacity of a ring
======================================

For the ring 1 < |z| < 8 and p = 4 the capacity is 16 pi / 729.  We compare
it with the Kruzhkov lower bound, a radial 1D minimisation and a 2D grid
minimisation.
"""
import time

from qarea import RingCondenser, grid_capacity_2d, radial_capacity_1d, ring_capacity_closed
from qarea.capacity import ring_kruzhkov_bound

cond = RingCondenser(1.0, 8.0)
p = 4.0
exact = ring_capacity_closed(cond, p)

print("Kruzhkov lower bound:", ring_kruzhkov_bound(cond, p))
print("closed form         :", exact)
for n in (16, 256, 4096):
    print(f"radial 1D, n={n:<5}  :", radial_capacity_1d(cond, p, n))

# The grid minimiser clamps cells inside the small disc to 1 and outside the
# big disc to 0, then runs nonlinear conjugate gradients on the discrete
# p-energy.  The error roughly halves with each doubling of N.
print()
for N in (32, 64, 128):
    t0 = time.perf_counter()
    res = grid_capacity_2d(cond, p, N)
    rel = abs(res.energy - exact) / exact
    print(f"N={N:<4} energy {res.energy:.6f}  rel err {rel:.4f}  iters {res.iterations:<5} {time.perf_counter() - t0:.2f}s")
