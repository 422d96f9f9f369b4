"""
Isoperimetric deficit of polygons
=================================

L**2 - 4 pi A is never negative.  Regular polygons approach the circle and
their deficit shrinks like 1/n**2.
"""
import numpy as np

from qarea import isoperimetric_deficit
from qarea.capacity import polygon_perimeter_area

for n in (3, 4, 6, 12, 48, 96):
    theta = 2 * np.pi * np.arange(n) / n
    poly = np.column_stack([np.cos(theta), np.sin(theta)])
    L, A = polygon_perimeter_area(poly)
    print(f"n={n:<3} L={L:.6f} A={A:.6f} deficit/L^2={isoperimetric_deficit(poly) / L**2:.3e}")

# A long thin rectangle is far from round
print("10x1 rectangle:", isoperimetric_deficit([(0, 0), (10, 0), (10, 1), (0, 1)]))
