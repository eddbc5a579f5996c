"""Walk through the isoperimetric profile of S^3 x R.

Small volumes are bounded by ball-type regions, which behave like
Euclidean balls at first. Past the crossover volume a cylindrical slab
S^3 x [a, b] is cheaper, and the profile becomes the constant 2 |S^3|.
"""
import math

import numpy as np

from isoyamabe import CylinderSpec, SphereMetricSpec, crossover, cylinder_profile, gamma, sphere_profile

spec = CylinderSpec(3)
eta, v0 = crossover(3)
print(f"crossover: eta* = {eta:.6f}, v0 = {v0:.6f}, slab area 4 pi^2 = {4 * math.pi**2:.6f}")

print("\n  volume      I(v)   I(v)/v^(3/4)")
for v in np.geomspace(1e-3, 1.5 * v0, 12):
    a = cylinder_profile(spec, v)
    print(f"{v:8.4f}  {a:8.4f}  {a / v**0.75:8.4f}")
print(f"small-volume limit gamma_4 = {gamma(4):.4f}")

# the round S^4 scaled by 2^(2/3) is the comparison space used for S^3 x R
sphere = SphereMetricSpec(4, 2 ** (2 / 3))
v = np.linspace(0.05, 0.95, 7) * sphere.total_volume
print("\n  volume   0.99 I_sphere   I_cylinder")
for x, s in zip(v, sphere_profile(sphere, v)):
    print(f"{x:8.3f}  {0.99 * s:13.4f}  {cylinder_profile(spec, x):11.4f}")
