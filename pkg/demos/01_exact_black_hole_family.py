"""Tour of the closed-form charged black-hole family.

Walks through the lapse, the horizon radii, the mass-area-charge identity
and the isometric embedding profile for a few parameter choices.
"""

import numpy as np

import chargedbh as cb

print("=== the (n, m, q) family ===\n")

for n, m, q in [(3, 1.0, 0.0), (3, 1.0, 0.5), (4, 2.0, 1.0), (5, 1.0, 0.9)]:
    params = cb.RntParams(n, m, q)
    r_minus, r_plus = cb.horizon_radii(params)
    print(f"n={n}, m={m}, q={q}:")
    print(f"  horizons      r- = {r_minus:.6f}, r+ = {r_plus:.6f}")
    print(f"  lapse at 2r+  psi = {cb.lapse(params, 2 * r_plus):.6f}  (-> 1 at infinity)")

    # the mass comes back from the horizon area and the charge
    area = cb.horizon_area(params)
    recovered = cb.mass_from_horizon(area, q, n)
    print(f"  horizon area  {area:.6f}, mass recovered from it: {recovered:.12f}")

    # the equality (R + q^2/R)/2 = m with R = r_+^(n-2), i.e. the family
    # saturates the mass lower bound in terms of area and charge
    big_r = cb.horizon_radius_power(params)
    print(f"  (R + q^2/R)/2 = {0.5 * (big_r + q**2 / big_r):.12f}  (= m exactly)\n")

print("=== embedding the spatial slice as a radial graph ===\n")
params = cb.RntParams(3, 1.0, 0.5)
_, r_plus = cb.horizon_radii(params)
radii = np.array([1.0, 1.5, 2.0, 3.0, 5.0]) * r_plus
heights = cb.embed_profile(params, radii)
print("     r/r+      u(r)")
for r, u in zip(radii, heights):
    print(f"  {r / r_plus:7.3f}  {u:9.6f}")
print("\nThe slope du/dr diverges at r+ (the graph meets the slice orthogonally)")
print(f"and for q=0 the height is the classical paraboloid sqrt(8m(r-2m)):")
schw = cb.RntParams(3, 1.0, 0.0)
print(f"  u(4) = {cb.embed_profile(schw, np.array([4.0]))[0]:.12f}  (expected 4)")
