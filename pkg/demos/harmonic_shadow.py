"""Harmonic moments as the one-dimensional shadow of the transform.

With z = x + i y and the area-measure convention mu_j = integral of
z^j dx dy, the weighted generating function G(t) = sum (j+1) mu_j t^j
comes from the same boundary calculus as the two-variable transform.
Contracting the transform's moment series along the dual line
(u, v) = (t, i t) gives coefficients (j+1)(j+2) mu_j; the elementary
integral operator (1/t^2) int_0^t s F(s, is) ds lowers them to
(j+1) mu_j.  The check below verifies both steps coefficient by
coefficient, exactly for polygons.
"""

import math

from polypol.harmonic import (G_boundary_eval, harmonic_moments,
                              restriction_identity_check)
from polypol.region import rectangle, standard_triangle, unit_disk

tri = standard_triangle()
series = harmonic_moments(tri, 6)
print("standard triangle, exact harmonic moments (Gaussian rationals):")
for j, m in enumerate(series.mu):
    print(f"  mu_{j} = {m.re} + ({m.im}) i")

print("\nunit disk: rotational symmetry kills everything but the area,")
disk = unit_disk()
ds = harmonic_moments(disk, 6)
print(f"  mu_0 = {ds.mu[0].real:.15f} (pi = {math.pi:.15f}),"
      f" max |mu_j| for j >= 1: {max(abs(m) for m in ds.mu[1:]):.2e}")
print(f"  so G(t) is constant: G(0.3) = {G_boundary_eval(disk, 0.3).real:.15f}")

print("\nrestriction identity, coefficient by coefficient:")
for name, p, order in [("triangle", tri, 10), ("rectangle(1,2)", rectangle(1, 2), 10),
                       ("disk", disk, 8)]:
    rep = restriction_identity_check(p, order)
    kind = "exact" if rep.exact and rep.all_exact else f"max delta {rep.max_delta:.2e}"
    print(f"  {name:15} through order {order}: {kind}")

print("\none sample row (triangle, j = 4):")
row = restriction_identity_check(tri, 4).rows[4]
print(f"  contracted coefficient of t^4 in F(t, it): {row.contracted}")
print(f"  (j+1)(j+2) mu_4                          : {row.weighted}")
print(f"  after the integral operator              : {row.integrated}")
print(f"  (j+1) mu_4                               : {row.target}")
