"""Tour of the transform catalog.

For each catalog domain the normalized moment-generating transform

    F(u, v) = 2 * integral of dx dy / (1 - u x - v y)^3

is evaluated two ways: by adaptive boundary quadrature and by the
domain's closed form.  The constant F(0, 0) = 2 * area is the sanity
anchor throughout.
"""

from fractions import Fraction

from polypol import fantappie
from polypol.region import (rectangle, sector_from_tau, signed_area,
                            standard_triangle, unit_disk, upper_half_disk)

POINTS = [(0.0, 0.0), (0.2, 0.1), (-0.15, 0.25), (0.3, -0.3)]

catalog = [
    ("standard triangle", standard_triangle(), fantappie.closed_form_triangle),
    ("unit disk", unit_disk(), fantappie.closed_form_disk),
    ("upper half-disk", upper_half_disk(), fantappie.closed_form_half_disk),
    ("rectangle [0,1]x[0,2]", rectangle(1, 2),
     lambda w: fantappie.closed_form_rectangle(1, 2, w)),
    ("quarter sector", sector_from_tau(0, 1),
     lambda w: fantappie.closed_form_sector(0, 1, w)),
]

for name, region, closed in catalog:
    area = signed_area(region)
    print(f"\n{name}:  area = {area}  (so F(0,0) should be {2 * float(area):.12g})")
    print(f"  {'(u, v)':>16} {'boundary quadrature':>22} {'closed form':>22} {'diff':>10}")
    for w in POINTS:
        val = fantappie.transform_eval(region, w).value
        ref = closed(w)
        print(f"  {str(w):>16} {val:22.15f} {ref:22.15f} {abs(val - ref):10.2e}")

print("\nPolygons collapse to exact rational functions:")
tri = standard_triangle()
F = fantappie.polygon_transform_exact(tri)
print(f"  triangle: numerator {F.num}, denominator {F.den}")
print(f"  at (1/5, 1/10): {F(Fraction(1, 5), Fraction(1, 10))} "
      f"(= 1/((1-1/5)(1-1/10)))")

print("\nNear the singular support the evaluator refuses instead of "
      "returning garbage:")
try:
    fantappie.transform_eval(unit_disk(), (0.6, 0.8))
except Exception as exc:
    print(f"  disk at (0.6, 0.8): {type(exc).__name__}: {exc}")
