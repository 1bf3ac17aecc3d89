"""Polygon transforms are canonical forms of polar polygons.

For a polygon containing the origin, multiplying the exact rational
transform by the product of the vertex lines 1 - x_V u - y_V v leaves
a polynomial of total degree at most n - 3: the adjoint of the polar
polygon.  The centered square makes the story concrete: its polar body
is the diamond |u| + |v| <= 1, and the cleared numerator 8 is exactly
the diamond's canonical-form numerator, which the residue machinery
confirms independently.
"""

from polypol import canonical, fantappie
from polypol.region import centered_square, polygon

examples = [
    ("triangle around the origin", polygon([(-1, -1), (2, -1), (-1, 2)])),
    ("centered square", centered_square()),
    ("rational hexagon", polygon([(2, 0), (1, 2), (-1, 2), (-2, 0),
                                  (-1, -2), (1, -2)])),
]

for name, p in examples:
    F = fantappie.polygon_transform_exact(p)
    res = fantappie.polar_duality_check(p)
    n = len(p.arcs)
    print(f"\n{name} ({n} vertices):")
    print(f"  denominator = product of vertex lines: {F.den}")
    print(f"  polar adjoint: {res.adjoint}   "
          f"(degree {res.adjoint.degree} <= {n - 3}: {res.degree_ok})")

print("\nCross-check for the square: the polar body is the diamond "
      "|u| + |v| <= 1,")
print("whose canonical form the adjoint machinery normalizes on its own:")
diamond = polygon([(1, 0), (0, 1), (-1, 0), (0, -1)])
form = canonical.canonical_form(diamond)
print(f"  diamond canonical form: kappa = {form.kappa}, "
      f"numerator = {form.numerator}")
residues = [(tuple(map(float, v.point)),
             canonical.iterated_residue(form, v))
            for v in diamond.genuine_vertices]
for pt, r in residues:
    print(f"  iterated residue at {pt}: {r}")
print("kappa = 8 matches the cleared numerator of the square's transform.")
