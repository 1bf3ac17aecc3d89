"""Canonical forms of the catalog regions.

The canonical form of a region with rational boundary arcs is
kappa * A / B dx^dy: B is the reduced boundary equation, A the adjoint
curve through the residual intersections of the complexified boundary,
and kappa is pinned by demanding iterated residue +1 at the first
vertex of the chain.  Residues are cross-validated numerically by a
double contour integral around each vertex.
"""

from polypol import canonical
from polypol.region import centered_square, standard_triangle, unit_disk, upper_half_disk

for name, p in [("standard triangle", standard_triangle()),
                ("centered square", centered_square()),
                ("upper half-disk", upper_half_disk())]:
    factors = canonical.boundary_equation(p)
    pts, audits = canonical.residual_points(factors, p.genuine_vertices)
    form = canonical.canonical_form(p)
    print(f"\n{name}:")
    print(f"  boundary factors: {factors}")
    if pts:
        print(f"  residual intersections: "
              f"{[(rp.point, rp.multiplicity) for rp in pts]}")
    else:
        print("  residual intersections: none (every crossing is a vertex)")
    for audit in audits:
        print(f"  Bezout audit {audit.source}: {audit.vertex_multiplicity} "
              f"vertex + {audit.residual_multiplicity} residual "
              f"= {audit.degree_product}")
    print(f"  adjoint: {form.numerator},  kappa = {form.kappa}")
    for v in p.genuine_vertices:
        r = canonical.iterated_residue(form, v)
        print(f"  residue at {tuple(map(float, v.point))}: {r}")

print("\nRestricting the half-disk form to its diameter:")
hd = upper_half_disk()
form = canonical.canonical_form(hd)
k = next(i for i, f in enumerate(form.denominator_factors) if f.degree == 1)
var, rf = canonical.residue_along_line(form, k)
print(f"  one-form ({rf.num}) / ({rf.den}) d{var}   (this is 2 dx / (1 - x^2))")
print(f"  endpoint residues: {canonical.rational_residue(rf, 1)} at x=1, "
      f"{canonical.rational_residue(rf, -1)} at x=-1")

print("\nThe vertex-free disk has no canonical form in this recursive sense:")
try:
    canonical.canonical_form(unit_disk())
except Exception as exc:
    print(f"  {type(exc).__name__}: {exc}")
