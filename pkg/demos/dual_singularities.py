"""Where the transform breaks down, and how badly.

The singular support in the dual (u, v)-plane consists of the lines
dual to the vertices plus the projective dual curve of every curved
boundary component.  Exponent probes measure the local growth rate of
the transform along rays into the support; a grid scan checks that
every observed blow-up sits on the computed support (numeric evidence
for the containment direction of the singular-locus conjecture, not a
proof).
"""

from polypol.region import standard_triangle, unit_disk, upper_half_disk
from polypol.singular import conjecture_scan, probe_exponent, singular_support

for name, p in [("unit disk", unit_disk()),
                ("upper half-disk", upper_half_disk()),
                ("standard triangle", standard_triangle())]:
    sup = singular_support(p)
    print(f"\n{name}:")
    for line, ns in zip(sup.vertex_lines, sup.never_singular):
        note = "  (constant: never singular, excluded from scans)" if ns else ""
        print(f"  vertex line: {line}{note}")
    for c in sup.dual_curves:
        print(f"  dual curve:  {c}")

print("\nLocal exponents along inward rays:")
disk = unit_disk()
sup = singular_support(disk)
est = probe_exponent(disk, sup.dual_curves[0], (1.0, 0.0), (-1.0, 0.0))
print(f"  disk, dual conic at (1,0): exponent {est.exponent:+.4f} "
      f"-> {est.classification}  (fit residual {est.residual:.1e})")

tri = standard_triangle()
sup_t = singular_support(tri)
line = next(l for l, ns in zip(sup_t.vertex_lines, sup_t.never_singular) if not ns)
est = probe_exponent(tri, line, (1.0, 0.0), (-1.0, 0.0))
print(f"  triangle, vertex line at u=1: exponent {est.exponent:+.4f} "
      f"-> {est.classification}")

print("\nGrid scans over [-2, 2]^2:")
for name, p in [("triangle", standard_triangle()),
                ("half-disk", upper_half_disk())]:
    rep = conjecture_scan(p, grid=61)
    refused = sum(r.status == "kernel_on_boundary" for r in rep.rows)
    print(f"  {name}: {len(rep.rows)} points, {refused} on-boundary refusals, "
          f"{len(rep.flagged)} flagged, contained = {rep.flagged_contained}")
print(f"  ({rep.note})")
