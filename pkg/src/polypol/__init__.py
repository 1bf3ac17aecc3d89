"""Moments, transforms, adjoints and canonical forms of plane polypols.

A polypol is a bounded plane region whose boundary is a closed chain of
rational arcs meeting at finitely many vertices.  The package computes,
for such regions:

- area moments and the normalized moment-generating series (`moments`),
- the normalized moment-generating transform
  F(u, v) = 2 * integral of dx dy / (1 - u x - v y)^3, by boundary
  quadrature, closed forms, and exact rational arithmetic for polygons
  (`fantappie`),
- Wachspress-style adjoint curves and canonical forms with iterated
  residue normalization (`canonical`),
- harmonic moments and their generating functions (`harmonic`),
- the dual singular support (vertex lines and dual curves) with local
  exponent probes and blow-up scans (`singular`).

Exact rational arithmetic lives in `algebra`; regions and builders live
in `region`; `acceptance` bundles the verification suite behind the
`polypol verify` command.
"""

from .algebra import (GaussianRational, Poly1, Poly2, RatFunc1, RatFunc2,
                      gcd_reduce, real_roots, resultant_in_tau)
from .canonical import (MeromorphicForm2, ResidualPoint, adjoint,
                        boundary_equation, canonical_form, iterated_residue,
                        residual_points)
from .config import DEFAULT, RunConfig
from .fantappie import (DualPoint, TransformValue, closed_form_disk,
                        closed_form_half_disk, closed_form_rectangle,
                        closed_form_sector, closed_form_triangle,
                        polar_duality_check, polygon_transform_exact,
                        transform_eval, transform_series)
from .harmonic import (G_boundary_eval, HarmonicSeries, harmonic_moments,
                       restriction_identity_check)
from .moments import (MomentTable, SeriesExpansion, moment, moment_table,
                      normalized_mgf_series)
from .region import (Polypol, RationalArc, Vertex, centered_square, from_json,
                     implicitize, polygon, rectangle, sector, sector_from_tau,
                     signed_area, standard_triangle, to_json, unit_disk,
                     upper_half_disk, validate)
from .singular import (ExponentEstimate, SingularSupport, conjecture_scan,
                       probe_exponent, singular_support)

__version__ = "0.1.0"
