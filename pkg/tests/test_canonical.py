from fractions import Fraction as F

import pytest

from polypol.algebra import Poly1, Poly2, RatFunc1
from polypol.canonical import (MeromorphicForm2, adjoint, boundary_data,
                               boundary_equation, canonical_form,
                               iterated_residue, rational_residue,
                               residual_points, residue_along_line)
from polypol.errors import (InvariantViolation, NonNormalCrossing,
                            NonUniqueAdjoint, PolypolError)
from polypol.region import (Polypol, RationalArc, polygon,
                            standard_triangle, _segment)


def poly(terms):
    return Poly2({k: F(v) for k, v in terms.items()})


# ---------------------------------------------------------------------------
# boundary equations

def test_boundary_equations(triangle, square, half_disk):
    x = Poly2.variable("x")
    y = Poly2.variable("y")
    one = Poly2.const(1)
    assert boundary_equation(triangle) == [y, one - x - y, x]
    assert boundary_equation(square) == [one + y, one - x, one - y, one + x]
    assert boundary_equation(half_disk) == [y, one - x * x - y * y]


def test_boundary_dedupe_on_disk(disk):
    factors, arc_map = boundary_data(disk)
    assert len(factors) == 1
    assert arc_map == [0, 0, 0, 0]


# ---------------------------------------------------------------------------
# residual points and Bezout bookkeeping

def test_square_residual_points_at_infinity(square):
    pts, audits = residual_points(boundary_equation(square),
                                  square.genuine_vertices)
    at_inf = sorted(tuple(map(str, p.point)) for p in pts)
    assert len(pts) == 2
    assert all(p.at_infinity for p in pts)
    assert {p.point[:2] for p in pts} == {(F(1), F(0)), (F(0), F(1))}
    assert all(a.balanced for a in audits)
    # adjacent side pairs meet at the four corners
    assert sum(a.vertex_multiplicity for a in audits) == 4


def test_half_disk_intersections_are_vertices(half_disk):
    pts, audits = residual_points(boundary_equation(half_disk),
                                  half_disk.genuine_vertices)
    assert pts == []
    assert audits[0].degree_product == 2
    assert audits[0].vertex_multiplicity == 2


def test_triangle_no_residual_points(triangle):
    pts, audits = residual_points(boundary_equation(triangle),
                                  triangle.genuine_vertices)
    assert pts == []
    assert all(a.balanced for a in audits)


def test_residual_points_rejects_common_component():
    x = Poly2.variable("x")
    y = Poly2.variable("y")
    with pytest.raises(PolypolError):
        residual_points([x * y, y], [])


def test_complex_residual_points():
    # circle and the line y = 5/4: conjugate intersections at x = +-3i/4,
    # recognized exactly as Gaussian rationals, plus Bezout balance
    circle = poly({(0, 0): 1, (2, 0): -1, (0, 2): -1})
    line = poly({(0, 0): F(5, 4), (0, 1): -1})
    pts, audits = residual_points([circle, line], [])
    assert audits[0].balanced and audits[0].degree_product == 2
    assert len(pts) == 2
    from polypol.algebra import GaussianRational
    xs = set()
    for p in pts:
        assert isinstance(p.point[0], GaussianRational)
        xs.add((p.point[0].re, p.point[0].im))
    assert xs == {(F(0), F(3, 4)), (F(0), F(-3, 4))}


def test_irrational_complex_residual_points():
    # circle and the line y = 2 meet at x = +-i sqrt(3): handled in the
    # certified-float tier with conjugate pairing
    circle = poly({(0, 0): 1, (2, 0): -1, (0, 2): -1})
    line = poly({(0, 0): 2, (0, 1): -1})
    pts, audits = residual_points([circle, line], [])
    assert audits[0].balanced
    assert len(pts) == 2
    vals = sorted(complex(p.point[0]).imag for p in pts)
    assert vals == pytest.approx([-3 ** 0.5, 3 ** 0.5], abs=1e-9)


# ---------------------------------------------------------------------------
# adjoints

def test_constant_adjoints(triangle, square, half_disk):
    assert adjoint(triangle) == Poly2.const(1)
    assert adjoint(square) == Poly2.const(1)
    assert adjoint(half_disk) == Poly2.const(1)


def test_adjoint_requires_degree_three():
    # a single biangle-style region: segment plus circle arc, total
    # boundary degree 1 + 2 = 3 works; degree < 3 must raise
    digon = Polypol([_segment((0, 0), (1, 0)), _segment((1, 0), (0, 0))])
    with pytest.raises(PolypolError):
        adjoint(digon)


def test_non_unique_adjoint_for_tangent_parabolas():
    # region between y = x^2 and y = 2 - x^2: the two parabolas are
    # tangent at the infinite point [0:1:0], so the multiplicity-two
    # vanishing wipes out the whole degree-1 interpolation space
    lower = RationalArc(RatFunc1(Poly1([F(0), F(1)]), Poly1([F(1)])),
                        RatFunc1(Poly1([F(0), F(0), F(1)]), Poly1([F(1)])),
                        (-1, 1))
    upper = RationalArc(RatFunc1(Poly1([F(0), F(-1)]), Poly1([F(1)])),
                        RatFunc1(Poly1([F(2), F(0), F(-1)]), Poly1([F(1)])),
                        (-1, 1))
    strip = Polypol([lower, upper])
    with pytest.raises(NonUniqueAdjoint) as exc:
        adjoint(strip)
    assert exc.value.dimension == 0


# ---------------------------------------------------------------------------
# canonical forms

def test_canonical_form_constants(triangle, square, half_disk):
    assert canonical_form(triangle).kappa == F(1)
    assert canonical_form(square).kappa == F(4)
    assert canonical_form(half_disk).kappa == F(2)


def test_canonical_form_needs_genuine_vertices(disk):
    with pytest.raises(PolypolError):
        canonical_form(disk)


def test_triangle_density_matches_formula(triangle):
    form = canonical_form(triangle)
    for x, y in [(0.2, 0.3), (0.1, 0.5), (0.4, 0.1)]:
        assert form.density(x, y) == pytest.approx(1 / (x * y * (1 - x - y)), rel=1e-12)


def test_square_density_matches_formula(square):
    form = canonical_form(square)
    for x, y in [(0.5, -0.25), (0.0, 0.0), (-0.7, 0.3)]:
        assert form.density(x, y) == pytest.approx(
            4 / ((1 - x * x) * (1 - y * y)), rel=1e-12)


def test_all_genuine_residues_unit(triangle, square, half_disk, quarter_sector):
    for p in (triangle, square, half_disk, quarter_sector):
        form = canonical_form(p)
        for v in p.genuine_vertices:
            r = iterated_residue(form, v)
            assert r == 1 or r == -1


def test_residue_orientation_sign():
    # swapping the branch order flips the Jacobian sign: the residue at
    # the same point through the reversed chain is -1
    tri = standard_triangle()
    form = canonical_form(tri)
    v0 = tri.vertices[0]
    swapped = type(v0)(point=v0.point, incoming=v0.outgoing,
                       outgoing=v0.incoming, smooth_joint=False)
    assert iterated_residue(form, swapped, cross_check=False) == -1


def test_wachspress_shape_for_general_triangles(rng):
    # canonical form of any triangle is const / (product of edge lines):
    # all vertex residues +-1 and the adjoint is constant
    for _ in range(5):
        pts = rng.uniform(-2, 2, size=(3, 2))
        verts = [(F(float(x)).limit_denominator(30), F(float(y)).limit_denominator(30))
                 for x, y in pts]
        if len(set(verts)) != len(verts):
            continue
        from polypol.region import shoelace
        if shoelace(verts) == 0:
            continue
        if shoelace(verts) < 0:
            verts.reverse()
        p = polygon(verts)
        form = canonical_form(p)
        assert form.numerator == Poly2.const(1)
        for v in p.genuine_vertices:
            assert iterated_residue(form, v) in (F(1), F(-1))


def test_non_normal_crossing_raises():
    # two parabola branches tangent at the origin
    f = poly({(0, 1): 1, (2, 0): -1})           # y - x^2
    g = poly({(0, 1): 1, (2, 0): -2})           # y - 2 x^2
    form = MeromorphicForm2(kappa=F(1), numerator=Poly2.const(1),
                            denominator_factors=(f, g), arc_factors=(0, 1))
    from polypol.region import Vertex
    v = Vertex(point=(F(0), F(0)), incoming=0, outgoing=1)
    with pytest.raises(NonNormalCrossing):
        iterated_residue(form, v)


def test_same_component_both_sides_raises(disk):
    factors, arc_map = boundary_data(disk)
    form = MeromorphicForm2(kappa=F(1), numerator=Poly2.const(1),
                            denominator_factors=tuple(factors),
                            arc_factors=tuple(arc_map))
    with pytest.raises(NonNormalCrossing):
        iterated_residue(form, disk.vertices[0])


def test_contour_cross_check_catches_wrong_value(triangle):
    # sabotage kappa: the algebraic value scales but the contour uses the
    # same form, so both scale together; instead sabotage the vertex by
    # moving it off the crossing, which must break the Newton/contour
    # agreement or the algebraic formula
    form = canonical_form(triangle)
    from polypol.region import Vertex
    off = Vertex(point=(F(1, 10), F(1, 10)), incoming=2, outgoing=0)
    with pytest.raises((InvariantViolation, NonNormalCrossing, PolypolError)):
        iterated_residue(form, off)


# ---------------------------------------------------------------------------
# residue restriction to a boundary line

def test_half_disk_diameter_residue(half_disk):
    form = canonical_form(half_disk)
    k = next(i for i, f in enumerate(form.denominator_factors) if f.degree == 1)
    var, rf = residue_along_line(form, k)
    assert var == "x"
    # 2 dx / (1 - x^2) on the diameter
    for x in (F(0), F(1, 2), F(-1, 3)):
        assert rf(x) == 2 / (1 - x * x)
    assert rational_residue(rf, 1) == -1
    assert rational_residue(rf, -1) == 1


def test_square_side_residue(square):
    form = canonical_form(square)
    factors = form.denominator_factors
    k = factors.index(poly({(0, 0): 1, (0, 1): 1}))       # the side y = -1
    var, rf = residue_along_line(form, k)
    assert var == "x"
    # restricting to y = -1 gives 2 dx / (1 - x^2), then residue 1 at x = 1
    for x in (F(0), F(1, 2)):
        assert rf(x) == 2 / (1 - x * x)
    assert rational_residue(rf, 1) == -1


def test_vertical_line_residue(square):
    form = canonical_form(square)
    factors = form.denominator_factors
    k = factors.index(poly({(0, 0): 1, (1, 0): -1}))      # the side x = 1
    var, rf = residue_along_line(form, k)
    assert var == "y"
    assert rf(F(0)) == 2
