import math
from fractions import Fraction as F

import pytest

from polypol import canonical
from polypol.algebra import Poly2
from polypol.errors import (BranchDomainError, KernelOnBoundary, PolypolError)
from polypol.fantappie import (closed_form_disk, closed_form_half_disk,
                               closed_form_rectangle, closed_form_sector,
                               closed_form_triangle, origin_strictly_inside,
                               polar_duality_check, polygon_transform_exact,
                               transform_eval, transform_series)
from polypol.region import polygon, rectangle, signed_area


# ---------------------------------------------------------------------------
# closed forms against the direct two-dimensional integral

def direct_transform(region_kind, u, v, **kw):
    """Brute-force oracle: 2 * dblquad of (1 - u x - v y)^-3."""
    from scipy import integrate
    if region_kind == "triangle":
        val, _ = integrate.dblquad(lambda y, x: 2 / (1 - u * x - v * y) ** 3,
                                   0, 1, 0, lambda x: 1 - x,
                                   epsabs=1e-12, epsrel=1e-12)
    elif region_kind == "disk":
        val, _ = integrate.dblquad(
            lambda r, t: 2 * r / (1 - u * r * math.cos(t) - v * r * math.sin(t)) ** 3,
            0, 2 * math.pi, 0, 1, epsabs=1e-12, epsrel=1e-12)
    elif region_kind == "half_disk":
        val, _ = integrate.dblquad(
            lambda r, t: 2 * r / (1 - u * r * math.cos(t) - v * r * math.sin(t)) ** 3,
            0, math.pi, 0, 1, epsabs=1e-12, epsrel=1e-12)
    elif region_kind == "sector":
        p0, p1 = kw["angles"]
        val, _ = integrate.dblquad(
            lambda r, t: 2 * r / (1 - u * r * math.cos(t) - v * r * math.sin(t)) ** 3,
            p0, p1, 0, 1, epsabs=1e-12, epsrel=1e-12)
    elif region_kind == "rectangle":
        a, b = kw["sides"]
        val, _ = integrate.dblquad(lambda y, x: 2 / (1 - u * x - v * y) ** 3,
                                   0, a, 0, b, epsabs=1e-12, epsrel=1e-12)
    return val


POINTS = [(0.2, 0.1), (-0.15, 0.25), (0.3, -0.3)]


@pytest.mark.parametrize("u,v", POINTS)
def test_closed_forms_against_direct_integral(u, v):
    assert closed_form_triangle((u, v)) == pytest.approx(
        direct_transform("triangle", u, v), rel=1e-9)
    assert closed_form_disk((u, v)) == pytest.approx(
        direct_transform("disk", u, v), rel=1e-9)
    assert closed_form_half_disk((u, v)) == pytest.approx(
        direct_transform("half_disk", u, v), rel=1e-9)
    t0, t1 = 1 / 3, 1.0
    assert closed_form_sector(t0, t1, (u, v)) == pytest.approx(
        direct_transform("sector", u, v,
                         angles=(2 * math.atan(t0), 2 * math.atan(t1))), rel=1e-9)
    assert closed_form_rectangle(1, 2, (u, v)) == pytest.approx(
        direct_transform("rectangle", u, v, sides=(1, 2)), rel=1e-9)


def test_rectangle_closed_form_matches_boxed_expression():
    # the four-term form with the 1/(u v) prefactor, valid off the axes
    for u in (0.11, -0.2, 0.25):
        for v in (0.07, -0.15, 0.2):
            boxed = (1 / (u * v)) * (1 / (1 - u - 2 * v) - 1 / (1 - u)
                                     - 1 / (1 - 2 * v) + 1)
            assert closed_form_rectangle(1, 2, (u, v)) == pytest.approx(boxed, rel=1e-12)
    assert closed_form_rectangle(1, 2, (0.0, 0.0)) == pytest.approx(4.0, abs=1e-15)


def test_half_disk_closed_form_values():
    assert closed_form_half_disk((0.0, 0.0)) == pytest.approx(math.pi, abs=1e-14)
    assert closed_form_sector(0, None, (0.0, 0.0)) == pytest.approx(math.pi, abs=1e-13)
    # sector spanning the full upper half agrees with the half-disk form
    for u, v in POINTS:
        assert closed_form_sector(0, None, (u, v)) == pytest.approx(
            closed_form_half_disk((u, v)), rel=1e-12)


def test_branch_domain_errors():
    with pytest.raises(BranchDomainError):
        closed_form_disk((0.8, 0.8))
    with pytest.raises(BranchDomainError):
        closed_form_half_disk((1.2, 0.0))
    with pytest.raises(BranchDomainError):
        closed_form_triangle((1.0, 0.2))
    with pytest.raises(BranchDomainError):
        closed_form_rectangle(1, 1, (1.0, 0.3))


# ---------------------------------------------------------------------------
# boundary evaluation

def test_eval_matches_closed_forms(triangle, disk, half_disk):
    for u, v in POINTS:
        assert transform_eval(triangle, (u, v)).value == pytest.approx(
            closed_form_triangle((u, v)), rel=1e-10)
        assert transform_eval(disk, (u, v)).value == pytest.approx(
            closed_form_disk((u, v)), rel=1e-9)
        assert transform_eval(half_disk, (u, v)).value == pytest.approx(
            closed_form_half_disk((u, v)), rel=1e-8)


def test_eval_at_origin_is_twice_area(builder_domains):
    for name, p in builder_domains.items():
        tv = transform_eval(p, (0.0, 0.0))
        assert tv.value == pytest.approx(2 * float(signed_area(p)), rel=1e-10), name


def test_small_u_crossover_paths(triangle):
    # |u| below the crossover forces the dx representation
    tv = transform_eval(triangle, (1e-12, 0.2))
    assert tv.method == "boundary_dx"
    assert tv.value == pytest.approx(closed_form_triangle((1e-12, 0.2)), rel=1e-10)
    tv = transform_eval(triangle, (0.2, 1e-12))
    assert tv.method == "boundary_dy"
    # subtracted stable variants in the small-but-nonzero band
    tv = transform_eval(triangle, (1e-5, 1e-6))
    assert tv.value == pytest.approx(closed_form_triangle((1e-5, 1e-6)), rel=1e-10)


def test_two_representation_agreement(builder_domains, rng):
    # both boundary representations agree off the axes; the discrepancy
    # is surfaced as the error estimate
    for name, p in builder_domains.items():
        count = 0
        while count < 200:
            u, v = rng.uniform(0.05, 0.3, size=2) * rng.choice([-1, 1], size=2)
            tv = transform_eval(p, (u, v))
            assert tv.error_estimate <= 1e-9 * (1 + abs(tv.value)), (name, u, v)
            count += 1


def test_kernel_on_boundary_refusals(triangle, disk):
    with pytest.raises(KernelOnBoundary):
        transform_eval(triangle, (1.0, 0.0))        # through the vertex (1,0)
    with pytest.raises(KernelOnBoundary):
        transform_eval(triangle, (2.5, 0.0))        # crossing the interior
    with pytest.raises(KernelOnBoundary):
        transform_eval(disk, (0.6, 0.8))            # tangent line
    with pytest.raises(KernelOnBoundary):
        transform_eval(disk, (1.5, 0.0), fast_check=True)


def test_series_face(triangle, disk):
    s = transform_series(triangle, 4)
    assert all(c == 1 for c in s.coefficients.values())
    s = transform_series(disk, 8)
    for u, v in [(0.02, 0.02), (-0.03, 0.01), (0.0, 0.045)]:
        assert abs(s.eval(u, v) - transform_eval(disk, (u, v)).value) < 1e-6


# ---------------------------------------------------------------------------
# exact polygon transforms

def test_triangle_exact_transform(triangle):
    Ft = polygon_transform_exact(triangle)
    one = Poly2.const(1)
    u = Poly2.variable("x")
    v = Poly2.variable("y")
    assert Ft.num == one
    assert Ft.den == (one - u) * (one - v)
    assert Ft(F(0), F(0)) == 2 * signed_area(triangle)


def test_rectangle_exact_matches_closed_form():
    r = rectangle(1, 2)
    Fr = polygon_transform_exact(r)
    for u in (F(1, 7), F(-1, 5), F(0)):
        for v in (F(1, 9), F(-1, 4), F(0)):
            got = Fr(u, v)
            want = F(2) * (2 - u - 2 * v) / ((1 - u - 2 * v) * (1 - u) * (1 - 2 * v))
            assert got == want


def test_polygon_transform_denominator_is_vertex_product(rng):
    from polypol.acceptance import random_origin_polygon
    from polypol.fantappie import vertex_line
    for _ in range(5):
        p = random_origin_polygon(rng)
        Fp = polygon_transform_exact(p)
        prod = Poly2.const(1)
        for vx, vy in p.polygon_vertex_points():
            prod = prod * vertex_line(vx, vy)
        assert Fp.den == prod
        assert Fp.num.degree <= len(p.arcs) - 3


def test_polygon_transform_requires_polygon(disk):
    with pytest.raises(PolypolError):
        polygon_transform_exact(disk)


def test_affine_equivariance_exact(rng):
    # F_{T(P)}(w) = det(M) * (1 - <c, w>)^-3 * F_P(M^T w / (1 - <c, w>)),
    # checked as exact rational equality on a sample grid that exceeds
    # the degree bounds of the cross-multiplied polynomial identity.
    tri = [(F(0), F(0)), (F(1), F(0)), (F(0), F(1))]
    for _ in range(6):
        M = [[F(int(rng.integers(-3, 4))) for _ in range(2)] for _ in range(2)]
        det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
        if det <= 0:
            continue
        c = (F(int(rng.integers(-2, 3)), 3), F(int(rng.integers(-2, 3)), 3))
        verts = [(M[0][0] * x + M[0][1] * y + c[0],
                  M[1][0] * x + M[1][1] * y + c[1]) for x, y in tri]
        if len(set(verts)) != len(verts):
            continue
        P = polygon(tri)
        TP = polygon(verts)
        F_P = polygon_transform_exact(P)
        F_TP = polygon_transform_exact(TP)
        grid = [F(k, 11) for k in range(-8, 9, 2)]
        for u in grid:
            for v in grid:
                s = 1 - c[0] * u - c[1] * v
                if s == 0:
                    continue
                up = (M[0][0] * u + M[1][0] * v) / s
                vp = (M[0][1] * u + M[1][1] * v) / s
                try:
                    lhs = F_TP(u, v)
                    rhs = det * F_P(up, vp) / s ** 3
                except ZeroDivisionError:
                    continue
                assert lhs == rhs


# ---------------------------------------------------------------------------
# polar duality

def test_polar_duality_triangle():
    tri = polygon([(-1, -1), (2, -1), (-1, 2)])
    res = polar_duality_check(tri)
    assert res.adjoint.degree == 0 and res.degree_ok
    assert res.adjoint == Poly2.const(9)


def test_polar_duality_square_residues(square):
    # the polar body of the centered square is the diamond |u|+|v| <= 1;
    # the cleared numerator must be that diamond's canonical numerator,
    # which the canonical module verifies through vertex residues
    res = polar_duality_check(square)
    assert res.degree_ok
    assert res.adjoint == Poly2.const(8)
    diamond = polygon([(1, 0), (0, 1), (-1, 0), (0, -1)])
    form = canonical.canonical_form(diamond)
    assert form.kappa == 8
    residues = [canonical.iterated_residue(form, v)
                for v in diamond.genuine_vertices]
    assert all(r in (1, -1) for r in residues)


def test_polar_duality_hexagon():
    # centrally symmetric hexagon with rational vertices
    hexa = polygon([(2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2)])
    res = polar_duality_check(hexa)
    assert res.degree_ok and res.adjoint.degree <= 3


def test_polar_duality_origin_requirement(triangle):
    with pytest.raises(PolypolError):
        polar_duality_check(triangle)       # origin is a vertex, not interior
    shifted = polygon([(1, 1), (2, 1), (1, 2)])
    assert not origin_strictly_inside(shifted)
    with pytest.raises(PolypolError):
        polar_duality_check(shifted)


def test_origin_strictly_inside():
    assert origin_strictly_inside(polygon([(-1, -1), (1, -1), (0, 2)]))
    assert not origin_strictly_inside(polygon([(0, 0), (1, 0), (0, 1)]))
