import json
import math
from fractions import Fraction as F

import numpy as np
import pytest

from polypol.algebra import Poly1, Poly2, RatFunc1, normalize_sign_primitive
from polypol.errors import DegenerateArc, RegionFormatError
from polypol.region import (Polypol, RationalArc, from_json, implicitize,
                            polygon, rectangle, sector, sector_from_tau,
                            shoelace, signed_area, to_json, validate, _segment)


# ---------------------------------------------------------------------------
# builders

def test_standard_triangle_structure(triangle):
    assert len(triangle.arcs) == 3
    assert [v.point for v in triangle.vertices] == \
        [(F(0), F(0)), (F(1), F(0)), (F(0), F(1))]
    assert all(a.is_polynomial for a in triangle.arcs)


def test_unit_disk_structure(disk):
    assert len(disk.arcs) == 4
    assert all(v.smooth_joint for v in disk.vertices)
    assert disk.genuine_vertices == ()
    # closed chain of rational arcs on the circle
    for arc in disk.arcs:
        t, xs, ys = arc.sample(40)
        assert np.max(np.abs(xs ** 2 + ys ** 2 - 1)) < 1e-14


def test_sector_structure():
    sec = sector_from_tau(0, 1)
    # radial in, one circular arc, radial out
    assert len(sec.arcs) == 3
    genuine = [tuple(map(float, v.point)) for v in sec.genuine_vertices]
    assert (0.0, 0.0) in genuine
    sec_pi = sector_from_tau(F(1, 2), None)
    assert signed_area(sec_pi) == pytest.approx(
        (math.pi - 2 * math.atan(0.5)) / 2, abs=1e-12)


def test_sector_radian_builder_is_float_tier():
    sec = sector(0.0, math.pi / 2)
    assert sec.tier == "float"
    assert signed_area(sec) == pytest.approx(math.pi / 4, abs=1e-9)


def test_polygon_builder_errors():
    with pytest.raises(RegionFormatError):
        polygon([])
    with pytest.raises(RegionFormatError):
        polygon([(0, 0), (1, 0)])
    with pytest.raises(RegionFormatError):
        polygon([(0, 0), (1, 0), (1, 0), (0, 1)])
    with pytest.raises(RegionFormatError):       # clockwise
        polygon([(0, 0), (0, 1), (1, 0)])
    with pytest.raises(RegionFormatError):
        rectangle(-1, 2)


# ---------------------------------------------------------------------------
# signed area

def test_signed_areas(triangle, disk, half_disk):
    assert signed_area(triangle) == F(1, 2)
    assert abs(signed_area(disk) - math.pi) < 1e-12
    assert abs(signed_area(half_disk) - math.pi / 2) < 1e-12


def test_polygon_area_matches_shoelace(rng):
    for _ in range(10):
        n = rng.integers(3, 9)
        angles = np.sort(rng.uniform(0, 2 * math.pi, size=n))
        if np.min(np.diff(angles)) < 0.1:
            continue
        pts = [(F(float(2 * math.cos(a))).limit_denominator(50),
                F(float(2 * math.sin(a))).limit_denominator(50))
               for a in angles]
        if len(set(pts)) != len(pts) or shoelace(pts) <= 0:
            continue
        p = polygon(pts)
        assert signed_area(p) == shoelace(pts)


def test_reversal_negates_area(triangle, half_disk):
    def reversed_polypol(p):
        arcs = []
        for arc in reversed(p.arcs):
            a, b = arc.interval
            arcs.append(RationalArc(arc.x.compose_mobius(-1, a + b, 0, 1),
                                    arc.y.compose_mobius(-1, a + b, 0, 1),
                                    (a, b)))
        return Polypol(arcs, tier=p.tier)
    assert signed_area(reversed_polypol(triangle)) == -F(1, 2)
    rev = signed_area(reversed_polypol(half_disk))
    assert abs(rev + math.pi / 2) < 1e-12


# ---------------------------------------------------------------------------
# implicitization

def test_implicitize_examples(triangle, disk):
    assert implicitize(triangle.arcs[0]) == Poly2.variable("y")
    circle = Poly2({(0, 0): 1, (2, 0): -1, (0, 2): -1})
    assert normalize_sign_primitive(implicitize(disk.arcs[0])) == circle
    parabola = RationalArc(
        RatFunc1(Poly1([F(0), F(1)]), Poly1([F(1)])),
        RatFunc1(Poly1([F(0), F(0), F(1)]), Poly1([F(1)])), (0, 1))
    assert implicitize(parabola) == Poly2({(0, 1): 1, (2, 0): -1})


def test_implicitize_vanishes_on_samples(builder_domains):
    for p in builder_domains.values():
        for arc in p.arcs:
            eq = implicitize(arc)
            t, xs, ys = arc.sample(50)
            assert np.max(np.abs(eq.eval_float(xs, ys))) < 1e-10


def test_implicitize_degenerate_arc():
    const = RationalArc(RatFunc1.const(1), RatFunc1.const(2), (0, 1))
    with pytest.raises(DegenerateArc):
        implicitize(const)


# ---------------------------------------------------------------------------
# validation

def test_builders_validate_all_pass(builder_domains):
    for name, p in builder_domains.items():
        report = validate(p)
        assert report.all_passed, (name, report.failed())


def test_stacked_segments_fail_distinctness():
    stacked = Polypol([_segment((0, 0), (1, 0)), _segment((1, 0), (0, 0))])
    report = validate(stacked)
    names = {c.name: c.passed for c in report.checks}
    assert not names["reduced_boundary_distinctness"]
    assert not names["orientation"]


def test_reversed_square_fails_orientation():
    cw = Polypol([_segment((-1, -1), (-1, 1)), _segment((-1, 1), (1, 1)),
                  _segment((1, 1), (1, -1)), _segment((1, -1), (-1, -1))])
    report = validate(cw)
    check = next(c for c in report.checks if c.name == "orientation")
    assert not check.passed
    assert "-4" in check.detail


def test_broken_chain_fails_closure():
    broken = Polypol([_segment((0, 0), (1, 0)), _segment((2, 0), (0, 1)),
                      _segment((0, 1), (0, 0))])
    report = validate(broken)
    assert not next(c for c in report.checks if c.name == "closure").passed


def test_stationary_parametrization_detected():
    # x = t^2, y = t^3 has a cusp-style stationary point at t = 0
    cusp = RationalArc(
        RatFunc1(Poly1([F(0), F(0), F(1)]), Poly1([F(1)])),
        RatFunc1(Poly1([F(0), F(0), F(0), F(1)]), Poly1([F(1)])), (-1, 1))
    chain = Polypol([cusp, _segment((1, 1), (1, -1))])
    report = validate(chain)
    check = next(c for c in report.checks if c.name == "regular_parametrization")
    assert not check.passed


# ---------------------------------------------------------------------------
# JSON interchange

def test_json_roundtrip(builder_domains):
    for p in builder_domains.values():
        doc = json.loads(json.dumps(to_json(p)))
        q = from_json(doc)
        assert len(q.arcs) == len(p.arcs)
        assert q.tier == p.tier
        for a, b in zip(p.arcs, q.arcs):
            assert a.x == b.x and a.y == b.y and a.interval == b.interval


def test_from_json_malformed():
    with pytest.raises(RegionFormatError):
        from_json({"arcs": [{"x": {"num": ["1"]}}]})
    with pytest.raises(RegionFormatError):
        from_json({"arcs": [], "tier": "exact"})
    with pytest.raises(RegionFormatError):
        from_json({"arcs": [{"x": {"num": ["0", "1"], "den": ["1"]},
                             "y": {"num": ["0"], "den": ["1"]},
                             "interval": ["0", "1"]}],
                   "tier": "imaginary"})


def test_from_json_rejects_invalid_region():
    # clockwise square round-trips structurally but fails validation
    cw = Polypol([_segment((-1, -1), (-1, 1)), _segment((-1, 1), (1, 1)),
                  _segment((1, 1), (1, -1)), _segment((1, -1), (-1, -1))])
    with pytest.raises(RegionFormatError):
        from_json(to_json(cw))
