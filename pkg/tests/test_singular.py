import math
from fractions import Fraction as F

import numpy as np
import pytest

from polypol.algebra import Poly2, normalize_sign_primitive
from polypol.errors import ExponentProbeError, PolypolError
from polypol.region import sector_from_tau
from polypol.singular import (SCAN_DISCLAIMER, conjecture_scan, probe_exponent,
                              singular_support)

CONIC = Poly2({(0, 0): 1, (2, 0): -1, (0, 2): -1})


# ---------------------------------------------------------------------------
# singular support

def test_disk_support_is_dual_conic(disk):
    sup = singular_support(disk)
    assert sup.vertex_lines == ()
    assert len(sup.dual_curves) == 1
    assert normalize_sign_primitive(sup.dual_curves[0]) == CONIC


def test_half_disk_support(half_disk):
    sup = singular_support(half_disk)
    lines = {frozenset(l.terms.items()) for l in sup.vertex_lines}
    assert lines == {frozenset(Poly2.linear(1, -1, 0).terms.items()),
                     frozenset(Poly2.linear(1, 1, 0).terms.items())}
    assert sup.never_singular == (False, False)
    assert [normalize_sign_primitive(c) for c in sup.dual_curves] == [CONIC]


def test_triangle_support(triangle):
    sup = singular_support(triangle)
    assert sup.dual_curves == ()
    # the dual of the vertex at the origin is the constant 1
    flags = dict(zip(sup.vertex_lines, sup.never_singular))
    assert flags[Poly2.const(1)] is True
    active = sup.active_components()
    assert Poly2.linear(1, -1, 0) in active and Poly2.linear(1, 0, -1) in active
    assert len(active) == 2


def test_sector_support_has_conic_and_three_lines():
    sec = sector_from_tau(F(1, 3), 1)
    sup = singular_support(sec)
    assert any(normalize_sign_primitive(c) == CONIC for c in sup.dual_curves)
    assert len(sup.vertex_lines) == 3
    assert sum(sup.never_singular) == 1        # the origin vertex


def test_dual_curve_tangency_samples(disk):
    # every retained factor reconstructs honest tangent lines: sampled
    # points of the dual conic pull back to double kernel roots
    sup = singular_support(disk)
    curve = sup.dual_curves[0]
    for theta in np.linspace(0.1, 2 * math.pi, 10):
        u, v = math.cos(theta), math.sin(theta)
        assert abs(curve.eval_float(u, v)) < 1e-12


def test_support_distance(disk):
    sup = singular_support(disk)
    d, _ = sup.distance(0.5, 0.0)
    assert d == pytest.approx(0.5, abs=1e-9)
    d, _ = sup.distance(1.2, 0.0)
    assert d == pytest.approx(0.2, abs=1e-9)


# ---------------------------------------------------------------------------
# exponent probes

def test_disk_exponent_minus_three_halves(disk):
    sup = singular_support(disk)
    est = probe_exponent(disk, sup.dual_curves[0], (1.0, 0.0), (-1.0, 0.0))
    assert est.exponent == pytest.approx(-1.5, abs=0.05)
    assert est.classification == "half_integral"
    assert est.residual < 0.05
    assert len(est.samples) >= 10


def test_triangle_pole_exponent(triangle):
    line = Poly2.linear(1, -1, 0)
    est = probe_exponent(triangle, line, (1.0, 0.0), (-1.0, 0.0))
    assert est.exponent == pytest.approx(-1.0, abs=0.05)
    assert est.classification == "pole_integer"


def test_off_support_probe_is_regular(triangle):
    # the line 1 + u is not in the triangle's support: the transform is
    # analytic along the approach, so the exponent is near zero with
    # bounded variation
    fake = Poly2.linear(1, 1, 0)
    est = probe_exponent(triangle, fake, (-1.0, 0.0), (1.0, 0.0))
    assert abs(est.exponent) <= 0.1
    assert est.classification == "regular"
    vals = [f for _, f in est.samples]
    assert max(vals) - min(vals) < 0.1 * max(vals)


def test_probe_error_lists_usable_samples(triangle):
    # approaching u -> 1 from the refused side: every sample is refused
    line = Poly2.linear(1, -1, 0)
    with pytest.raises(ExponentProbeError) as exc:
        probe_exponent(triangle, line, (1.0, 0.0), (1.0, 0.0))
    assert exc.value.usable == []


def test_probe_requires_base_near_component(triangle):
    with pytest.raises(PolypolError):
        probe_exponent(triangle, Poly2.linear(1, -1, 0), (50.0, 40.0), (-1, 0))


# ---------------------------------------------------------------------------
# conjecture scan

def test_scan_triangle_containment(triangle):
    rep = conjecture_scan(triangle, grid=51)
    assert rep.flagged_contained
    assert rep.note == SCAN_DISCLAIMER
    # flags, when any, sit near u = 1 or v = 1
    for r in rep.flagged:
        assert min(abs(1 - r.u), abs(1 - r.v)) < 1e-3


def test_scan_disk_statuses(disk):
    rep = conjecture_scan(disk, grid=41)
    assert rep.flagged_contained
    statuses = {r.status for r in rep.rows}
    assert "kernel_on_boundary" in statuses and "ok" in statuses
    # the refused zone is exactly where the moving line meets the disk:
    # u^2 + v^2 >= 1 up to grid resolution
    for r in rep.rows:
        rad = math.hypot(r.u, r.v)
        if r.status == "kernel_on_boundary":
            assert rad > 1 - 1e-6
        elif r.status == "ok":
            assert rad < 1 + 1e-6


def test_scan_rows_carry_distances(half_disk):
    rep = conjecture_scan(half_disk, grid=31)
    assert rep.flagged_contained
    onaxis = next(r for r in rep.rows if abs(r.u - 1.2) < 0.1 and abs(r.v + 2) < 1e-9)
    assert math.isfinite(onaxis.distance)


def test_scan_containment_remaining_builders():
    # acceptance covers triangle, half-disk, disk, square at grid 101;
    # the sector and rectangle builders get the same treatment here
    from polypol.region import rectangle
    for p in (sector_from_tau(F(1, 3), 1), rectangle(1, 2)):
        rep = conjecture_scan(p, grid=101)
        assert rep.flagged_contained
