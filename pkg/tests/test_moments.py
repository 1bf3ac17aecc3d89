import math
from fractions import Fraction as F
from math import comb, factorial

import numpy as np
import pytest

from polypol.config import DEFAULT
from polypol.moments import (moment, moment_dx_oracle, moment_table,
                             normalization_factor, normalized_mgf_series)
from polypol.quadrature import integrate_vec
from polypol.region import polygon, rectangle


def dirichlet_moment(i, j):
    # exact moment of the standard triangle from the all-ones series of
    # its transform: (i+j+2)!/(i! j!) * m_ij = 1
    return F(factorial(i) * factorial(j), factorial(i + j + 2))


def test_triangle_moments_exact(triangle):
    assert moment(triangle, 0, 0) == F(1, 2)
    for i in range(5):
        for j in range(5 - i):
            assert moment(triangle, i, j) == dirichlet_moment(i, j)


def test_moment_table_triangle(triangle):
    table = moment_table(triangle, 2)
    assert table.exact
    for (i, j), v in table.values.items():
        assert v == dirichlet_moment(i, j)


def test_rectangle_unit_square_table():
    table = moment_table(rectangle(1, 1), 1)
    assert table[(0, 0)] == 1 and table[(1, 0)] == F(1, 2) \
        and table[(0, 1)] == F(1, 2)


def test_disk_moments(disk):
    # polar-coordinates oracle: m_{2a,2b} = 2 pi (2a-1)!! (2b-1)!! / ...
    # computed directly for the low orders asserted here
    table = moment_table(disk, 2)
    assert abs(table[(0, 0)] - math.pi) < 1e-12
    assert abs(table[(2, 0)] - math.pi / 4) < 1e-12
    assert abs(table[(0, 2)] - math.pi / 4) < 1e-12
    for pair in [(1, 0), (0, 1), (1, 1)]:
        assert abs(table[pair]) < 1e-12
    assert abs(moment(disk, 1, 0)) < 1e-12


def test_moment_input_validation(triangle):
    with pytest.raises(ValueError):
        moment(triangle, -1, 0)
    with pytest.raises(ValueError):
        moment_table(triangle, -2)


# ---------------------------------------------------------------------------
# Green-reduction consistency: the dy and dx routes agree

def test_green_consistency_exact(triangle, rng):
    for i in range(4):
        for j in range(4 - i):
            assert moment(triangle, i, j) == moment_dx_oracle(triangle, i, j)
    for _ in range(5):
        pts = sorted(rng.uniform(0, 2 * math.pi, size=5))
        verts = [(F(float(math.cos(a) * 1.5)).limit_denominator(40),
                  F(float(math.sin(a) * 1.5)).limit_denominator(40))
                 for a in pts]
        if len(set(verts)) != len(verts):
            continue
        try:
            p = polygon(verts)
        except Exception:
            continue
        for (i, j) in [(0, 0), (2, 1), (1, 3)]:
            assert moment(p, i, j) == moment_dx_oracle(p, i, j)


def test_green_consistency_curved(builder_domains):
    for name, p in builder_domains.items():
        for (i, j) in [(0, 0), (1, 0), (2, 1)]:
            dy = float(moment(p, i, j))
            dx = float(moment_dx_oracle(p, i, j))
            assert abs(dy - dx) < 1e-10, (name, i, j)


# ---------------------------------------------------------------------------
# translation covariance (exact tier)

def test_translation_covariance():
    base = polygon([(0, 0), (2, 0), (1, 2)])
    c, d = F(3, 7), F(-1, 3)
    moved = polygon([(x + c, y + d) for x, y in
                     [(0, 0), (2, 0), (1, 2)]])
    table = moment_table(base, 3)
    for i in range(4):
        for j in range(4 - i):
            expected = sum(comb(i, a) * comb(j, b)
                           * c ** (i - a) * d ** (j - b) * table[(a, b)]
                           for a in range(i + 1) for b in range(j + 1))
            assert moment(moved, i, j) == expected


# ---------------------------------------------------------------------------
# normalized series

def test_triangle_series_all_ones(triangle):
    s = normalized_mgf_series(triangle, 4)
    assert all(c == 1 for c in s.coefficients.values())


def test_series_constant_terms(disk, half_disk):
    assert abs(normalized_mgf_series(disk, 0)[(0, 0)] - 2 * math.pi) < 1e-12
    assert abs(normalized_mgf_series(half_disk, 0)[(0, 0)] - math.pi) < 1e-12


def test_disk_series_order_two(disk):
    s = normalized_mgf_series(disk, 2)
    assert abs(s[(2, 0)] - 3 * math.pi) < 1e-10
    assert abs(s[(0, 2)] - 3 * math.pi) < 1e-10
    assert abs(s[(1, 1)]) < 1e-10


# ---------------------------------------------------------------------------
# series coefficients vs differentiated boundary integral (independent route)

def centered_taylor_coefficient(p, i, j):
    """(i+j+1)!/(i! j!) * circulation of x^i y^j (x dy - y dx): the
    Taylor coefficient of the transform at the origin obtained by
    differentiating the centered boundary kernel under the integral."""
    total = 0.0
    for arc in p.arcs:
        def f(t, arc=arc):
            x = arc.fx(t)
            y = arc.fy(t)
            w = x ** i * y ** j * (x * arc.fdy(t) - y * arc.fdx(t))
            return np.asarray(w)[None, :]
        res = integrate_vec(f, float(arc.interval[0]), float(arc.interval[1]),
                            DEFAULT, abs_tol=1e-15)
        total += res.scalar
    return factorial(i + j + 1) // (factorial(i) * factorial(j)) * total


def test_series_matches_differentiated_boundary_integral(builder_domains):
    for name, p in builder_domains.items():
        s = normalized_mgf_series(p, 6)
        for (i, j), c in s.coefficients.items():
            oracle = centered_taylor_coefficient(p, i, j)
            assert abs(float(c) - oracle) < 1e-8, (name, i, j)


def test_normalization_factor():
    assert normalization_factor(0, 0) == 2
    assert normalization_factor(1, 0) == 6
    assert normalization_factor(2, 2) == 180
