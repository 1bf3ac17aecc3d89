"""The normalized moment-generating transform of a plane region.

The central object is

    F(u, v) = 2 * integral over the region of dx dy / (1 - u x - v y)^3,

evaluated through its boundary representations: with Q = 1 - u x - v y,

    F = (1/u) * circulation of dy / Q^2      (u != 0)
    F = -(1/v) * circulation of dx / Q^2     (v != 0)
    F = circulation of (x dy - y dx) / Q^2   (everywhere)

The first two come from Stokes on d(dy/Q^2) and d(dx/Q^2); the third
from d[(x dy - y dx)/Q^2] and is the form used in the doubly-degenerate
corner u = v = 0, where it reproduces twice the area.  Because the
circulation of dy around a closed chain vanishes, the first form can
also be rewritten with the kernel 1/Q^2 - 1, which removes the 1/u
amplification whenever |v| <= |u|; the second form mirrors this.  The
evaluator picks whichever variant is well conditioned at the requested
point and, away from the axes, reports the discrepancy of the two
representations as its error estimate.

Closed forms for the catalog domains (disk, half-disk, sector,
triangle, rectangle) are evaluated on the real branch near the origin:
positive square root, arctangent in (-pi/2, pi/2).

For polygons the boundary integrals collapse to an exact rational
function of (u, v) whose denominator is the product of the vertex
lines 1 - x_V u - y_V v; clearing that product exposes a polynomial
numerator of total degree at most n - 3, the adjoint of the polar
polygon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .algebra import (Poly2, RatFunc2, poly2_divmod, real_roots,
                      to_fraction)
from .config import DEFAULT, RunConfig
from .errors import (BranchDomainError, InvariantViolation, KernelOnBoundary,
                     PolypolError, QuadratureError)
from .moments import SeriesExpansion, normalized_mgf_series
from .quadrature import integrate_vec
from .region import Polypol, RationalArc


class DualPoint(NamedTuple):
    u: float
    v: float


@dataclass(frozen=True)
class TransformValue:
    value: float
    method: str                  # boundary_dy | boundary_dx | closed_form | series
    error_estimate: float


class PolarDuality(NamedTuple):
    adjoint: Poly2
    degree_ok: bool


# ---------------------------------------------------------------------------
# kernel-on-boundary guard

def kernel_clearance_check(p: Polypol, u: float, v: float,
                           config: RunConfig = DEFAULT, fast: bool = False) -> None:
    """Raise KernelOnBoundary if 1 - u x - v y vanishes within kernel_tol
    of any arc's parameter interval.

    The default path rationalizes (u, v) exactly and isolates real
    roots of the cleared kernel polynomial with Sturm sequences; the
    fast path (grid scans) uses companion-matrix roots instead.
    """
    tol = config.kernel_tol
    for idx, arc in enumerate(p.arcs):
        a, b = float(arc.interval[0]), float(arc.interval[1])
        if fast:
            cd, xd, yd = arc.cleared_float
            m = max(len(cd), len(xd), len(yd))
            coeffs = np.zeros(m)
            coeffs[:len(cd)] += cd
            coeffs[:len(xd)] -= u * xd
            coeffs[:len(yd)] -= v * yd
            scale = float(np.max(np.abs(coeffs)))
            if scale == 0.0:
                raise KernelOnBoundary("kernel vanishes identically on an arc",
                                       arc_index=idx)
            cc = coeffs / scale
            nz = np.nonzero(np.abs(cc) > 1e-14)[0]
            if len(nz) == 0 or nz[-1] == 0:
                if abs(cc[0] if len(cc) else 0.0) > 1e-14:
                    continue
                raise KernelOnBoundary("kernel vanishes identically on an arc",
                                       arc_index=idx)
            roots = np.roots(cc[:nz[-1] + 1][::-1])
            for r in roots:
                if abs(r.imag) <= 1e-8 * (1 + abs(r.real)) and \
                        a - tol <= r.real <= b + tol:
                    raise KernelOnBoundary(
                        f"moving line meets arc {idx} near t = {r.real:.6g}",
                        arc_index=idx, parameter=float(r.real))
            continue
        D, X, Y = arc.cleared
        c = D - X.scale(to_fraction(u)) - Y.scale(to_fraction(v))
        if c.is_zero:
            raise KernelOnBoundary("kernel vanishes identically on an arc",
                                   arc_index=idx)
        if c.degree < 1:
            continue
        lo = arc.interval[0] - to_fraction(tol)
        hi = arc.interval[1] + to_fraction(tol)
        hits = real_roots(c, (lo, hi), tol=config.root_tol)
        if hits:
            t0 = float(hits[0][0])
            raise KernelOnBoundary(
                f"moving line meets arc {idx} near t = {t0:.6g}",
                arc_index=idx, parameter=t0)


# ---------------------------------------------------------------------------
# boundary evaluation

def _arc_rows(arc: RationalArc, u, v, forms):
    """Integrand rows for the requested boundary forms on one arc."""
    def f(t):
        x = arc.fx(t)
        y = arc.fy(t)
        dx = arc.fdx(t)
        dy = arc.fdy(t)
        Q = 1.0 - u * x - v * y
        Q2 = Q * Q
        rows = []
        for form in forms:
            if form == "dy":
                rows.append(dy / Q2)
            elif form == "dy_sub":
                rows.append((x + (v / u) * y) * (1.0 + Q) * dy / Q2)
            elif form == "dx":
                rows.append(dx / Q2)
            elif form == "dx_sub":
                rows.append((y + (u / v) * x) * (1.0 + Q) * dx / Q2)
            elif form == "centered":
                rows.append((x * dy - y * dx) / Q2)
            else:
                raise ValueError(form)
        return np.vstack(rows)
    return f


def _boundary_sums(p: Polypol, u: float, v: float, forms, config: RunConfig):
    totals = np.zeros(len(forms))
    errors = np.zeros(len(forms))
    for arc in p.arcs:
        res = integrate_vec(_arc_rows(arc, u, v, forms),
                            float(arc.interval[0]), float(arc.interval[1]),
                            config, abs_tol=1e-14)
        if not res.converged:
            raise QuadratureError(
                "transform quadrature budget exhausted "
                f"(achieved error estimate {float(np.max(res.error)):.3e})",
                error_estimate=float(np.max(res.error)))
        totals += res.value
        errors += res.error
    return dict(zip(forms, totals)), dict(zip(forms, errors))


def transform_eval(p: Polypol, w, config: RunConfig = DEFAULT,
                   fast_check: bool = False) -> TransformValue:
    """Evaluate the transform at a dual point by boundary quadrature.

    Refuses (KernelOnBoundary) when the moving line passes within
    kernel_tol of the boundary.  Away from the axes both boundary
    representations are computed and their discrepancy is the error
    estimate; near an axis only the well-conditioned representation is
    used; at the origin corner the centered form takes over and the
    value is twice the area by construction.
    """
    u, v = float(w[0]), float(w[1])
    if not (math.isfinite(u) and math.isfinite(v)):
        raise PolypolError("dual point must be finite")
    kernel_clearance_check(p, u, v, config, fast=fast_check)
    eps = config.crossover

    if max(abs(u), abs(v)) <= eps:
        sums, errs = _boundary_sums(p, u, v, ["centered"], config)
        return TransformValue(float(sums["centered"]), "boundary_dy",
                              float(errs["centered"]))

    forms = []
    dy_variant = dx_variant = None
    if abs(u) > eps:
        dy_variant = "dy" if abs(u) >= 1e-3 or abs(u) < abs(v) else "dy_sub"
        forms.append(dy_variant)
    if abs(v) > eps:
        dx_variant = "dx" if abs(v) >= 1e-3 or abs(v) < abs(u) else "dx_sub"
        forms.append(dx_variant)
    sums, errs = _boundary_sums(p, u, v, forms, config)

    value_dy = value_dx = None
    err_dy = err_dx = 0.0
    if dy_variant is not None:
        raw, raw_err = sums[dy_variant], errs[dy_variant]
        value_dy = raw / u if dy_variant == "dy" else raw
        err_dy = raw_err / abs(u) if dy_variant == "dy" else raw_err
    if dx_variant is not None:
        raw, raw_err = sums[dx_variant], errs[dx_variant]
        value_dx = -raw / v if dx_variant == "dx" else raw
        err_dx = raw_err / abs(v) if dx_variant == "dx" else raw_err

    prefer_dy = abs(u) >= abs(v)
    if value_dy is not None and (prefer_dy or value_dx is None):
        value, method, qerr = value_dy, "boundary_dy", err_dy
    else:
        value, method, qerr = value_dx, "boundary_dx", err_dx
    if value_dy is not None and value_dx is not None:
        estimate = abs(value_dy - value_dx) + qerr
    else:
        estimate = qerr
    return TransformValue(float(value), method, float(estimate))


def transform_series(p: Polypol, order: int, config: RunConfig = DEFAULT) -> SeriesExpansion:
    """Taylor series of the transform at the origin: the normalized
    moment-generating series."""
    return normalized_mgf_series(p, order, config)


# ---------------------------------------------------------------------------
# closed-form catalog (real branch near the origin)

def _rho2(u: float, v: float) -> float:
    r2 = 1.0 - u * u - v * v
    if r2 <= 0:
        raise BranchDomainError(
            f"outside the real branch: 1 - u^2 - v^2 = {r2:.6g} <= 0",
            condition="1 - u^2 - v^2 > 0")
    return r2


def closed_form_disk(w) -> float:
    """2*pi*(1 - u^2 - v^2)^(-3/2) on the unit disk's branch domain."""
    u, v = float(w[0]), float(w[1])
    return 2.0 * math.pi * _rho2(u, v) ** -1.5


def closed_form_half_disk(w) -> float:
    """Upper half-disk transform: arctangent plus rational correction."""
    u, v = float(w[0]), float(w[1])
    r2 = _rho2(u, v)
    rho = math.sqrt(r2)
    return (math.pi + 2.0 * math.atan(v / rho)) / (r2 * rho) \
        + 2.0 * v / ((1.0 - u * u) * r2)


def _sector_antiderivative(s: float, u: float, v: float, rho: float) -> float:
    r2 = rho * rho
    lead = 2.0 * math.atan(s / rho) / (rho * r2) if math.isfinite(s) \
        else math.copysign(math.pi, s) / (rho * r2)
    if not math.isfinite(s):
        return lead
    tail = (2.0 * s * (u + u * u + v * v) / r2 - 2.0 * v) / (s * s + r2)
    return lead + tail / (1.0 + u)


def closed_form_sector(tau0, tau1, w) -> float:
    """Sector transform via the arctangent antiderivative.

    tau0, tau1 are the half-angle tangents of the angular interval;
    tau1 = None encodes the angle pi (parameter at infinity).
    """
    u, v = float(w[0]), float(w[1])
    rho = math.sqrt(_rho2(u, v))
    s0 = (1.0 + u) * float(tau0) - v
    s1 = math.inf if tau1 is None else (1.0 + u) * float(tau1) - v
    return _sector_antiderivative(s1, u, v, rho) \
        - _sector_antiderivative(s0, u, v, rho)


def closed_form_triangle(w) -> float:
    """Standard triangle: 1/((1-u)(1-v))."""
    u, v = float(w[0]), float(w[1])
    if u == 1.0 or v == 1.0:
        raise BranchDomainError("pole of the triangle transform",
                                condition="u != 1 and v != 1")
    return 1.0 / ((1.0 - u) * (1.0 - v))


def closed_form_rectangle(a, b, w) -> float:
    """[0,a]x[0,b] rectangle, in the form with the origin limit built in.

    Algebraically identical to
    (1/(u v)) (1/(1-au-bv) - 1/(1-au) - 1/(1-bv) + 1); combining the
    four terms over the common denominator gives
    a b (2 - a u - b v) / ((1-au-bv)(1-au)(1-bv)), which is regular at
    u = 0 and v = 0 with value 2ab at the origin.
    """
    a, b = float(a), float(b)
    u, v = float(w[0]), float(w[1])
    d1 = 1.0 - a * u - b * v
    d2 = 1.0 - a * u
    d3 = 1.0 - b * v
    if d1 == 0.0 or d2 == 0.0 or d3 == 0.0:
        raise BranchDomainError("pole of the rectangle transform",
                                condition="(1-au-bv)(1-au)(1-bv) != 0")
    return a * b * (2.0 - a * u - b * v) / (d1 * d2 * d3)


# ---------------------------------------------------------------------------
# exact polygon transform and polar duality

def vertex_line(vx, vy) -> Poly2:
    """The dual line 1 - x_V u - y_V v of a plane point."""
    return Poly2.linear(Fraction(1), -to_fraction(vx), -to_fraction(vy))


def polygon_transform_exact(p: Polypol) -> RatFunc2:
    """Exact rational transform of a polygon.

    Summing the per-edge boundary integrals over a common denominator
    gives numerator sum_e (y_{e+1} - y_e) * prod_{V not on e} L_V over
    u * prod_V L_V with L_V = 1 - x_V u - y_V v; the factor u always
    cancels (the transform is analytic across u = 0), leaving the
    denominator exactly prod_V L_V.
    """
    if not p.is_polygonal:
        raise PolypolError("exact transform requires a polygonal region")
    verts = p.polygon_vertex_points()
    n = len(verts)
    lines = [vertex_line(vx, vy) for vx, vy in verts]
    num = Poly2()
    for e in range(n):
        dy = to_fraction(verts[(e + 1) % n][1]) - to_fraction(verts[e][1])
        if not dy:
            continue
        prod = Poly2.const(dy)
        for k in range(n):
            if k != e and k != (e + 1) % n:
                prod = prod * lines[k]
        num = num + prod
    if any(i == 0 for (i, j) in num.terms):
        raise InvariantViolation("polygon numerator not divisible by u")
    num_over_u = Poly2({(i - 1, j): c for (i, j), c in num.terms.items()})
    den = Poly2.const(1)
    for line in lines:
        den = den * line
    return RatFunc2(num_over_u, den)


def origin_strictly_inside(p: Polypol) -> bool:
    """Exact ray-casting test for a polygonal region."""
    verts = p.polygon_vertex_points()
    n = len(verts)
    crossings = 0
    for i in range(n):
        px, py = verts[i]
        qx, qy = verts[(i + 1) % n]
        if px == 0 and py == 0:
            return False
        if (py <= 0) != (qy <= 0):
            x_int = px + (qx - px) * (-py) / (qy - py)
            if x_int == 0:
                return False                    # boundary through the origin
            if x_int > 0:
                crossings += 1
        elif py == 0 and qy == 0 and min(px, qx) <= 0 <= max(px, qx):
            return False
    return crossings % 2 == 1


def polar_duality_check(p: Polypol) -> PolarDuality:
    """Clear the vertex-line product from the exact polygon transform.

    The result must be a polynomial (zero remainder) of total degree at
    most n - 3 for an n-gon; it is the adjoint of the polar polygon.
    Requires the origin strictly inside the region so the polar body is
    bounded.
    """
    if not origin_strictly_inside(p):
        raise PolypolError("origin must be strictly inside the polygon")
    F = polygon_transform_exact(p)
    verts = p.polygon_vertex_points()
    product = Poly2.const(1)
    for vx, vy in verts:
        product = product * vertex_line(vx, vy)
    quotient, remainder = poly2_divmod(F.num * product, F.den)
    if not remainder.is_zero:
        raise InvariantViolation(
            "vertex-line product does not clear the polygon transform")
    degree_ok = quotient.degree <= len(verts) - 3
    return PolarDuality(adjoint=quotient, degree_ok=degree_ok)
