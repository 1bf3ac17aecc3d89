"""Region model: bounded plane domains whose boundary is a closed chain
of oriented rational arcs meeting at finitely many vertices.

An arc is a pair of univariate rational functions on a parameter
interval; a region is an ordered chain of arcs with positive signed
area.  Builders cover the catalog domains (polygons, rectangles, the
unit disk, the upper half-disk, circular sectors); JSON is the single
interchange format and the builders emit the same structure.

Circular pieces use the rational parametrization
x = (1 - t^2)/(1 + t^2), y = 2 t/(1 + t^2) composed with rotations so
that every arc keeps |t| <= 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .algebra import (Poly1, Poly2, RatFunc1, format_rational,
                      normalize_sign_primitive, poly1_divmod, poly1_from_json,
                      poly1_gcd, poly1_lcm, poly1_to_json, poly2_divmod,
                      poly2_gcd, real_roots, resultant_in_tau, squarefree_part,
                      to_fraction)
from .config import DEFAULT, RunConfig
from .errors import (DegenerateArc, InvariantViolation, PolypolError,
                     RegionFormatError)
from .quadrature import integrate_vec


class RationalArc:
    """One oriented boundary arc: t in [a, b] -> (x(t), y(t)).

    The coordinate functions are reduced rational functions whose
    denominators must not vanish on the closed parameter interval
    (certified by Sturm sequences in the validator).
    """

    def __init__(self, x: RatFunc1, y: RatFunc1, interval,
                 smooth_joint_end: bool = False):
        self.x = x
        self.y = y
        a, b = to_fraction(interval[0]), to_fraction(interval[1])
        if not a < b:
            raise RegionFormatError("arc interval must satisfy a < b")
        self.interval = (a, b)
        self.smooth_joint_end = smooth_joint_end

    # -- exact endpoints -----------------------------------------------
    def point(self, t):
        return (self.x(t), self.y(t))

    @cached_property
    def start(self):
        return self.point(self.interval[0])

    @cached_property
    def end(self):
        return self.point(self.interval[1])

    @property
    def is_polynomial(self) -> bool:
        return self.x.is_polynomial and self.y.is_polynomial

    @cached_property
    def dx(self) -> RatFunc1:
        return self.x.deriv()

    @cached_property
    def dy(self) -> RatFunc1:
        return self.y.deriv()

    # -- float-tier evaluation ------------------------------------------
    @cached_property
    def _float_coeffs(self):
        def fc(p: Poly1):
            return np.array([float(c) for c in p.coeffs], dtype=float) \
                if p.coeffs else np.zeros(1)
        return {
            "xn": fc(self.x.num), "xd": fc(self.x.den),
            "yn": fc(self.y.num), "yd": fc(self.y.den),
            "dxn": fc(self.dx.num), "dxd": fc(self.dx.den),
            "dyn": fc(self.dy.num), "dyd": fc(self.dy.den),
        }

    def fx(self, t):
        c = self._float_coeffs
        return _polyval(c["xn"], t) / _polyval(c["xd"], t)

    def fy(self, t):
        c = self._float_coeffs
        return _polyval(c["yn"], t) / _polyval(c["yd"], t)

    def fdx(self, t):
        c = self._float_coeffs
        return _polyval(c["dxn"], t) / _polyval(c["dxd"], t)

    def fdy(self, t):
        c = self._float_coeffs
        return _polyval(c["dyn"], t) / _polyval(c["dyd"], t)

    def sample(self, n: int):
        t = np.linspace(float(self.interval[0]), float(self.interval[1]), n)
        return t, self.fx(t), self.fy(t)

    # -- cleared kernel data ----------------------------------------------
    @cached_property
    def cleared(self):
        """(D, X, Y) with D = lcm of the denominators, x = X/D, y = Y/D.

        The kernel polynomial D - u X - v Y has the same roots on the
        interval as 1 - u x - v y because D is nonvanishing there.
        """
        D = poly1_lcm(self.x.den, self.y.den)
        qx, rx = poly1_divmod(D, self.x.den)
        qy, ry = poly1_divmod(D, self.y.den)
        assert rx.is_zero and ry.is_zero
        return (D, self.x.num * qx, self.y.num * qy)

    @cached_property
    def cleared_float(self):
        D, X, Y = self.cleared
        tofc = lambda p: np.array([float(c) for c in p.coeffs] or [0.0])
        return tofc(D), tofc(X), tofc(Y)

    def __repr__(self):
        a, b = self.interval
        return (f"RationalArc({self.x!r}, {self.y!r}, "
                f"[{format_rational(a)}, {format_rational(b)}])")


def _polyval(coeffs: np.ndarray, t):
    return np.polynomial.polynomial.polyval(t, coeffs)


@dataclass(frozen=True)
class Vertex:
    point: tuple
    incoming: int
    outgoing: int
    smooth_joint: bool = False


class Polypol:
    """Ordered closed chain of rational arcs, counterclockwise.

    The constructor is deliberately permissive so that the validator
    can inspect broken chains; builders and the JSON loader always
    validate their output.
    """

    def __init__(self, arcs, tier: str = "exact"):
        if not arcs:
            raise RegionFormatError("a polypol needs at least one arc")
        self.arcs = tuple(arcs)
        self.tier = tier

    @cached_property
    def vertices(self) -> tuple[Vertex, ...]:
        n = len(self.arcs)
        out = []
        for i, arc in enumerate(self.arcs):
            out.append(Vertex(point=arc.start, incoming=(i - 1) % n,
                              outgoing=i,
                              smooth_joint=self.arcs[(i - 1) % n].smooth_joint_end))
        return tuple(out)

    @property
    def genuine_vertices(self) -> tuple[Vertex, ...]:
        return tuple(v for v in self.vertices if not v.smooth_joint)

    @property
    def is_polygonal(self) -> bool:
        return all(a.is_polynomial and a.x.num.degree <= 1 and a.y.num.degree <= 1
                   for a in self.arcs)

    def polygon_vertex_points(self):
        if not self.is_polygonal:
            raise PolypolError("not a polygonal region")
        return [v.point for v in self.vertices]

    def __repr__(self):
        return f"Polypol({len(self.arcs)} arcs, tier={self.tier!r})"


# ---------------------------------------------------------------------------
# signed area

def signed_area(p: Polypol, config: RunConfig = DEFAULT):
    """(1/2) * circulation of (x dy - y dx), arc by arc.

    Exact Fraction for chains of polynomial arcs, float otherwise.
    """
    if all(a.is_polynomial for a in p.arcs):
        total = Fraction(0)
        for arc in p.arcs:
            integrand = arc.x.num * arc.y.num.deriv() - arc.y.num * arc.x.num.deriv()
            anti = integrand.antideriv()
            a, b = arc.interval
            total += anti(b) - anti(a)
        return total / 2
    total = 0.0
    for arc in p.arcs:
        f = lambda t, arc=arc: np.asarray(
            arc.fx(t) * arc.fdy(t) - arc.fy(t) * arc.fdx(t))[None, :]
        res = integrate_vec(f, float(arc.interval[0]), float(arc.interval[1]),
                            config, abs_tol=1e-15)
        total += res.scalar
    return total / 2.0


def shoelace(points) -> Fraction:
    """Signed area of a polygon from its vertex list, exact."""
    total = Fraction(0)
    n = len(points)
    for i in range(n):
        x0, y0 = points[i]
        x1, y1 = points[(i + 1) % n]
        total += to_fraction(x0) * to_fraction(y1) - to_fraction(x1) * to_fraction(y0)
    return total / 2


# ---------------------------------------------------------------------------
# builders

def _segment(P, Q, smooth: bool = False) -> RationalArc:
    px, py = map(to_fraction, P)
    qx, qy = map(to_fraction, Q)
    one = Poly1([Fraction(1)])
    return RationalArc(RatFunc1(Poly1([px, qx - px]), one, reduce=False),
                       RatFunc1(Poly1([py, qy - py]), one, reduce=False),
                       (0, 1), smooth_joint_end=smooth)


def polygon(vertices, tier: str = "exact") -> Polypol:
    """Counterclockwise polygon from distinct vertices.

    Raises on fewer than three vertices, repeated vertices, or a
    clockwise (nonpositive shoelace) orientation.
    """
    pts = [(to_fraction(x), to_fraction(y)) for x, y in vertices]
    if len(pts) < 3:
        raise RegionFormatError("polygon needs at least three vertices")
    if len(set(pts)) != len(pts):
        raise RegionFormatError("polygon vertices must be pairwise distinct")
    area = shoelace(pts)
    if area <= 0:
        raise RegionFormatError(
            f"vertices must be in counterclockwise order (signed area {area})")
    arcs = [_segment(pts[i], pts[(i + 1) % len(pts)]) for i in range(len(pts))]
    return Polypol(arcs, tier=tier)


def rectangle(a, b) -> Polypol:
    a, b = to_fraction(a), to_fraction(b)
    if a <= 0 or b <= 0:
        raise RegionFormatError("rectangle sides must be positive")
    return polygon([(0, 0), (a, 0), (a, b), (0, b)])


def standard_triangle() -> Polypol:
    return polygon([(0, 0), (1, 0), (0, 1)])


def centered_square() -> Polypol:
    return polygon([(-1, -1), (1, -1), (1, 1), (-1, 1)])


_ROTATIONS = ((1, 0, 0, 1), (0, -1, 1, 0), (-1, 0, 0, -1), (0, 1, -1, 0))


def _circle_piece(rotation, t0, t1, smooth_end: bool) -> RationalArc:
    """Rotated copy of the basic circle parametrization on [t0, t1]."""
    a, b, c, d = rotation
    den = Poly1([Fraction(1), Fraction(0), Fraction(1)])       # 1 + t^2
    xn = Poly1([Fraction(1), Fraction(0), Fraction(-1)])       # 1 - t^2
    yn = Poly1([Fraction(0), Fraction(2)])                     # 2 t
    num_x = xn.scale(Fraction(a)) + yn.scale(Fraction(b))
    num_y = xn.scale(Fraction(c)) + yn.scale(Fraction(d))
    return RationalArc(RatFunc1(num_x, den), RatFunc1(num_y, den),
                       (t0, t1), smooth_joint_end=smooth_end)


def unit_disk() -> Polypol:
    """Four quarter arcs; all four joints are analytically smooth."""
    arcs = [_circle_piece(rot, 0, 1, smooth_end=True) for rot in _ROTATIONS]
    return Polypol(arcs)


def _upper_arc_chain(tau0, tau1, smooth_end_last: bool):
    """Circle arcs from angle 2*atan(tau0) to 2*atan(tau1), split at the
    vertical so that every parameter stays in [0, 1].

    tau1 = None encodes the angle pi (parameter at infinity); the split
    form avoids it.  Returns a list of arcs; interior joints are smooth.
    """
    tau0 = to_fraction(tau0)
    arcs = []
    if tau1 is not None:
        tau1 = to_fraction(tau1)
        if tau1 <= tau0:
            raise RegionFormatError("need tau0 < tau1")
    if tau0 < 1 and (tau1 is None or tau1 > 1):
        arcs.append(_circle_piece(_ROTATIONS[0], tau0, 1, smooth_end=True))
        hi = 1 if tau1 is None else (tau1 - 1) / (tau1 + 1)
        arcs.append(_circle_piece(_ROTATIONS[1], 0, hi,
                                  smooth_end=smooth_end_last))
    elif tau1 is not None and tau1 <= 1:
        arcs.append(_circle_piece(_ROTATIONS[0], tau0, tau1,
                                  smooth_end=smooth_end_last))
    else:            # whole range beyond the vertical
        lo = (tau0 - 1) / (tau0 + 1)
        hi = 1 if tau1 is None else (tau1 - 1) / (tau1 + 1)
        arcs.append(_circle_piece(_ROTATIONS[1], lo, hi,
                                  smooth_end=smooth_end_last))
    return arcs


def upper_half_disk() -> Polypol:
    """x^2 + y^2 <= 1, y >= 0: the diameter plus the upper semicircle."""
    arcs = [_segment((-1, 0), (1, 0))]
    arcs += _upper_arc_chain(0, None, smooth_end_last=False)
    return Polypol(arcs)


def sector_from_tau(tau0, tau1) -> Polypol:
    """Circular sector with exact rational half-angle tangents.

    The sector spans angles 2*atan(tau0) to 2*atan(tau1) with
    0 <= tau0 < tau1; tau1 = None means the angle pi.  Rational inputs
    keep the whole region in the exact tier.
    """
    tau0 = to_fraction(tau0)
    if tau0 < 0:
        raise RegionFormatError("need tau0 >= 0")
    d0 = 1 + tau0 ** 2
    p0 = ((1 - tau0 ** 2) / d0, 2 * tau0 / d0)
    if tau1 is None:
        p1 = (Fraction(-1), Fraction(0))
    else:
        tau1 = to_fraction(tau1)
        d1 = 1 + tau1 ** 2
        p1 = ((1 - tau1 ** 2) / d1, 2 * tau1 / d1)
    arcs = [_segment((0, 0), p0)]
    arcs += _upper_arc_chain(tau0, tau1, smooth_end_last=False)
    arcs.append(_segment(p1, (0, 0)))
    return Polypol(arcs)


def sector(phi0: float, phi1: float) -> Polypol:
    """Sector between two angles in [0, pi]; float tier.

    The endpoints become the dyadic rationals nearest tan(phi/2), so
    exact identities should use :func:`sector_from_tau` instead.
    """
    import math
    if not (0 <= phi0 < phi1 <= math.pi):
        raise RegionFormatError("need 0 <= phi0 < phi1 <= pi")
    tau0 = Fraction(math.tan(phi0 / 2))
    tau1 = None if phi1 == math.pi else Fraction(math.tan(phi1 / 2))
    p = sector_from_tau(tau0, tau1)
    return Polypol(p.arcs, tier="float")


# ---------------------------------------------------------------------------
# implicitization

def implicitize(arc: RationalArc) -> Poly2:
    """Squarefree implicit equation of the arc's Zariski closure.

    Eliminates the parameter from x*den_x - num_x and y*den_y - num_y
    by a Sylvester resultant, then strips content and takes the
    squarefree part.  A second elimination after the reparametrization
    t -> t + 1 guards against spurious factors: the implicit curve
    divides both resultants, so their gcd is kept.  The result is
    checked to vanish along the arc.
    """
    if arc.x.num.degree <= 0 and arc.x.den.degree <= 0 and \
       arc.y.num.degree <= 0 and arc.y.den.degree <= 0:
        raise DegenerateArc("constant parametrization has no implicit curve")

    def elimination(x: RatFunc1, y: RatFunc1) -> Poly2:
        px = _clearing_poly(x, "x")
        py = _clearing_poly(y, "y")
        return resultant_in_tau(px, py)

    r1 = elimination(arc.x, arc.y)
    r2 = elimination(arc.x.compose_mobius(1, 1, 0, 1),
                     arc.y.compose_mobius(1, 1, 0, 1))
    if r1.is_zero or r2.is_zero:
        raise DegenerateArc("degenerate elimination (zero resultant)")
    g = poly2_gcd(r1, r2)
    result = normalize_sign_primitive(squarefree_part(g))
    if result.degree < 1:
        raise DegenerateArc("implicitization collapsed to a constant")
    t, xs, ys = arc.sample(50)
    vals = np.abs(result.eval_float(xs, ys))
    scale = max(max(abs(float(c)) for c in result.terms.values()), 1.0)
    if float(np.max(vals)) > 1e-10 * scale * max(1.0, float(np.max(np.abs(xs))),
                                                 float(np.max(np.abs(ys)))) ** result.degree:
        raise InvariantViolation("implicit equation does not vanish on the arc")
    return result


def _clearing_poly(r: RatFunc1, var: str) -> list[Poly2]:
    """var * den(t) - num(t) as a t-polynomial with bivariate coefficients."""
    v = Poly2.variable(var)
    n = max(r.num.degree, r.den.degree)
    out = []
    for k in range(n + 1):
        dk = r.den.coeffs[k] if k <= r.den.degree else Fraction(0)
        nk = r.num.coeffs[k] if k <= r.num.degree else Fraction(0)
        out.append(v.scale(dk) - Poly2.const(nk))
    return out


# ---------------------------------------------------------------------------
# validation

@dataclass(frozen=True)
class ValidationCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[ValidationCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self):
        return [c for c in self.checks if not c.passed]

    def __repr__(self):
        lines = [f"  [{'ok' if c.passed else 'FAIL'}] {c.name}"
                 + (f": {c.detail}" if c.detail else "") for c in self.checks]
        return "ValidationReport(\n" + "\n".join(lines) + "\n)"


def _close(p, q, tol=1e-12):
    if isinstance(p[0], Fraction) and isinstance(q[0], Fraction):
        return p == q
    return abs(float(p[0]) - float(q[0])) <= tol and \
        abs(float(p[1]) - float(q[1])) <= tol


def validate(p: Polypol, config: RunConfig = DEFAULT,
             samples_per_arc: int = 256) -> ValidationReport:
    """Run the regularity checks; failures are report entries, never raises.

    Covers chain closure, counterclockwise orientation, denominator
    nonvanishing on every parameter interval (Sturm certified),
    regularity of the parametrizations, sampled self-intersection, and
    distinctness of the reduced boundary components.
    """
    checks = []
    n = len(p.arcs)

    # closure
    bad = [i for i in range(n)
           if not _close(p.arcs[i].end, p.arcs[(i + 1) % n].start)]
    checks.append(ValidationCheck(
        "closure", not bad,
        "" if not bad else f"chain breaks after arcs {bad}"))

    # orientation
    area = signed_area(p, config)
    checks.append(ValidationCheck(
        "orientation", area > 0,
        f"signed area {format_rational(area) if isinstance(area, Fraction) else area}"))

    # denominators nonvanishing (Sturm certificates)
    bad = []
    for i, arc in enumerate(p.arcs):
        for den in (arc.x.den, arc.y.den):
            if den.degree >= 1 and real_roots(den, arc.interval):
                bad.append(i)
    checks.append(ValidationCheck(
        "denominators_nonvanishing", not bad,
        "" if not bad else f"denominator root on arcs {sorted(set(bad))}"))

    # regular parametrization: (x', y') never (0, 0) on the interval
    bad = []
    for i, arc in enumerate(p.arcs):
        nx, ny = arc.dx.num, arc.dy.num
        if nx.is_zero and ny.is_zero:
            bad.append((i, "constant arc"))
            continue
        g = ny if nx.is_zero else nx if ny.is_zero else poly1_gcd(nx, ny)
        if g.degree >= 1:
            hits = real_roots(g, arc.interval)
            if hits:
                bad.append((i, f"stationary at {[float(r) for r, _ in hits]}"))
    checks.append(ValidationCheck(
        "regular_parametrization", not bad, "" if not bad else str(bad)))

    # sampled self-intersection between distinct arcs
    pts = [np.column_stack(p.arcs[i].sample(samples_per_arc)[1:]) for i in range(n)]
    offenders = []
    for i in range(n):
        for j in range(i + 1, n):
            d2 = np.sum((pts[i][:, None, :] - pts[j][None, :, :]) ** 2, axis=2)
            close = d2 < 1e-9 ** 2
            if not close.any():
                continue
            shared = _shared_vertex_points(p, i, j)
            ii, jj = np.nonzero(close)
            for a_idx, b_idx in zip(ii, jj):
                q = pts[i][a_idx]
                if not any((q[0] - float(sx)) ** 2 + (q[1] - float(sy)) ** 2 < 1e-6 ** 2
                           for sx, sy in shared):
                    offenders.append((i, j))
                    break
    checks.append(ValidationCheck(
        "self_intersection_sampling", not offenders,
        "" if not offenders else f"arc pairs too close away from vertices: {offenders}"))

    # reduced boundary distinctness
    detail = ""
    ok = True
    try:
        eqs = [normalize_sign_primitive(implicitize(a)) for a in p.arcs]
        for i in range(n):
            for j in range(i + 1, n):
                if eqs[i] == eqs[j]:
                    d2 = np.sum((pts[i][:, None, :] - pts[j][None, :, :]) ** 2, axis=2)
                    overlap = float(np.mean(np.min(d2, axis=1) < 1e-12))
                    if overlap > 0.05:
                        ok = False
                        detail = f"arcs {i} and {j} overlap on one component"
                elif eqs[i].degree != eqs[j].degree:
                    lo, hi = (eqs[i], eqs[j]) if eqs[i].degree < eqs[j].degree else (eqs[j], eqs[i])
                    _, rem = poly2_divmod(hi, lo)
                    if rem.is_zero:
                        ok = False
                        detail = f"implicit equation of arc divides another ({i}, {j})"
    except PolypolError as exc:
        ok = False
        detail = f"implicitization failed: {exc}"
    checks.append(ValidationCheck("reduced_boundary_distinctness", ok, detail))

    return ValidationReport(tuple(checks))


def _shared_vertex_points(p: Polypol, i: int, j: int):
    ends_i = {p.arcs[i].start, p.arcs[i].end}
    out = []
    for q in (p.arcs[j].start, p.arcs[j].end):
        for r in ends_i:
            if _close(q, r):
                out.append(tuple(map(float, q)))
    return out


# ---------------------------------------------------------------------------
# JSON interchange

def arc_to_json(arc: RationalArc) -> dict:
    return {
        "x": {"num": poly1_to_json(arc.x.num), "den": poly1_to_json(arc.x.den)},
        "y": {"num": poly1_to_json(arc.y.num), "den": poly1_to_json(arc.y.den)},
        "interval": [format_rational(arc.interval[0]),
                     format_rational(arc.interval[1])],
        "smooth_joint_end": arc.smooth_joint_end,
    }


def to_json(p: Polypol) -> dict:
    return {"arcs": [arc_to_json(a) for a in p.arcs], "tier": p.tier}


def from_json(doc, check: bool = True) -> Polypol:
    """Parse the region format; validates unless check=False."""
    try:
        arcs = []
        for a in doc["arcs"]:
            x = RatFunc1(poly1_from_json(a["x"]["num"]), poly1_from_json(a["x"]["den"]))
            y = RatFunc1(poly1_from_json(a["y"]["num"]), poly1_from_json(a["y"]["den"]))
            arcs.append(RationalArc(x, y,
                                    (Fraction(a["interval"][0]), Fraction(a["interval"][1])),
                                    smooth_joint_end=bool(a.get("smooth_joint_end", False))))
        tier = doc.get("tier", "exact")
        if tier not in ("exact", "float"):
            raise RegionFormatError(f"unknown tier {tier!r}")
        p = Polypol(arcs, tier=tier)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise RegionFormatError(f"malformed region document: {exc}") from exc
    if check:
        report = validate(p)
        if not report.all_passed:
            raise RegionFormatError(
                "region fails validation: "
                + "; ".join(f"{c.name}: {c.detail}" for c in report.failed()))
    return p


BUILDERS = {
    "triangle": standard_triangle,
    "square": centered_square,
    "disk": unit_disk,
    "half-disk": upper_half_disk,
}
