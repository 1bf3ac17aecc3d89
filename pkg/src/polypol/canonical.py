"""Adjoint curves and canonical forms of plane regions.

The reduced boundary equation of a region is the product of the
distinct implicit equations of its arcs.  Complexified boundary
components intersect, projectively, in more points than the region has
vertices; the leftover (residual) intersections, forced by Bezout but
not vertices, are exactly where the numerator of the canonical form
must vanish.  The adjoint is the unique curve of degree d - 3 (d the
total boundary degree) through the residual points, found here by
solving the homogeneous interpolation system exactly.

The canonical form kappa * A / B dx^dy is normalized through iterated
residues at vertices: at a vertex where boundary branches f (incoming
arc) and g (outgoing arc) cross transversally, the iterated residue is

    kappa * A(p) / (J(p) * R(p)),     J = f_x g_y - f_y g_x,

with R the product of the remaining boundary factors at the vertex.
kappa is pinned so the first genuine vertex in chain order has residue
+1.  Every algebraic residue is cross-validated by a numeric double
contour integral over a small torus around the vertex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import (GaussianRational, Poly1, Poly2, normalize_first_one,
                      normalize_sign_primitive, poly1_divmod, poly2_gcd,
                      resultant_in_tau, squarefree_decomposition, to_fraction)
from .config import DEFAULT, RunConfig
from .errors import (InvariantViolation, NonNormalCrossing, NonUniqueAdjoint,
                     PolypolError)
from .region import Polypol, Vertex, implicitize


# ---------------------------------------------------------------------------
# boundary equations

def boundary_equation(p: Polypol) -> list[Poly2]:
    """Distinct squarefree implicit equations of the arcs, sign-primitive."""
    return boundary_data(p)[0]


def boundary_data(p: Polypol):
    """(factors, arc_to_factor): deduplicated implicit equations plus the
    index of each arc's component."""
    factors: list[Poly2] = []
    arc_to_factor = []
    for arc in p.arcs:
        eq = normalize_sign_primitive(implicitize(arc))
        for k, f in enumerate(factors):
            if f == eq:
                arc_to_factor.append(k)
                break
        else:
            factors.append(eq)
            arc_to_factor.append(len(factors) - 1)
    return factors, arc_to_factor


# ---------------------------------------------------------------------------
# homogeneous helpers (internal: exponent triples (i, j, k), i+j+k = degree)

def _homogenize(p: Poly2, d: int) -> dict:
    out = {}
    for (i, j), c in p.terms.items():
        out[(i, j, d - i - j)] = c
    return out


def _hom_mul(a: dict, b: dict) -> dict:
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2])
            s = out.get(e, Fraction(0)) + ca * cb
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def _hom_substitute(terms: dict, rows) -> dict:
    """Substitute X = T X': variable m becomes the linear form row_m . X'."""
    lin = [{(1, 0, 0): Fraction(r[0]), (0, 1, 0): Fraction(r[1]),
            (0, 0, 1): Fraction(r[2])} for r in rows]
    out = {}
    deg = max(sum(e) for e in terms)
    pows = []
    for m in range(3):
        pw = [{(0, 0, 0): Fraction(1)}]
        for _ in range(deg):
            pw.append(_hom_mul(pw[-1], lin[m]))
        pows.append(pw)
    for (i, j, k), c in terms.items():
        prod = {(0, 0, 0): c}
        for m, e in enumerate((i, j, k)):
            if e:
                prod = _hom_mul(prod, pows[m][e])
        for e, cc in prod.items():
            s = out.get(e, Fraction(0)) + cc
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def _hom_eval(terms: dict, pt) -> object:
    x, y, z = pt
    total = None
    for (i, j, k), c in terms.items():
        term = c * x ** i * y ** j * z ** k
        total = term if total is None else total + term
    return total


def _hom_affine(terms: dict) -> Poly2:
    return Poly2({(i, j): c for (i, j, k), c in terms.items()})


def _hom_partial(terms: dict, var: int) -> dict:
    out = {}
    for e, c in terms.items():
        if e[var]:
            ne = list(e)
            ne[var] -= 1
            out[tuple(ne)] = c * e[var]
    return out


# ---------------------------------------------------------------------------
# residual intersection points

@dataclass(frozen=True)
class ResidualPoint:
    point: tuple               # projective triple, z = 1 or z = 0
    source: tuple              # (factor index, factor index)
    multiplicity: int

    @property
    def at_infinity(self) -> bool:
        return _is_zero(self.point[2])


@dataclass(frozen=True)
class PairBookkeeping:
    """Bezout audit for one factor pair."""
    source: tuple
    degree_product: int
    vertex_multiplicity: int
    residual_multiplicity: int

    @property
    def balanced(self) -> bool:
        return self.vertex_multiplicity + self.residual_multiplicity \
            == self.degree_product


def _is_zero(c) -> bool:
    if isinstance(c, (Fraction, int, GaussianRational)):
        return c == 0
    return abs(c) < 1e-9


# deterministic projective coordinate changes X = T X', det T = 1
_CHART_PARAMS = [(0, 0, 0), (0, 1, 1), (0, 1, -1), (1, 1, 1), (-1, 1, 2),
                 (1, 2, 1), (2, 1, 3), (1, 3, 2), (3, 1, 1), (2, 3, 1)]


def _chart_rows(g, e, f):
    return ((1, g, 0), (0, 1, 0), (e, f, 1))


def _binary_form_common_root(a: dict, b: dict) -> bool:
    """Do the restrictions to the line z' = 0 share a projective root?"""
    def slice_z0(terms):
        da = max(sum(e) for e in terms)
        poly = [Fraction(0)] * (da + 1)
        for (i, j, k), c in terms.items():
            if k == 0:
                poly[i] = c
        return Poly1(poly)
    pa, pb = slice_z0(a), slice_z0(b)
    if pa.is_zero or pb.is_zero:
        return True
    from .algebra import poly1_gcd
    if poly1_gcd(pa, pb).degree >= 1:
        return True
    # common root at [1:0:0] means both pure-x leading terms vanish
    da = max(sum(e) for e in a)
    db = max(sum(e) for e in b)
    return a.get((da, 0, 0), Fraction(0)) == 0 and \
        b.get((db, 0, 0), Fraction(0)) == 0


def _resultant_y(fa: Poly2, fb: Poly2) -> Poly1:
    """Res_y of two affine bivariate polynomials as a polynomial in x."""
    def as_y_poly(p: Poly2):
        dy = p.degree_in("y")
        out = []
        for k in range(dy + 1):
            out.append(Poly2({(i, 0): c for (i, j), c in p.terms.items() if j == k}))
        return out
    r = resultant_in_tau(as_y_poly(fa), as_y_poly(fb))
    dx = r.degree_in("x")
    return Poly1([r.terms.get((i, 0), Fraction(0)) for i in range(dx + 1)])


def _gcd_generic(a: Poly1, b: Poly1) -> Poly1:
    """Monic gcd over any coefficient field (Fractions, Gaussian rationals)."""
    while not b.is_zero:
        _, r = poly1_divmod(a, b)
        a, b = b, r
    if a.is_zero:
        return a
    lc = a.leading()
    return Poly1([c / lc for c in a.coeffs])


def _substitute_x(p: Poly2, x0) -> Poly1:
    dy = p.degree_in("y")
    coeffs = [0] * (dy + 1)
    for (i, j), c in p.terms.items():
        coeffs[j] = coeffs[j] + c * x0 ** i
    return Poly1(coeffs)


def _rational_root_candidates(h: Poly1, roots: np.ndarray):
    """Pair each numeric root with an exact value when one verifies."""
    out = []
    for r in roots:
        cand = None
        if abs(r.imag) < 1e-10 * (1 + abs(r.real)):
            q = Fraction(float(r.real)).limit_denominator(10 ** 8)
            if h(q) == 0:
                cand = q
            else:
                cand = float(r.real)
        else:
            qr = Fraction(float(r.real)).limit_denominator(10 ** 8)
            qi = Fraction(float(r.imag)).limit_denominator(10 ** 8)
            g = GaussianRational(qr, qi)
            if h(g) == 0:
                cand = g
            else:
                cand = complex(r)
        out.append(cand)
    return out


class _ChartFailure(Exception):
    pass


def _pair_intersections(fa: Poly2, fb: Poly2):
    """All projective intersections of two coprime curves, with
    multiplicities, via a genericity-checked chart."""
    da, db = fa.degree, fb.degree
    ha, hb = _homogenize(fa, da), _homogenize(fb, db)
    for params in _CHART_PARAMS:
        rows = _chart_rows(*params)
        ta = _hom_substitute(ha, rows)
        tb = _hom_substitute(hb, rows)
        try:
            pts = _chart_intersections(ta, tb, da, db)
        except _ChartFailure:
            continue
        out = []
        for (x0, y0), mult in pts:
            X = rows[0][0] * x0 + rows[0][1] * y0 + rows[0][2]
            Y = rows[1][0] * x0 + rows[1][1] * y0 + rows[1][2]
            Z = rows[2][0] * x0 + rows[2][1] * y0 + rows[2][2]
            out.append((_normalize_projective((X, Y, Z)), mult))
        return out
    raise PolypolError("no generic chart found for an intersection pair")


def _normalize_projective(pt):
    x, y, z = pt
    if not _is_zero(z):
        return (_div(x, z), _div(y, z), _one_like(z))
    if not _is_zero(y):
        return (_div(x, y), _one_like(y), _zero_like(y))
    return (_one_like(x), _zero_like(x), _zero_like(x))


def _div(a, b):
    if isinstance(a, (Fraction, int)) and isinstance(b, (Fraction, int)):
        return Fraction(a) / Fraction(b)
    if isinstance(a, GaussianRational) or isinstance(b, GaussianRational):
        ga = a if isinstance(a, GaussianRational) else GaussianRational(a)
        gb = b if isinstance(b, GaussianRational) else GaussianRational(b)
        return ga / gb
    return complex(a) / complex(b)


def _one_like(c):
    if isinstance(c, (Fraction, int)):
        return Fraction(1)
    if isinstance(c, GaussianRational):
        return GaussianRational(1)
    return 1.0 + 0j


def _zero_like(c):
    if isinstance(c, (Fraction, int)):
        return Fraction(0)
    if isinstance(c, GaussianRational):
        return GaussianRational(0)
    return 0.0 + 0j


def _chart_intersections(ta: dict, tb: dict, da: int, db: int):
    """Affine intersections (with multiplicity) in a chart that must show
    the full Bezout count; raises _ChartFailure when not generic."""
    if _binary_form_common_root(ta, tb):
        raise _ChartFailure
    if ta.get((0, da, 0), Fraction(0)) == 0 or tb.get((0, db, 0), Fraction(0)) == 0:
        raise _ChartFailure            # [0:1:0] lies on a curve
    fa, fb = _hom_affine(ta), _hom_affine(tb)
    res = _resultant_y(fa, fb)
    if res.is_zero:
        raise _ChartFailure
    if res.degree != da * db:
        raise _ChartFailure
    points = []
    for factor, mult in squarefree_decomposition(res):
        froots = np.roots([float(c) for c in reversed(factor.coeffs)])
        for x0 in _rational_root_candidates(factor, froots):
            y0 = _fiber_root(fa, fb, x0)
            points.append(((x0, y0), mult))
    if sum(m for _, m in points) != da * db:
        raise _ChartFailure
    return points


def _fiber_root(fa: Poly2, fb: Poly2, x0):
    if isinstance(x0, (Fraction, GaussianRational)):
        g = _gcd_generic(_substitute_x(fa, x0), _substitute_x(fb, x0))
        if g.degree < 1:
            raise _ChartFailure
        if g.degree > 1:
            sq = _gcd_generic(g, g.deriv())
            if sq.degree >= 1:
                g, _ = poly1_divmod(g, sq)
            if g.degree != 1:
                raise _ChartFailure    # several distinct y over one x
        return -g.coeffs[0] / g.coeffs[1]
    pa = _substitute_x(fa, complex(x0))
    pb = _substitute_x(fb, complex(x0))
    ra = np.roots([complex(c) for c in reversed(pa.coeffs)])
    rb = np.roots([complex(c) for c in reversed(pb.coeffs)])
    best = None
    for r in ra:
        d = float(np.min(np.abs(rb - r))) if len(rb) else math.inf
        if best is None or d < best[1]:
            best = (r, d)
    if best is None or best[1] > 1e-5:
        raise _ChartFailure
    close = [r for r in ra if abs(r - best[0]) < 1e-5]
    others = [r for r in ra if abs(r - best[0]) >= 1e-5
              and float(np.min(np.abs(rb - r))) < 1e-5]
    if others:
        raise _ChartFailure            # distinct intersections share this x
    return complex(np.mean(close))


def _match_vertex(pt, vertices) -> bool:
    x, y, z = pt
    if _is_zero(z):
        return False
    if isinstance(x, GaussianRational):
        if x.im != 0 or (isinstance(y, GaussianRational) and y.im != 0):
            return False
        x = x.re
        y = y.re if isinstance(y, GaussianRational) else y
    if isinstance(x, complex) or isinstance(y, complex):
        if abs(complex(x).imag) > 1e-9 or abs(complex(y).imag) > 1e-9:
            return False
        x, y = complex(x).real, complex(y).real
    for v in vertices:
        vx, vy = v.point
        if isinstance(x, Fraction) and isinstance(vx, Fraction):
            if x == vx and y == vy:
                return True
        if abs(float(x) - float(vx)) <= 1e-9 and abs(float(y) - float(vy)) <= 1e-9:
            return True
    return False


def residual_points(factors, vertices):
    """Pairwise projective intersections of the boundary components that
    are not vertices of the region.

    Returns (points, bookkeeping): every pair's intersections, counted
    with multiplicity over the complex projective plane, must split
    into matched vertices plus residual points so that the total is the
    product of the degrees; unbalanced pairs raise.
    """
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            if poly2_gcd(factors[i], factors[j]).degree >= 1:
                raise PolypolError(
                    f"boundary factors {i} and {j} share a component")
    points = []
    audits = []
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            inters = _pair_intersections(factors[i], factors[j])
            vert_mult = 0
            resid_mult = 0
            for pt, mult in inters:
                if _match_vertex(pt, vertices):
                    vert_mult += mult
                else:
                    resid_mult += mult
                    points.append(ResidualPoint(point=pt, source=(i, j),
                                                multiplicity=mult))
            audit = PairBookkeeping(
                source=(i, j),
                degree_product=factors[i].degree * factors[j].degree,
                vertex_multiplicity=vert_mult,
                residual_multiplicity=resid_mult)
            if not audit.balanced:
                raise InvariantViolation(
                    f"Bezout bookkeeping unbalanced for factor pair {(i, j)}: "
                    f"{vert_mult} + {resid_mult} != {audit.degree_product}")
            audits.append(audit)
    return points, audits


# ---------------------------------------------------------------------------
# adjoint interpolation

def _monomials(deg: int):
    return [(i, j, deg - i - j) for d in [deg] for i in range(d + 1)
            for j in range(d + 1 - i)]


def _derivative_row(mono, order, pt):
    """Value of the order-(a,b,c) partial of x^i y^j z^k at the point."""
    (i, j, k) = mono
    (a, b, c) = order
    if i < a or j < b or k < c:
        return Fraction(0)
    coeff = 1
    for base, down in ((i, a), (j, b), (k, c)):
        for t in range(down):
            coeff *= base - t
    x, y, z = pt
    return coeff * x ** (i - a) * y ** (j - b) * z ** (k - c)


def _conjugate_key(pt):
    def norm(c):
        if isinstance(c, GaussianRational):
            return (c.re, abs(c.im))
        if isinstance(c, complex):
            return (round(c.real, 9), round(abs(c.imag), 9))
        return (c, 0)
    return tuple(norm(c) for c in pt)


def _nullspace_exact(rows, ncols):
    """Nullspace basis of a Fraction matrix via Gauss-Jordan."""
    mat = [list(r) for r in rows]
    pivots = {}
    rank = 0
    for col in range(ncols):
        sel = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if sel is None:
            continue
        mat[rank], mat[sel] = mat[sel], mat[rank]
        pv = mat[rank][col]
        mat[rank] = [c / pv for c in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [cr - f * cp for cr, cp in zip(mat[r], mat[rank])]
        pivots[col] = rank
        rank += 1
    basis = []
    free = [c for c in range(ncols) if c not in pivots]
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for col, r in pivots.items():
            vec[col] = -mat[r][fc]
        basis.append(vec)
    return basis


def adjoint(p: Polypol, config: RunConfig = DEFAULT) -> Poly2:
    """The boundary-degree-minus-3 curve through the residual points.

    Vanishing is imposed to the recorded multiplicity (all partials up
    to multiplicity - 1); conjugate complex points contribute real and
    imaginary part rows once per pair.  The homogeneous linear system
    must have a one-dimensional solution space; anything else raises
    NonUniqueAdjoint with the observed dimension.  The affine result is
    scaled so its graded-lex-first coefficient is 1.
    """
    factors, _ = boundary_data(p)
    d = sum(f.degree for f in factors)
    if d < 3:
        raise PolypolError(f"total boundary degree {d} < 3: no adjoint space")
    pts, _ = residual_points(factors, p.genuine_vertices)
    monos = _monomials(d - 3)

    seen = set()
    rows_exact = []
    rows_float = []
    exact_ok = True
    for rp in pts:
        key = _conjugate_key(rp.point)
        if key in seen:
            continue
        seen.add(key)
        orders = [(a, b, c) for a in range(rp.multiplicity)
                  for b in range(rp.multiplicity - a)
                  for c in range(rp.multiplicity - a - b)
                  if a + b + c <= rp.multiplicity - 1]
        for order in orders:
            vals = [_derivative_row(m, order, rp.point) for m in monos]
            if all(isinstance(v, (Fraction, int)) for v in vals):
                rows_exact.append([Fraction(v) for v in vals])
            elif all(isinstance(v, (Fraction, int, GaussianRational)) for v in vals):
                gv = [v if isinstance(v, GaussianRational) else GaussianRational(v)
                      for v in vals]
                rows_exact.append([g.re for g in gv])
                if any(g.im != 0 for g in gv):
                    rows_exact.append([g.im for g in gv])
            else:
                exact_ok = False
                cv = [complex(v) for v in vals]
                rows_float.append([c.real for c in cv])
                if any(abs(c.imag) > 1e-14 for c in cv):
                    rows_float.append([c.imag for c in cv])

    if exact_ok:
        basis = _nullspace_exact(rows_exact, len(monos))
        dim = len(basis)
        if dim != 1:
            raise NonUniqueAdjoint(
                f"adjoint system has solution dimension {dim}", dimension=dim)
        coeffs = basis[0]
    else:
        mat = np.array([[float(v) for v in r] for r in rows_exact] + rows_float,
                       dtype=float)
        if mat.size == 0:
            mat = np.zeros((1, len(monos)))
        _, s, vt = np.linalg.svd(mat)
        tolsv = 1e-9 * (s[0] if len(s) and s[0] > 0 else 1.0)
        dim = len(monos) - int(np.sum(s > tolsv))
        if dim != 1:
            raise NonUniqueAdjoint(
                f"adjoint system has solution dimension {dim}", dimension=dim)
        vec = vt[-1]
        coeffs = [Fraction(float(c)).limit_denominator(10 ** 6) for c in vec]

    hom = {m: c for m, c in zip(monos, coeffs) if c}
    # verify vanishing at every residual point before dehomogenizing
    for rp in pts:
        val = _hom_eval(hom, rp.point)
        if val is None:
            continue
        if isinstance(val, (Fraction, GaussianRational)):
            bad = val != 0
        else:
            bad = abs(complex(val)) > 1e-10 * max(1.0, *(abs(complex(c)) for c in rp.point))
        if bad:
            raise InvariantViolation("adjoint does not vanish at a residual point")
    affine = _hom_affine(hom)
    return normalize_first_one(affine)


# ---------------------------------------------------------------------------
# canonical forms and residues

@dataclass(frozen=True)
class MeromorphicForm2:
    """kappa * numerator / product(denominator_factors) dx^dy."""
    kappa: object                       # Fraction when exact, float otherwise
    numerator: Poly2
    denominator_factors: tuple
    arc_factors: tuple                  # arc index -> denominator factor index

    def density(self, x: float, y: float) -> float:
        den = 1.0
        for f in self.denominator_factors:
            den *= f.eval_float(x, y)
        return float(self.kappa) * self.numerator.eval_float(x, y) / den


def canonical_form(p: Polypol, config: RunConfig = DEFAULT,
                   cross_check: bool = True) -> MeromorphicForm2:
    """Assemble kappa * A / B dx^dy, pinning kappa at the first genuine
    vertex in chain order so its iterated residue equals +1."""
    if not p.genuine_vertices:
        raise PolypolError(
            "region has no genuine vertices: a smooth closed boundary is not "
            "a one-dimensional positive geometry in the recursive sense, so "
            "no vertex normalization exists")
    factors, arc_map = boundary_data(p)
    A = adjoint(p, config)
    form = MeromorphicForm2(kappa=Fraction(1), numerator=A,
                            denominator_factors=tuple(factors),
                            arc_factors=tuple(arc_map))
    v0 = next(v for v in p.vertices if not v.smooth_joint)
    res0 = iterated_residue(form, v0, config, cross_check=cross_check)
    if res0 == 0:
        raise InvariantViolation("vanishing residue at the normalizing vertex")
    kappa = (Fraction(1) / res0) if isinstance(res0, Fraction) else 1.0 / res0
    return MeromorphicForm2(kappa=kappa, numerator=A,
                            denominator_factors=tuple(factors),
                            arc_factors=tuple(arc_map))


def _point_values(form: MeromorphicForm2, vertex: Vertex):
    fi = form.arc_factors[vertex.incoming]
    fo = form.arc_factors[vertex.outgoing]
    if fi == fo:
        raise NonNormalCrossing(
            "both arcs at the vertex lie on one boundary component")
    x0, y0 = vertex.point
    f = form.denominator_factors[fi]
    g = form.denominator_factors[fo]
    jac = f.diff("x")(x0, y0) * g.diff("y")(x0, y0) \
        - f.diff("y")(x0, y0) * g.diff("x")(x0, y0)
    rest = Fraction(1) if isinstance(x0, Fraction) else 1.0
    for k, h in enumerate(form.denominator_factors):
        if k not in (fi, fo):
            rest = rest * h(x0, y0)
    return fi, fo, jac, rest


def iterated_residue(form: MeromorphicForm2, vertex: Vertex,
                     config: RunConfig = DEFAULT, cross_check: bool = True):
    """Iterated residue at a normal-crossing vertex, branches ordered
    (incoming arc, outgoing arc).

    Exact when the form and vertex are exact.  With cross_check the
    algebraic value is compared against a double contour integral over
    the torus |f| = |g| = 1e-3 (trapezoid rule, 256 nodes per circle)
    and a mismatch beyond 1e-6 raises InvariantViolation.
    """
    fi, fo, jac, rest = _point_values(form, vertex)
    x0, y0 = vertex.point
    scale = max(1.0, abs(float(x0)), abs(float(y0)))
    if jac == 0 or abs(float(jac)) <= 1e-12 * scale:
        raise NonNormalCrossing("tangential branch crossing at the vertex")
    if rest == 0 or abs(float(rest)) <= 1e-12:
        raise NonNormalCrossing("a third boundary component meets the vertex")
    a_val = form.numerator(x0, y0)
    value = form.kappa * a_val / (jac * rest)
    if cross_check:
        numeric = _contour_residue(form, vertex, fi, fo)
        if abs(numeric - float(value)) > 1e-6 * (1.0 + abs(float(value))):
            raise InvariantViolation(
                f"contour cross-check {numeric:.9g} disagrees with "
                f"algebraic residue {float(value):.9g}")
    return value


def _contour_residue(form: MeromorphicForm2, vertex: Vertex, fi: int, fo: int,
                     radius: float = 1e-3, nodes: int = 256) -> float:
    """Double contour integral over the torus |f| = |g| = radius.

    In the coordinates (zeta, eta) = (f, g) the form becomes
    kappa A / (zeta eta R J) d zeta d eta, so the double Cauchy integral
    is the mean of kappa A / (R J) over the solved torus grid; the
    curve points are recovered from (zeta, eta) targets by a 2x2 Newton
    iteration started at the vertex.
    """
    f = form.denominator_factors[fi]
    g = form.denominator_factors[fo]
    fx, fy = f.diff("x"), f.diff("y")
    gx, gy = g.diff("x"), g.diff("y")
    x0, y0 = float(vertex.point[0]), float(vertex.point[1])

    th = (np.arange(nodes) + 0.5) * (2 * np.pi / nodes)
    zeta = radius * np.exp(1j * th)[:, None] * np.ones((1, nodes))
    eta = radius * np.exp(1j * th)[None, :] * np.ones((nodes, 1))
    X = np.full(zeta.shape, x0, dtype=complex)
    Y = np.full(zeta.shape, y0, dtype=complex)
    for _ in range(60):
        F1 = f.eval_float(X, Y) - zeta
        F2 = g.eval_float(X, Y) - eta
        a = fx.eval_float(X, Y)
        b = fy.eval_float(X, Y)
        c = gx.eval_float(X, Y)
        d = gy.eval_float(X, Y)
        det = a * d - b * c
        dX = (F1 * d - F2 * b) / det
        dY = (a * F2 - c * F1) / det
        X = X - dX
        Y = Y - dY
        if float(np.max(np.abs(dX)) + np.max(np.abs(dY))) < 1e-15:
            break
    num = form.numerator.eval_float(X, Y)
    rest = np.ones_like(X)
    for k, h in enumerate(form.denominator_factors):
        if k not in (fi, fo):
            rest = rest * h.eval_float(X, Y)
    jac = fx.eval_float(X, Y) * gy.eval_float(X, Y) \
        - fy.eval_float(X, Y) * gx.eval_float(X, Y)
    vals = float(form.kappa) * num / (rest * jac)
    return float(np.mean(vals).real)


def residue_along_line(form: MeromorphicForm2, factor_index: int):
    """Residue one-form of the canonical form along an affine-linear
    boundary component, as a rational function of the line parameter.

    For a non-vertical line the parameter is x and the returned value
    represents r(x) dx with r = kappa A / (f_y R) restricted to the
    line; vertical lines are parametrized by y (value r(y) dy with
    r = -kappa A / (f_x R)).  Returns (parameter_name, RatFunc1).
    """
    f = form.denominator_factors[factor_index]
    if f.degree != 1:
        raise PolypolError("residue restriction implemented for lines only")
    c0 = f.terms.get((0, 0), Fraction(0))
    cx = f.terms.get((1, 0), Fraction(0))
    cy = f.terms.get((0, 1), Fraction(0))

    def restrict(p: Poly2, vertical: bool) -> Poly1:
        # substitute the line solution into p, parameter t
        out = Poly1()
        for (i, j), c in p.terms.items():
            if not vertical:
                xt = Poly1([Fraction(0), Fraction(1)])
                yt = Poly1([-c0 / cy, -cx / cy])
            else:
                xt = Poly1([-c0 / cx])
                yt = Poly1([Fraction(0), Fraction(1)])
            out = out + (xt ** i * yt ** j).scale(c)
        return out

    vertical = cy == 0
    num = restrict(form.numerator, vertical).scale(to_fraction(form.kappa))
    den = Poly1([Fraction(1)])
    for k, h in enumerate(form.denominator_factors):
        if k != factor_index:
            den = den * restrict(h, vertical)
    if vertical:
        den = den.scale(-cx)
        return "y", _ratfunc(num, den)
    den = den.scale(cy)
    return "x", _ratfunc(num, den)


def _ratfunc(num: Poly1, den: Poly1):
    from .algebra import RatFunc1
    return RatFunc1(num, den)


def rational_residue(rf, x0) -> Fraction:
    """Residue of a rational one-form num/den dt at a simple pole t0."""
    x0 = to_fraction(x0)
    dval = rf.den(x0)
    if dval != 0:
        raise PolypolError("not a pole")
    dprime = rf.den.deriv()(x0)
    if dprime == 0:
        raise PolypolError("pole is not simple")
    return rf.num(x0) / dprime
