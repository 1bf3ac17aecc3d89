"""Dual singular support of the transform, with numeric probes.

The transform of a region extends holomorphically until the moving
line 1 - u x - v y degenerates against the boundary: through a vertex
(endpoint of an arc), or tangent to a curved boundary component.  The
vertex condition gives affine lines 1 - x_V u - y_V v in the dual
plane; the tangency condition, after clearing denominators and
eliminating the arc parameter, gives the projective dual curve of the
component.

Cleared-denominator eliminations drag in spurious factors supported on
the parameter values where the parametrization blows up.  Those
factors are computed exactly (they are the resultant of the cleared
denominator against u X + v Y) and divided out, and whatever remains
must pass a tangent-line reconstruction test on sampled real points.

probe_exponent and conjecture_scan supply desk-scale numeric evidence
about the local behavior of the transform near the support: neither is
a proof, and the scan report says so explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import (Poly1, Poly2, normalize_sign_primitive,
                      poly2_div_exact, resultant_in_tau, squarefree_part)
from .config import DEFAULT, RunConfig
from .errors import (DegenerateResultant, ExponentProbeError,
                     InvariantViolation, KernelOnBoundary, PolypolError,
                     QuadratureError)
from .fantappie import DualPoint, transform_eval, vertex_line
from .region import Polypol, implicitize

SCAN_DISCLAIMER = ("numeric evidence only: containment of observed blow-up "
                   "points in the computed support is not a proof")


@dataclass(frozen=True)
class SingularSupport:
    vertex_lines: tuple          # Poly2, one per genuine vertex
    never_singular: tuple        # bool per vertex line (constant duals)
    dual_curves: tuple           # Poly2, one per nonlinear component

    def active_components(self):
        lines = [l for l, ns in zip(self.vertex_lines, self.never_singular)
                 if not ns]
        return list(lines) + list(self.dual_curves)

    def distance(self, u: float, v: float) -> tuple[float, int]:
        """(distance, component index) to the nearest active component."""
        best = (math.inf, -1)
        for k, h in enumerate(self.active_components()):
            d = _zero_set_distance(h, u, v)
            if d < best[0]:
                best = (d, k)
        return best


def _zero_set_distance(h: Poly2, u, v, steps: int = 6):
    """Distance from (u, v) to {h = 0} by Newton projection."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    hu = h.diff("x")
    hv = h.diff("y")
    pu, pv = u.copy(), v.copy()
    for _ in range(steps):
        val = h.eval_float(pu, pv)
        gu = hu.eval_float(pu, pv) + 0.0 * pu
        gv = hv.eval_float(pu, pv) + 0.0 * pv
        n2 = gu * gu + gv * gv
        n2 = np.where(n2 == 0, 1e-300, n2)
        pu = pu - val * gu / n2
        pv = pv - val * gv / n2
    return np.hypot(pu - u, pv - v) if u.shape else float(np.hypot(pu - u, pv - v))


def _strip_monomial_content(p: Poly2) -> Poly2:
    if p.is_zero:
        return p
    imin = min(i for i, _ in p.terms)
    jmin = min(j for _, j in p.terms)
    if imin == 0 and jmin == 0:
        return p
    return Poly2({(i - imin, j - jmin): c for (i, j), c in p.terms.items()})


def _dual_curve_of_arc(arc) -> Poly2:
    """Eliminate the parameter from the incidence-plus-tangency system."""
    D, X, Y = arc.cleared
    n = max(D.degree, X.degree, Y.degree)

    def coeff(p: Poly1, k):
        return p.coeffs[k] if k <= p.degree else Fraction(0)

    u = Poly2.variable("x")
    v = Poly2.variable("y")
    incidence = [Poly2.const(coeff(D, k))
                 - u.scale(coeff(X, k)) - v.scale(coeff(Y, k))
                 for k in range(n + 1)]
    tx = X.deriv() * D - X * D.deriv()
    ty = Y.deriv() * D - Y * D.deriv()
    m = max(tx.degree, ty.degree)
    tangency = [u.scale(coeff(tx, k)) + v.scale(coeff(ty, k))
                for k in range(m + 1)]
    raw = resultant_in_tau(incidence, tangency)
    if raw.is_zero:
        raise DegenerateResultant(
            "tangency elimination vanished identically; reparametrize the arc")
    cleaned = normalize_sign_primitive(squarefree_part(_strip_monomial_content(raw)))

    # spurious factor from the parametrization poles: the lines through the
    # images of the denominator roots, Res(D, u X + v Y)
    if D.degree >= 1:
        pole_sys = [u.scale(coeff(X, k)) + v.scale(coeff(Y, k))
                    for k in range(max(X.degree, Y.degree) + 1)]
        spurious = resultant_in_tau([Poly2.const(c) for c in D.coeffs], pole_sys)
        spurious = normalize_sign_primitive(squarefree_part(
            _strip_monomial_content(spurious)))
        if spurious.degree >= 1:
            while True:
                try:
                    candidate = poly2_div_exact(cleaned, spurious)
                except PolypolError:
                    break
                if candidate.degree < 1:
                    break
                cleaned = normalize_sign_primitive(candidate)
    cleaned = normalize_sign_primitive(squarefree_part(cleaned))
    if cleaned.degree < 2:
        raise InvariantViolation(
            "dual curve collapsed below degree 2 after cleaning")
    _assert_tangency(cleaned, arc)
    return cleaned


def _assert_tangency(curve: Poly2, arc, want: int = 10, tol: float = 1e-8) -> None:
    """Sampled points of the dual curve must reconstruct lines tangent to
    the arc's component: the cleared incidence polynomial has a (near)
    double root there."""
    D, X, Y = arc.cleared
    n = max(D.degree, X.degree, Y.degree)

    def fc(p: Poly1, k):
        return float(p.coeffs[k]) if k <= p.degree else 0.0

    pts = _sample_zero_set(curve, want * 4)
    checked = 0
    for (u0, v0) in pts:
        coeffs = [fc(D, k) - u0 * fc(X, k) - v0 * fc(Y, k) for k in range(n + 1)]
        if not any(abs(c) > 1e-14 for c in coeffs):
            continue
        cpoly = Poly1(coeffs)
        roots = np.roots(list(reversed(coeffs)))
        if len(roots) == 0:
            continue
        dpoly = cpoly.deriv()
        dvals = np.abs([complex(dpoly(complex(r))) for r in roots])
        scale = max(1.0, float(np.max(np.abs(coeffs))))
        if float(np.min(dvals)) <= tol * scale * 10:
            checked += 1
        if checked >= want:
            return
    raise InvariantViolation(
        f"dual-curve tangency test passed only {checked} of {want} samples")


def _sample_zero_set(curve: Poly2, n: int):
    """Real points of a plane curve found along coordinate slices."""
    out = []
    di = curve.degree_in("y")
    for u0 in np.linspace(-1.5, 1.5, n):
        coeffs = [0.0] * (di + 1)
        for (i, j), c in curve.terms.items():
            coeffs[j] += float(c) * u0 ** i
        if not any(abs(c) > 1e-14 for c in coeffs):
            continue
        top = max(k for k, c in enumerate(coeffs) if abs(c) > 1e-14)
        if top == 0:
            continue
        roots = np.roots(list(reversed(coeffs[:top + 1])))
        for r in roots:
            if abs(r.imag) < 1e-10:
                out.append((float(u0), float(r.real)))
    return out


def singular_support(p: Polypol, config: RunConfig = DEFAULT) -> SingularSupport:
    """Vertex lines of the genuine vertices plus the projective dual of
    every nonlinear boundary component.

    The dual of the component of an arc through the vertex (0, 0) of a
    region is the nonvanishing constant 1; such lines are kept in the
    list but marked never_singular and excluded from scans.
    """
    lines = []
    flags = []
    for v in p.genuine_vertices:
        line = vertex_line(v.point[0], v.point[1])
        lines.append(line)
        flags.append(line.degree < 1)
    duals = []
    seen_components = []
    for arc in p.arcs:
        eq = normalize_sign_primitive(implicitize(arc))
        if eq.degree < 2 or eq in seen_components:
            continue
        seen_components.append(eq)
        duals.append(_dual_curve_of_arc(arc))
    return SingularSupport(vertex_lines=tuple(lines), never_singular=tuple(flags),
                           dual_curves=tuple(duals))


# ---------------------------------------------------------------------------
# local exponent probes

@dataclass(frozen=True)
class ExponentEstimate:
    component: Poly2
    base_point: DualPoint
    direction: DualPoint
    exponent: float
    residual: float
    classification: str          # pole_integer | half_integral | logarithmic | regular
    samples: tuple               # (epsilon, |F|) pairs actually used


def _newton_project(h: Poly2, u: float, v: float):
    hu, hv = h.diff("x"), h.diff("y")
    for _ in range(50):
        val = float(h.eval_float(u, v))
        gu, gv = float(hu.eval_float(u, v)), float(hv.eval_float(u, v))
        n2 = gu * gu + gv * gv
        if n2 == 0:
            raise PolypolError("singular gradient while projecting onto component")
        u -= val * gu / n2
        v -= val * gv / n2
        if abs(val) <= 1e-14:
            break
    if abs(float(h.eval_float(u, v))) > 1e-10:
        raise PolypolError("could not project base point onto the component")
    return u, v


def probe_exponent(p: Polypol, component: Poly2, base_point, direction,
                   config: RunConfig = DEFAULT, n_samples: int = 13,
                   eps0: float = 1e-2) -> ExponentEstimate:
    """Estimate the local growth exponent of the transform along a ray.

    Evaluates at distances eps0 * 2^-k, k = 0..n_samples-1, from the
    (Newton-projected) base point and fits log|F| against log eps.
    Near-zero exponents are split into regular versus logarithmic by a
    secondary fit of |F| against log log(1/eps).  Raises
    ExponentProbeError listing the usable samples if too few
    evaluations succeed.
    """
    bu, bv = _newton_project(component, float(base_point[0]), float(base_point[1]))
    du, dv = float(direction[0]), float(direction[1])
    norm = math.hypot(du, dv)
    if norm == 0:
        raise PolypolError("zero probe direction")
    du, dv = du / norm, dv / norm

    usable = []
    for k in range(n_samples):
        eps = eps0 * 2.0 ** (-k)
        w = (bu + eps * du, bv + eps * dv)
        try:
            tv = transform_eval(p, w, config)
        except (KernelOnBoundary, QuadratureError):
            continue
        if tv.value != 0 and math.isfinite(tv.value):
            usable.append((eps, abs(tv.value)))
    if len(usable) < 6:
        raise ExponentProbeError(
            f"only {len(usable)} of {n_samples} probe samples evaluated cleanly",
            usable=usable)

    xs = np.log([e for e, _ in usable])
    ys = np.log([f for _, f in usable])
    slope, intercept = np.polyfit(xs, ys, 1)
    fit = slope * xs + intercept
    residual = float(np.sqrt(np.mean((ys - fit) ** 2)))

    nearest_half = round(2.0 * slope) / 2.0
    if abs(slope) <= 0.1:
        lls = np.log(np.log(1.0 / np.array([e for e, _ in usable])))
        lslope, lint = np.polyfit(lls, ys, 1)
        lres = float(np.sqrt(np.mean((ys - (lslope * lls + lint)) ** 2)))
        spread = float(np.max(ys) - np.min(ys))
        if abs(lslope) > 0.5 and lres < residual and spread > 0.2:
            classification = "logarithmic"
        else:
            classification = "regular"
    elif abs(slope - nearest_half) <= 0.1 and nearest_half == int(nearest_half):
        classification = "pole_integer"
    elif abs(slope - nearest_half) <= 0.1:
        classification = "half_integral"
    else:
        classification = "regular" if abs(slope) < 0.5 else "pole_integer"
    return ExponentEstimate(component=component,
                            base_point=DualPoint(bu, bv),
                            direction=DualPoint(du, dv),
                            exponent=float(slope), residual=residual,
                            classification=classification,
                            samples=tuple(usable))


# ---------------------------------------------------------------------------
# conjecture scan

@dataclass(frozen=True)
class ScanRow:
    u: float
    v: float
    abs_value: float             # nan where evaluation refused
    status: str                  # ok | flagged | kernel_on_boundary
    nearest_component: int
    distance: float


@dataclass(frozen=True)
class ScanReport:
    grid: int
    window: tuple
    rows: tuple
    flagged_contained: bool
    proximity_tol: float
    note: str = field(default=SCAN_DISCLAIMER)

    @property
    def flagged(self):
        return [r for r in self.rows if r.status == "flagged"]


def _fast_kernel_mask(p: Polypol, U: np.ndarray, V: np.ndarray,
                      tol: float) -> np.ndarray:
    """True where the moving line meets some arc (vectorized refusal)."""
    refused = np.zeros(U.shape, dtype=bool)
    for arc in p.arcs:
        cd, xd, yd = arc.cleared_float
        deg = max(len(cd), len(xd), len(yd)) - 1
        C = np.zeros(U.shape + (deg + 1,))
        C[..., :len(cd)] += cd
        C[..., :len(xd)] -= U[..., None] * xd
        C[..., :len(yd)] -= V[..., None] * yd
        a = float(arc.interval[0]) - tol
        b = float(arc.interval[1]) + tol
        refused |= _roots_in_interval_mask(C, a, b)
    return refused


def _roots_in_interval_mask(C: np.ndarray, a: float, b: float) -> np.ndarray:
    """For batched coefficient rows (lowest degree first), does any real
    root fall inside [a, b]?"""
    deg = C.shape[-1] - 1
    mask = np.zeros(C.shape[:-1], dtype=bool)
    if deg == 0:
        return mask
    if deg == 1:
        c0, c1 = C[..., 0], C[..., 1]
        with np.errstate(divide="ignore", invalid="ignore"):
            r = -c0 / c1
        hit = np.isfinite(r) & (r >= a) & (r <= b)
        degenerate = (c1 == 0) & (c0 == 0)
        return hit | degenerate
    if deg == 2:
        c0, c1, c2 = C[..., 0], C[..., 1], C[..., 2]
        quad = np.abs(c2) > 1e-14 * np.max(np.abs(C), axis=-1)
        disc = c1 * c1 - 4 * c2 * c0
        with np.errstate(divide="ignore", invalid="ignore"):
            sq = np.sqrt(np.maximum(disc, 0.0))
            r1 = (-c1 - sq) / (2 * c2)
            r2 = (-c1 + sq) / (2 * c2)
            rl = -c0 / c1
        hit_quad = quad & (disc >= 0) & (((r1 >= a) & (r1 <= b)) | ((r2 >= a) & (r2 <= b)))
        hit_lin = ~quad & np.isfinite(rl) & (rl >= a) & (rl <= b)
        degenerate = ~quad & (c1 == 0) & (c0 == 0)
        return hit_quad | hit_lin | degenerate
    # general degree: batched companion eigenvalues
    lead_ok = np.abs(C[..., -1]) > 1e-13 * np.max(np.abs(C), axis=-1)
    flatC = C.reshape(-1, deg + 1)
    flat_mask = np.zeros(flatC.shape[0], dtype=bool)
    ok_idx = np.nonzero(lead_ok.ravel())[0]
    if len(ok_idx):
        comp = np.zeros((len(ok_idx), deg, deg))
        comp[:, 1:, :-1] = np.eye(deg - 1)
        comp[:, 0, :] = -flatC[ok_idx, :-1][:, ::-1] / flatC[ok_idx, -1][:, None]
        eig = np.linalg.eigvals(comp)
        real = np.abs(eig.imag) <= 1e-8 * (1 + np.abs(eig.real))
        inside = (eig.real >= a) & (eig.real <= b)
        flat_mask[ok_idx] = np.any(real & inside, axis=1)
    for idx in np.nonzero(~lead_ok.ravel())[0]:
        coeffs = flatC[idx]
        nz = np.nonzero(np.abs(coeffs) > 1e-13 * max(np.max(np.abs(coeffs)), 1e-300))[0]
        if len(nz) == 0:
            flat_mask[idx] = True
            continue
        if nz[-1] == 0:
            continue
        roots = np.roots(coeffs[:nz[-1] + 1][::-1])
        flat_mask[idx] = any(abs(r.imag) <= 1e-8 * (1 + abs(r.real))
                             and a <= r.real <= b for r in roots)
    return flat_mask.reshape(C.shape[:-1])


def _grid_boundary_values(p: Polypol, U: np.ndarray, V: np.ndarray,
                          panels: int):
    """Fixed-panel Gauss-Legendre dy/dx/centered sums for many dual points."""
    from .quadrature import gauss_nodes
    gx, gw = gauss_nodes(32)
    sdy = np.zeros(U.shape)
    sdx = np.zeros(U.shape)
    scen = np.zeros(U.shape)
    for arc in p.arcs:
        a, b = float(arc.interval[0]), float(arc.interval[1])
        edges = np.linspace(a, b, panels + 1)
        t = ((edges[:-1] + edges[1:]) / 2)[:, None] + ((edges[1:] - edges[:-1]) / 2)[:, None] * gx
        w = ((edges[1:] - edges[:-1]) / 2)[:, None] * gw
        t = t.ravel()
        w = w.ravel()
        x = arc.fx(t)
        y = arc.fy(t)
        dx = arc.fdx(t)
        dy = arc.fdy(t)
        Q = 1.0 - U[..., None] * x - V[..., None] * y
        Q2 = Q * Q
        sdy += (dy / Q2) @ w
        sdx += (dx / Q2) @ w
        scen += ((x * dy - y * dx) / Q2) @ w
    return sdy, sdx, scen


def conjecture_scan(p: Polypol, grid: int = 101, window=(-2.0, 2.0, -2.0, 2.0),
                    config: RunConfig = DEFAULT,
                    support: SingularSupport | None = None) -> ScanReport:
    """Evaluate the transform over a dual-plane grid and check that every
    blow-up or two-form disagreement lies near the computed support.

    Grid points where the moving line meets the boundary are recorded
    as kernel_on_boundary and excluded from flagging.  Candidate flags
    from the fast fixed-panel pass are confirmed with the adaptive
    evaluator before being reported.  The containment answer is
    explicitly labeled non-proof.
    """
    if support is None:
        support = singular_support(p, config)
    u0, u1, v0, v1 = window
    us = np.linspace(u0, u1, grid)
    vs = np.linspace(v0, v1, grid)
    U, V = np.meshgrid(us, vs, indexing="ij")
    pts = np.column_stack([U.ravel(), V.ravel()])
    refused = _fast_kernel_mask(p, pts[:, 0], pts[:, 1], config.kernel_tol)

    values = np.full(len(pts), np.nan)
    flagged = np.zeros(len(pts), dtype=bool)
    ok = ~refused
    cand_list = []
    ok_idx = np.nonzero(ok)[0]
    for start in range(0, len(ok_idx), 2048):      # bound working-set memory
        block = ok_idx[start:start + 2048]
        Uo, Vo = pts[block, 0], pts[block, 1]
        sdy_lo, sdx_lo, _ = _grid_boundary_values(p, Uo, Vo, panels=8)
        sdy, sdx, scen = _grid_boundary_values(p, Uo, Vo, panels=16)
        eps = config.crossover
        with np.errstate(divide="ignore", invalid="ignore"):
            f_dy = sdy / Uo
            f_dx = -sdx / Vo
        both = (np.abs(Uo) > eps) & (np.abs(Vo) > eps)
        val = np.where(np.abs(Uo) >= np.abs(Vo), f_dy, f_dx)
        val = np.where(np.abs(Uo) <= eps, f_dx, val)
        val = np.where(np.abs(Vo) <= eps, f_dy, val)
        val = np.where((np.abs(Uo) <= eps) & (np.abs(Vo) <= eps), scen, val)
        disagreement = np.zeros_like(val)
        disagreement[both] = np.abs(f_dy[both] - f_dx[both])
        quad_err = np.abs(sdy - sdy_lo) + np.abs(sdx - sdx_lo)
        candidates = (np.abs(val) > config.blowup_threshold) \
            | (disagreement > config.disagreement_tol) \
            | (quad_err > 1e-6 * (1.0 + np.abs(val)))
        values[block] = val
        cand_list.append(block[candidates])
    if cand_list:
        cand_idx = np.concatenate(cand_list)
        for idx in cand_idx:
            u, v = pts[idx]
            try:
                tv = transform_eval(p, (u, v), config, fast_check=True)
            except KernelOnBoundary:
                refused[idx] = True
                values[idx] = np.nan
                continue
            except QuadratureError as exc:
                values[idx] = exc.value if exc.value is not None else np.nan
                flagged[idx] = True
                continue
            values[idx] = tv.value
            flagged[idx] = (abs(tv.value) > config.blowup_threshold
                            or tv.error_estimate > config.disagreement_tol)

    dists, nearest = _distances(support, pts)
    rows = []
    contained = True
    for k in range(len(pts)):
        if refused[k]:
            status = "kernel_on_boundary"
        elif flagged[k]:
            status = "flagged"
            if dists[k] > config.proximity_tol:
                contained = False
        else:
            status = "ok"
        rows.append(ScanRow(u=float(pts[k, 0]), v=float(pts[k, 1]),
                            abs_value=float(abs(values[k])) if np.isfinite(values[k]) else float("nan"),
                            status=status, nearest_component=int(nearest[k]),
                            distance=float(dists[k])))
    return ScanReport(grid=grid, window=tuple(window), rows=tuple(rows),
                      flagged_contained=contained,
                      proximity_tol=config.proximity_tol)


def _distances(support: SingularSupport, pts: np.ndarray):
    comps = support.active_components()
    if not comps:
        return np.full(len(pts), np.inf), np.full(len(pts), -1, dtype=int)
    all_d = np.vstack([_zero_set_distance(h, pts[:, 0], pts[:, 1]) for h in comps])
    nearest = np.argmin(all_d, axis=0)
    return all_d[nearest, np.arange(len(pts))], nearest
