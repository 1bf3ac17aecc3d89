"""Harmonic (holomorphic) moments and their generating functions.

Writing z = x + i y, the harmonic moments used here are

    mu_j = integral over the region of z^j dx dy,

i.e. the area-measure convention; texts that integrate against
dz dzbar differ by the constant factor -2i (dz ^ dzbar = -2i dx ^ dy).
The ordinary and weighted generating functions are

    S(t) = sum mu_j t^j,      G(t) = sum (j+1) mu_j t^j = (t S(t))'.

Both come from the same boundary calculus as the two-variable
transform: with the area convention,

    mu_j = -(i/2) * circulation of zbar z^j dz,
    G(t) =  (i/2) * circulation of z dzbar / (1 - t z),

the latter using circulation of dzbar = 0 to remove the 1/t prefactor,
so t = 0 directly returns mu_0 (the area).  Restricting the
two-variable transform to the dual line (u, v) = (t, i t) contracts its
moment series to coefficients (j+1)(j+2) mu_j; the elementary integral
operator (1/t^2) int_0^t s F(s, i s) ds lowers them to (j+1) mu_j,
which is exactly G.  restriction_identity_check verifies both steps
coefficient by coefficient.

Polygons stay exact: vertices are Gaussian rationals, so every
boundary integral is a Gaussian-rational number.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import GaussianRational, Poly1, poly1_gcd, real_roots, to_fraction
from .config import DEFAULT, RunConfig
from .errors import KernelOnBoundary, QuadratureError
from .moments import moment_table, normalization_factor
from .quadrature import integrate_vec
from .region import Polypol

_MINUS_HALF_I = GaussianRational(0, Fraction(-1, 2))


@dataclass(frozen=True)
class HarmonicSeries:
    order: int
    mu: list                  # GaussianRational (exact) or complex
    S_coeffs: list
    G_coeffs: list


def _use_exact(p: Polypol) -> bool:
    return p.tier == "exact" and all(a.is_polynomial for a in p.arcs)


def _exact_mu(p: Polypol, order: int) -> list:
    """mu_j by the zbar z^j dz boundary route over Gaussian rationals."""
    totals = [GaussianRational(0) for _ in range(order + 1)]
    for arc in p.arcs:
        zx = arc.x.num.to_fractions()
        zy = arc.y.num.to_fractions()
        z = Poly1([GaussianRational(a, b)
                   for a, b in _zip_coeffs(zx, zy)])
        zbar = Poly1([c.conjugate() for c in z.coeffs])
        dz = z.deriv()
        zpow = Poly1([GaussianRational(1)])
        a, b = arc.interval
        for j in range(order + 1):
            anti = (zbar * zpow * dz).antideriv()
            totals[j] = totals[j] + (anti(b) - anti(a))
            zpow = zpow * z
    return [_MINUS_HALF_I * t for t in totals]


def _zip_coeffs(px: Poly1, py: Poly1):
    n = max(px.degree, py.degree) + 1
    for k in range(n):
        cx = px.coeffs[k] if k <= px.degree else Fraction(0)
        cy = py.coeffs[k] if k <= py.degree else Fraction(0)
        yield cx, cy


def _float_mu(p: Polypol, order: int, config: RunConfig) -> list:
    totals = np.zeros(order + 1, dtype=complex)
    for arc in p.arcs:
        def f(t, arc=arc):
            z = arc.fx(t) + 1j * arc.fy(t)
            dz = arc.fdx(t) + 1j * arc.fdy(t)
            zb = np.conj(z)
            rows = []
            zp = np.ones_like(z)
            for _ in range(order + 1):
                w = zb * zp * dz
                rows.append(w.real)
                rows.append(w.imag)
                zp = zp * z
            return np.vstack(rows)
        res = integrate_vec(f, float(arc.interval[0]), float(arc.interval[1]),
                            config, abs_tol=1e-14)
        if not res.converged:
            raise QuadratureError(
                "harmonic moment quadrature budget exhausted",
                error_estimate=float(np.max(res.error)))
        totals += res.value[0::2] + 1j * res.value[1::2]
    return [complex(-0.5j * t) for t in totals]


def harmonic_moments(p: Polypol, order: int, config: RunConfig = DEFAULT) -> HarmonicSeries:
    """Moments mu_j for j <= order plus the S and G series coefficients.

    Exact (Gaussian rational) for polygons in the exact tier, complex
    floats otherwise.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    if _use_exact(p):
        mu = _exact_mu(p, order)
        g = [GaussianRational(j + 1) * m for j, m in enumerate(mu)]
    else:
        mu = _float_mu(p, order, config)
        g = [(j + 1) * m for j, m in enumerate(mu)]
    return HarmonicSeries(order=order, mu=list(mu), S_coeffs=list(mu),
                          G_coeffs=g)


def _kernel_check_complex(p: Polypol, t: complex, config: RunConfig) -> None:
    """Refuse when 1 - t z vanishes on the boundary (real parameter root)."""
    tr = to_fraction(float(t.real))
    ti = to_fraction(float(t.imag))
    tol = to_fraction(config.kernel_tol)
    for idx, arc in enumerate(p.arcs):
        D, X, Y = arc.cleared
        c_re = D - X.scale(tr) + Y.scale(ti)
        c_im = -(X.scale(ti) + Y.scale(tr))
        if c_re.is_zero and c_im.is_zero:
            raise KernelOnBoundary("kernel vanishes identically on an arc",
                                   arc_index=idx)
        g = poly1_gcd(c_re, c_im) if not (c_re.is_zero or c_im.is_zero) \
            else (c_im if c_re.is_zero else c_re)
        if g.degree < 1:
            continue
        lo, hi = arc.interval
        hits = real_roots(g, (lo - tol, hi + tol), tol=config.root_tol)
        if hits:
            raise KernelOnBoundary(
                f"line 1 - t z meets arc {idx} near t_param = {float(hits[0][0]):.6g}",
                arc_index=idx, parameter=float(hits[0][0]))


def G_boundary_eval(p: Polypol, t: complex, config: RunConfig = DEFAULT) -> complex:
    """The weighted generating function G(t) by boundary quadrature.

    Uses the prefactor-free kernel z/(1 - t z) against dzbar, which is
    regular at t = 0 and returns mu_0 there.
    """
    t = complex(t)
    _kernel_check_complex(p, t, config)
    total = 0.0 + 0.0j
    for arc in p.arcs:
        def f(tt, arc=arc):
            z = arc.fx(tt) + 1j * arc.fy(tt)
            dzb = arc.fdx(tt) - 1j * arc.fdy(tt)
            w = z * dzb / (1.0 - t * z)
            return np.vstack([w.real, w.imag])
        res = integrate_vec(f, float(arc.interval[0]), float(arc.interval[1]),
                            config, abs_tol=1e-14)
        if not res.converged:
            raise QuadratureError(
                "weighted generating function quadrature budget exhausted",
                error_estimate=float(np.max(res.error)))
        total += res.value[0] + 1j * res.value[1]
    return complex(0.5j * total)


@dataclass(frozen=True)
class RestrictionRow:
    j: int
    contracted: complex          # coefficient of t^j in F(t, it)
    weighted: complex            # (j+1)(j+2) mu_j
    integrated: complex          # contracted / (j+2)
    target: complex              # (j+1) mu_j
    exact_match: bool
    delta: float


@dataclass(frozen=True)
class RestrictionReport:
    order: int
    exact: bool
    rows: tuple

    @property
    def max_delta(self) -> float:
        return max((r.delta for r in self.rows), default=0.0)

    @property
    def all_exact(self) -> bool:
        return all(r.exact_match for r in self.rows)


def restriction_identity_check(p: Polypol, order: int,
                               config: RunConfig = DEFAULT) -> RestrictionReport:
    """Verify, coefficient by coefficient, that contracting the moment
    series along the dual line (u, v) = (t, i t) produces
    (j+1)(j+2) mu_j and that the integral operator lowers this to
    (j+1) mu_j.

    The contraction side comes from the two-variable moment table; the
    mu side from the one-variable boundary route, so the two series are
    computed along genuinely different integrands.  Mismatches are
    report rows, not exceptions.
    """
    table = moment_table(p, order, config)
    series = harmonic_moments(p, order, config)
    exact = table.exact and isinstance(series.mu[0], GaussianRational)
    rows = []
    i_unit = GaussianRational(0, 1) if exact else 1j
    for j in range(order + 1):
        acc = GaussianRational(0) if exact else 0.0 + 0.0j
        for a in range(j + 1):
            b = j - a
            term = normalization_factor(a, b) * table[(a, b)]
            acc = acc + term * i_unit ** b
        mu_j = series.mu[j]
        weighted = (j + 1) * (j + 2) * mu_j
        target = (j + 1) * mu_j
        if exact:
            integrated = acc * GaussianRational(Fraction(1, j + 2))
            match = (acc == weighted) and (integrated == target)
            delta = 0.0 if match else abs(complex(acc) - complex(weighted))
            rows.append(RestrictionRow(j, complex(acc), complex(weighted),
                                       complex(integrated), complex(target),
                                       match, delta))
        else:
            integrated = acc / (j + 2)
            delta = max(abs(acc - complex(weighted)),
                        abs(integrated - complex(target)))
            rows.append(RestrictionRow(j, complex(acc), complex(weighted),
                                       complex(integrated), complex(target),
                                       False, float(delta)))
    return RestrictionReport(order=order, exact=exact, rows=tuple(rows))
