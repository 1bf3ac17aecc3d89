"""Area moments and the normalized moment-generating series.

Everything reduces to one-dimensional boundary integrals by Green's
theorem: the double integral of x^i y^j equals
(1/(i+1)) * circulation of x^(i+1) y^j dy, and equally
-(1/(j+1)) * circulation of x^i y^(j+1) dx.  The dy reduction is the
default route; the dx reduction is kept as an independent oracle.

Chains of polynomial arcs with rational data are integrated exactly;
curved arcs go through adaptive Gauss-Legendre quadrature with nodes
shared across all monomials of a table.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

from .config import DEFAULT, RunConfig
from .errors import QuadratureError
from .quadrature import integrate_vec
from .region import Polypol, to_json

__all__ = ["MomentTable", "SeriesExpansion", "moment", "moment_table",
           "normalized_mgf_series", "moment_dx_oracle", "normalization_factor",
           "region_fingerprint"]


def region_fingerprint(p: Polypol) -> str:
    doc = json.dumps(to_json(p), sort_keys=True)
    return hashlib.sha256(doc.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class MomentTable:
    max_degree: int
    values: dict          # (i, j) -> Fraction (exact chains) or float
    fingerprint: str

    def __getitem__(self, key):
        return self.values[key]

    @property
    def exact(self) -> bool:
        return all(isinstance(v, Fraction) for v in self.values.values())


@dataclass(frozen=True)
class SeriesExpansion:
    """Truncated series; bivariate indices (i, j), univariate use j = 0."""
    order: int
    coefficients: dict

    def __getitem__(self, key):
        return self.coefficients[key]

    def eval(self, u: float, v: float) -> float:
        return float(sum(float(c) * u ** i * v ** j
                         for (i, j), c in self.coefficients.items()))


def normalization_factor(i: int, j: int) -> int:
    """(i + j + 2)! / (i! j!), the series weight of the moment m_ij."""
    return factorial(i + j + 2) // (factorial(i) * factorial(j))


def _use_exact(p: Polypol) -> bool:
    return p.tier == "exact" and all(a.is_polynomial for a in p.arcs)


def _exact_moment_dy(p: Polypol, i: int, j: int) -> Fraction:
    total = Fraction(0)
    for arc in p.arcs:
        integrand = arc.x.num ** (i + 1) * arc.y.num ** j * arc.y.num.deriv()
        anti = integrand.antideriv()
        a, b = arc.interval
        total += anti(b) - anti(a)
    return total / (i + 1)


def _exact_moment_dx(p: Polypol, i: int, j: int) -> Fraction:
    total = Fraction(0)
    for arc in p.arcs:
        integrand = arc.x.num ** i * arc.y.num ** (j + 1) * arc.x.num.deriv()
        anti = integrand.antideriv()
        a, b = arc.interval
        total += anti(b) - anti(a)
    return -total / (j + 1)


def _float_moment_batch(p: Polypol, pairs, config: RunConfig, use_dx=False):
    """Quadrature of all requested monomials at once, nodes shared per arc."""
    totals = np.zeros(len(pairs))
    max_i = max(i for i, _ in pairs)
    max_j = max(j for _, j in pairs)

    for arc in p.arcs:
        def f(t, arc=arc):
            xs = arc.fx(t)
            ys = arc.fy(t)
            w = arc.fdx(t) if use_dx else arc.fdy(t)
            xp = np.vstack([xs ** k for k in range(max_i + 2)])
            yp = np.vstack([ys ** k for k in range(max_j + 2)])
            if use_dx:
                return np.vstack([xp[i] * yp[j + 1] * w for i, j in pairs])
            return np.vstack([xp[i + 1] * yp[j] * w for i, j in pairs])

        res = integrate_vec(f, float(arc.interval[0]), float(arc.interval[1]), config)
        if not res.converged:
            raise QuadratureError(
                f"moment quadrature budget exhausted on an arc "
                f"(achieved error estimate {float(np.max(res.error)):.3e})",
                error_estimate=float(np.max(res.error)))
        totals += res.value
    if use_dx:
        return {pair: -totals[k] / (pair[1] + 1) for k, pair in enumerate(pairs)}
    return {pair: totals[k] / (pair[0] + 1) for k, pair in enumerate(pairs)}


def moment(p: Polypol, i: int, j: int, config: RunConfig = DEFAULT):
    """Integral of x^i y^j over the region.

    Exact Fraction for polynomial chains in the exact tier, float
    (adaptive quadrature at the configured tolerance) otherwise.
    """
    if i < 0 or j < 0:
        raise ValueError("moment exponents must be nonnegative")
    if _use_exact(p):
        return _exact_moment_dy(p, i, j)
    return _float_moment_batch(p, [(i, j)], config)[(i, j)]


def moment_dx_oracle(p: Polypol, i: int, j: int, config: RunConfig = DEFAULT):
    """Same moment through the dx reduction; independent consistency route."""
    if _use_exact(p):
        return _exact_moment_dx(p, i, j)
    return _float_moment_batch(p, [(i, j)], config, use_dx=True)[(i, j)]


def moment_table(p: Polypol, max_degree: int, config: RunConfig = DEFAULT) -> MomentTable:
    """All moments with i + j <= max_degree."""
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    pairs = [(i, j) for d in range(max_degree + 1) for i in range(d + 1)
             for j in [d - i]]
    if _use_exact(p):
        values = {pair: _exact_moment_dy(p, *pair) for pair in pairs}
    else:
        values = _float_moment_batch(p, pairs, config)
    return MomentTable(max_degree=max_degree, values=values,
                       fingerprint=region_fingerprint(p))


def normalized_mgf_series(p: Polypol, order: int, config: RunConfig = DEFAULT) -> SeriesExpansion:
    """Series whose (i, j) coefficient is (i+j+2)!/(i! j!) times m_ij.

    Its value at the origin is twice the area of the region.
    """
    table = moment_table(p, order, config)
    coeffs = {pair: normalization_factor(*pair) * val
              for pair, val in table.values.items()}
    return SeriesExpansion(order=order, coefficients=coeffs)
