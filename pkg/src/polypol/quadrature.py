"""Adaptive Gauss-Legendre quadrature for boundary integrals.

One engine serves every float-tier integral in the package: panels
carry a fixed-order rule together with its order-doubled companion, the
difference is the per-panel error estimate, and the worst panel is
bisected until the target is met or the panel budget is exhausted.
Integrands are vector valued so a whole moment table can share nodes.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT, RunConfig
from .errors import QuadratureError

_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def gauss_nodes(order: int):
    if order not in _cache:
        x, w = np.polynomial.legendre.leggauss(order)
        _cache[order] = (x, w)
    return _cache[order]


@dataclass
class QuadResult:
    value: np.ndarray          # shape (m,): one entry per integrand component
    error: np.ndarray          # same shape, per-component estimates
    panels: int
    converged: bool

    @property
    def scalar(self) -> float:
        return float(self.value[0])

    @property
    def scalar_error(self) -> float:
        return float(self.error[0])


def _panel(f, a, b, order, dtype):
    """Evaluate low- and doubled-order rules on one panel with one f call."""
    x1, w1 = gauss_nodes(order)
    x2, w2 = gauss_nodes(2 * order)
    half = (b - a) / 2.0
    mid = (b + a) / 2.0
    t = np.concatenate([mid + half * x1, mid + half * x2]).astype(dtype)
    vals = np.atleast_2d(np.asarray(f(t)))
    lo = vals[:, : order] @ (half * w1)
    hi = vals[:, order:] @ (half * w2)
    return lo, hi


def integrate_vec(f, a: float, b: float, config: RunConfig = DEFAULT,
                  initial_panels: int = 4, abs_tol: float = 0.0) -> QuadResult:
    """Adaptive integral of a vector-valued integrand over [a, b].

    f maps a node array of shape (k,) to values of shape (m, k) (or
    (k,) for scalar integrands).  Convergence: every component error
    below rel_tol times the largest component magnitude, or below the
    absolute floor abs_tol.  The floor matters for integrands that are
    zero up to rounding noise (e.g. x dy - y dx along a ray through
    the origin), where no relative target can ever be met.
    """
    a = float(a)
    b = float(b)
    dtype = np.longdouble if config.precision == "longdouble" else np.float64
    edges = np.linspace(a, b, initial_panels + 1)
    heap = []
    total = None
    for lo_edge, hi_edge in zip(edges[:-1], edges[1:]):
        lo, hi = _panel(f, lo_edge, hi_edge, config.quad_order, dtype)
        err = float(np.max(np.abs(hi - lo)))
        heapq.heappush(heap, (-err, lo_edge, hi_edge, hi, np.abs(hi - lo)))
        total = hi if total is None else total + hi
    n_panels = initial_panels

    def global_error():
        errs = np.zeros_like(np.asarray(total, dtype=float))
        for _, _, _, _, e in heap:
            errs = errs + e
        return errs

    while True:
        errs = global_error()
        scale = max(float(np.max(np.abs(total))), 1e-300)
        target = max(config.quad_rel_tol * scale, abs_tol)
        if float(np.max(errs)) <= target:
            return QuadResult(np.asarray(total, dtype=float), errs, n_panels, True)
        if n_panels >= config.quad_budget or not heap:
            return QuadResult(np.asarray(total, dtype=float), errs, n_panels, False)
        _, pa, pb, old_hi, _ = heapq.heappop(heap)
        total = total - old_hi
        mid = (pa + pb) / 2.0
        for qa, qb in ((pa, mid), (mid, pb)):
            lo, hi = _panel(f, qa, qb, config.quad_order, dtype)
            err = float(np.max(np.abs(hi - lo)))
            heapq.heappush(heap, (-err, qa, qb, hi, np.abs(hi - lo)))
            total = total + hi
        n_panels += 1


def integrate_scalar(f, a, b, config: RunConfig = DEFAULT,
                     where: str = "integral") -> tuple[float, float]:
    """Scalar adaptive integral; raises QuadratureError on budget exhaustion."""
    res = integrate_vec(lambda t: np.asarray(f(t))[None, :], a, b, config)
    if not res.converged:
        raise QuadratureError(
            f"{where}: quadrature budget of {config.quad_budget} panels exhausted "
            f"(achieved error estimate {res.scalar_error:.3e})",
            value=res.scalar, error_estimate=res.scalar_error)
    return res.scalar, res.scalar_error


def integrate_complex(f, a, b, config: RunConfig = DEFAULT,
                      where: str = "integral") -> complex:
    """Complex-valued scalar integral via a two-component real integrand."""
    def split(t):
        v = np.asarray(f(t), dtype=complex)
        return np.vstack([v.real, v.imag])
    res = integrate_vec(split, a, b, config)
    if not res.converged:
        raise QuadratureError(
            f"{where}: quadrature budget exhausted "
            f"(achieved error estimate {float(np.max(res.error)):.3e})",
            value=complex(res.value[0], res.value[1]),
            error_estimate=float(np.max(res.error)))
    return complex(res.value[0], res.value[1])
