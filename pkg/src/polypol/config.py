"""Run configuration: tiers, tolerances and the reproducibility seed.

Every tolerance has an environment-variable override so command-line
runs can be tuned without code changes; the names are listed in
``ENV_OVERRIDES``.
"""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass


ENV_OVERRIDES = {
    "POLYPOL_QUAD_RTOL": ("quad_rel_tol", float),
    "POLYPOL_QUAD_BUDGET": ("quad_budget", int),
    "POLYPOL_ROOT_TOL": ("root_tol", float),
    "POLYPOL_KERNEL_TOL": ("kernel_tol", float),
    "POLYPOL_PROXIMITY_TOL": ("proximity_tol", float),
    "POLYPOL_BLOWUP": ("blowup_threshold", float),
    "POLYPOL_SEED": ("seed", int),
}


@dataclass(frozen=True)
class RunConfig:
    """Knobs shared across modules; all tolerances are positive."""

    tier: str = "auto"                 # exact | float | auto
    quad_rel_tol: float = 1e-12        # relative quadrature target
    quad_budget: int = 4096            # panels per arc (2**12)
    quad_order: int = 32               # Gauss-Legendre order per panel
    root_tol: float = 1e-12            # real-root refinement tolerance
    kernel_tol: float = 1e-9           # kernel-on-boundary refusal distance
    crossover: float = 1e-8            # |u| or |v| below which that form is avoided
    proximity_tol: float = 1e-3        # scan containment distance
    blowup_threshold: float = 1e6      # scan |F| flag level
    disagreement_tol: float = 1e-4     # scan two-form flag level
    precision: str = "double"          # double | longdouble quadrature dtype
    output: str = "json"               # json | csv
    seed: int = 1729                   # randomized property checks

    def __post_init__(self):
        for name in ("quad_rel_tol", "root_tol", "kernel_tol",
                     "proximity_tol", "blowup_threshold", "disagreement_tol"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    def header(self) -> dict:
        """Reproducibility header embedded in every output document."""
        return asdict(self)


def from_env(**overrides) -> RunConfig:
    """Build a config from defaults, environment variables, then overrides."""
    values = {}
    for env_name, (attr, conv) in ENV_OVERRIDES.items():
        raw = os.environ.get(env_name)
        if raw is not None:
            values[attr] = conv(raw)
    values.update(overrides)
    return RunConfig(**values)


DEFAULT = RunConfig()
