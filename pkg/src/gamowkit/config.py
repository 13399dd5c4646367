"""Tolerance knobs with environment-variable overrides.

Each field can be overridden by ``GAMOWKIT_<FIELD NAME IN CAPS>``, e.g.
``GAMOWKIT_ZERO_THRESHOLD=1e-8``.  Values are read at call time, so tests
and the CLI can change them without reloading modules.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, fields

from .errors import ConfigError

ENV_PREFIX = "GAMOWKIT_"


@dataclass(frozen=True)
class Tolerances:
    zero_threshold: float = 1e-9     # relative size below which a limit is Zero
    angle_tol: float = 1e-12         # real-axis / boundary-ray detection in j_limit
    quad_tol: float = 1e-13          # interior quadrature relative tolerance
    residual_tol: float = 1e-12      # scaled Newton residual for accepted poles
    degenerate_tol: float = 1e-12    # relative k^2 coincidence in boundary overlaps


def tolerances(env=None) -> Tolerances:
    """Defaults overlaid with any ``GAMOWKIT_*`` environment variables."""
    env = os.environ if env is None else env
    kw = {}
    for f in fields(Tolerances):
        key = ENV_PREFIX + f.name.upper()
        if key in env:
            try:
                val = float(env[key])
            except ValueError as exc:
                raise ConfigError(f"{key}={env[key]!r} is not a number") from exc
            if not val > 0:
                raise ConfigError(f"{key} must be positive, got {val}")
            kw[f.name] = val
    return Tolerances(**kw)
