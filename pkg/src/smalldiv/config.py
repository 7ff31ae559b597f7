"""Run configuration: defaults, flat key=value config files, env override."""

from __future__ import annotations

import os
from typing import Dict

ENV_PRECISION = "SMALLDIV_PREC"

DEFAULTS: Dict[str, str] = {
    "precision": "128",       # working precision in bits for interval sums
    "seed": "0",              # seed for every randomized experiment
    "n_power": "30",          # default truncation order for power series
    "n_fourier": "16",        # default mode cutoff for Fourier series
    "theta_samples": "512",   # default grid for sup norms and defects
    "m_max": "200",           # default denominator cutoff for interval sets
    "out": "smalldiv_out",    # output directory for reports
}


def precision_bits() -> int:
    """Default working precision; the environment can override it."""
    raw = os.environ.get(ENV_PRECISION)
    if raw is None:
        return int(DEFAULTS["precision"])
    try:
        bits = int(raw)
    except ValueError as exc:
        raise ValueError(f"{ENV_PRECISION} must be an integer, got {raw!r}") from exc
    if bits < 24:
        raise ValueError(f"{ENV_PRECISION} too small: {bits}")
    return bits


def load_config(path: str) -> Dict[str, str]:
    """Read a flat KEY=VALUE file; '#' starts a comment, blanks ignored."""
    out: Dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected KEY=VALUE")
            key, value = line.split("=", 1)
            out[key.strip()] = value.strip()
    return out


def merged_config(path: str | None, overrides: Dict[str, str]) -> Dict[str, str]:
    """DEFAULTS <- config file <- explicit overrides, later wins."""
    cfg = dict(DEFAULTS)
    if path:
        cfg.update(load_config(path))
    cfg.update({k: v for k, v in overrides.items() if v is not None})
    return cfg
