"""Runtime configuration for the CLI and the verification suites."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Tolerances:
    orthogonality: float = 1e-9
    psd: float = 1e-9
    intertwiner: float = 1e-8
    unitarity: float = 1e-6

    def __post_init__(self):
        for name in ("orthogonality", "psd", "intertwiner", "unitarity"):
            if getattr(self, name) <= 0:
                raise ValueError(f"tolerance {name} must be positive")


@dataclass(frozen=True)
class Config:
    default_depth: int = 12
    group_order_bound: int = 10**6
    tolerances: Tolerances = field(default_factory=Tolerances)
    output_format: str = "json"
    seed: int = 0

    def __post_init__(self):
        if self.default_depth <= 0 or self.group_order_bound <= 0:
            raise ValueError("depths and bounds must be positive")
        if self.output_format not in ("json", "csv"):
            raise ValueError(f"unknown output format {self.output_format!r}")


ENV_VAR = "ARBOCOH_CONFIG"


def load_config(path: str | None = None) -> Config:
    """Load configuration from an explicit path, else from $ARBOCOH_CONFIG,
    else defaults."""
    if path is None:
        path = os.environ.get(ENV_VAR)
    if path is None:
        return Config()
    with open(path) as fh:
        data = json.load(fh)
    try:
        tol = Tolerances(**data.pop("tolerances", {}))
        return Config(tolerances=tol, **data)
    except TypeError as exc:
        raise ValueError(f"bad config file {path}: {exc}") from None
