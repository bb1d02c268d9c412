"""Experiment configuration (JSON, snake_case keys)."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields

from ..errors import ConfigError

__all__ = ["ExperimentConfig", "load_config", "DESK_ESTIMATORS"]

KINDS = ("ar1_ensemble", "elliptic_run", "analyze")
GROUPED_METHODS = ("ess_bulk_1", "ess_bulk_3")

# Estimators for desk-scale AR(1) ensembles. Window width 2*sqrt(N) and
# N^(1/3) batches keep the truncation bias of every method inside 10% at
# IACT = 100, N = 200k.
DESK_ESTIMATORS = [
    {"method": "ar"},
    {"method": "bm", "size_policy": "count_cuberoot"},
    {"method": "obm", "size_policy": "count_cuberoot"},
    {"method": "bartlett", "width_policy": "sqrt_n", "width_param": 2.0},
    {"method": "tukey", "width_policy": "sqrt_n", "width_param": 2.0},
    {"method": "geyer", "variant": "initial_monotone"},
    {"method": "ess_bulk_2"},
    {"method": "ess_bulk_3"},
    {"method": "ess_bulk_1"},
]


@dataclass
class ExperimentConfig:
    """One harness run.

    ``checkpoints`` count retained (post burn-in) samples per chain. For
    ``ar1_ensemble`` the AR coefficient comes from ``target_iact`` unless
    ``a`` is given.
    """

    kind: str = "ar1_ensemble"
    master_seed: int = 0
    n_replicates: int = 100
    chain_length: int = 220_000
    burn_in: int = 20_000
    checkpoints: list = field(default_factory=lambda: [90_000, 180_000, 200_000])
    estimators: list = field(default_factory=lambda: [dict(e) for e in DESK_ESTIMATORS])
    target_iact: float | None = 100.0
    a: float | None = None
    mu_eps: float = 0.0
    sigma_eps: float = 1.0
    init: str = "stationary_draw"
    group_size: int = 4
    n_groups: int | None = None
    alpha: float = 0.05
    clamp_iact: bool = False
    save_chains: bool = False
    model: dict = field(default_factory=dict)
    inputs: list = field(default_factory=list)
    output_dir: str = "out"
    format: str = "csv"
    threads: int = 1

    def __post_init__(self):
        self.validate()

    def validate(self):
        if self.kind not in KINDS:
            raise ConfigError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not 0 <= self.master_seed < 2 ** 64:
            raise ConfigError("master_seed must be an unsigned 64-bit integer")
        if self.n_replicates < 1:
            raise ConfigError("n_replicates must be >= 1")
        if not 0 <= self.burn_in < self.chain_length:
            raise ConfigError("burn_in must satisfy 0 <= burn_in < chain_length")
        retained = self.chain_length - self.burn_in
        bad = [c for c in self.checkpoints if not 0 < c <= retained]
        if bad:
            raise ConfigError(f"checkpoints {bad} exceed the {retained} retained samples")
        if self.format not in ("csv", "json"):
            raise ConfigError("format must be 'csv' or 'json'")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")
        grouped = any(e.get("method") in GROUPED_METHODS for e in self.estimators)
        if self.kind == "ar1_ensemble" and grouped and not 1 <= self.group_size <= self.n_replicates:
            raise ConfigError("group_size must lie in [1, n_replicates] for grouped estimators")
        if not 0 < self.alpha < 1:
            raise ConfigError("alpha must lie in (0, 1)")
        for spec in self.estimators:
            if "method" not in spec:
                raise ConfigError(f"estimator spec without 'method': {spec}")

    @property
    def checkpoint_list(self) -> list[int]:
        return sorted(int(c) for c in self.checkpoints)

    def to_dict(self) -> dict:
        return asdict(self)


def load_config(path=None, **overrides) -> ExperimentConfig:
    """Read a JSON config; ``overrides`` with value None are ignored."""
    raw = {}
    if path is not None:
        with open(path) as fh:
            raw = json.load(fh)
    known = {f.name for f in fields(ExperimentConfig)}
    unknown = set(raw) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    raw.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return ExperimentConfig(**raw)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc
