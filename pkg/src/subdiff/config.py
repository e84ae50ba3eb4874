"""Experiment configuration with JSON round-trip and strict validation."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields

EXAMPLES = ("example1", "example2", "example3", "zero")


class ConfigError(ValueError):
    """Invalid configuration; message names the offending field."""


@dataclass
class ExperimentConfig:
    alpha: float = 0.75
    example: str = "example1"
    M: list = field(default_factory=lambda: [8])
    N: int = 1000
    gamma: float = 1.6
    T: float = 0.5
    modes: int = 60
    mu: list = field(default_factory=lambda: [0.0])
    fine_M: int = 128
    out: str = "out"
    tol: float = 1e-12
    seed: int = 0

    def validate(self) -> None:
        if not (0.0 < self.alpha < 1.0):
            raise ConfigError(f"alpha must lie strictly in (0, 1), got {self.alpha}")
        if self.example not in EXAMPLES:
            raise ConfigError(f"example must be one of {EXAMPLES}, got {self.example!r}")
        if not self.M:
            raise ConfigError("M must list at least one mesh size")
        for m in self.M:
            if not isinstance(m, int) or m < 2:
                raise ConfigError(f"M entries must be integers >= 2, got {m!r}")
        if not isinstance(self.N, int) or self.N < 1:
            raise ConfigError(f"N must be an integer >= 1, got {self.N!r}")
        if self.gamma < 1.0:
            raise ConfigError(f"gamma must be >= 1, got {self.gamma}")
        if not (self.T > 0.0):
            raise ConfigError(f"T must be > 0, got {self.T}")
        if not isinstance(self.modes, int) or self.modes < 1:
            raise ConfigError(f"modes must be an integer >= 1, got {self.modes!r}")
        for mu in self.mu:
            if mu < 0.0:
                raise ConfigError(f"mu values must be >= 0, got {mu}")
        if not isinstance(self.fine_M, int) or self.fine_M < 2:
            raise ConfigError(f"fine_M must be an integer >= 2, got {self.fine_M!r}")
        for m in self.M:
            q, r = divmod(self.fine_M, m)
            if r != 0 or q & (q - 1) != 0:
                raise ConfigError(
                    f"fine_M must be a power-of-two multiple of every M; "
                    f"fine_M={self.fine_M} fails for M={m}")
        if not (0.0 < self.tol <= 1e-6):
            raise ConfigError(f"tol must lie in (0, 1e-6], got {self.tol}")
        if not isinstance(self.seed, int):
            raise ConfigError(f"seed must be an integer, got {self.seed!r}")

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        raw = json.loads(text)
        known = {f.name for f in fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config fields: {sorted(unknown)}")
        cfg = cls(**raw)
        return cfg

    def replace(self, **overrides) -> "ExperimentConfig":
        data = asdict(self)
        data.update(overrides)
        return ExperimentConfig(**data)
