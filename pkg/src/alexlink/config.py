"""Run configuration shared by the fingerprint pipeline and the CLI."""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, fields

CONFIG_ENV = "ALEXLINK_CONFIG"

DEFAULT_BATTERY = ((2, 1), (3, 2), (4, 3), (5, 2), (5, 3), (7, 3), (8, 3), (9, 2))


@dataclass(frozen=True)
class RunConfig:
    battery: tuple[tuple[int, int], ...] = DEFAULT_BATTERY
    point_values: tuple[int, ...] = (1, 3, 5, -3)
    max_points: int = 256
    ideal_k_max: int = 3
    max_minor_rows: int = 14
    max_minor_size: int = 10
    torsion_cap: int = 1024
    permutation_guard: int = 8
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(
            self, "battery", tuple((int(n), int(u)) for n, u in self.battery)
        )
        object.__setattr__(self, "point_values", tuple(int(v) for v in self.point_values))
        for name in (
            "max_points",
            "max_minor_rows",
            "max_minor_size",
            "torsion_cap",
            "permutation_guard",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.ideal_k_max < 0:
            raise ValueError("ideal_k_max must be nonnegative")
        for n, u in self.battery:
            if n < 1:
                raise ValueError(f"battery modulus {n} must be positive")
        # ideal evaluations divide out 3 and 5, so points must be units of Z[1/15]
        for v in self.point_values:
            if v == 0 or any(p not in (3, 5) for p in _prime_factors(abs(v))):
                raise ValueError(f"evaluation value {v} is not a unit after inverting 15")

    def to_json(self) -> dict:
        out = asdict(self)
        out["battery"] = [list(p) for p in self.battery]
        out["point_values"] = list(self.point_values)
        return out

    @classmethod
    def from_json(cls, data: dict) -> RunConfig:
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def load_config(path: str | None = None) -> RunConfig:
    """Read a JSON config from ``path`` or the environment variable, else defaults."""
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return RunConfig()
    with open(path) as fh:
        return RunConfig.from_json(json.load(fh))
