"""Engine configuration: campaign defaults and governance timing.

Recorded verbatim in the journal header so a replay always runs under the
same defaults the live engine used.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

from .errors import ConfigError


@dataclass(frozen=True)
class EngineConfig:
    likoin_rate_num: int = 1000  # Likoin atto per currency atto
    likoin_rate_den: int = 1
    like_price: int = 10**16  # 0.01 currency units
    buck_rate: int = 1
    quorum_num: int = 1
    quorum_den: int = 10
    min_voting_period_ms: int = 24 * 60 * 60 * 1000

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "EngineConfig":
        known = {f: data[f] for f in cls.__dataclass_fields__ if f in data}
        extra = set(data) - set(cls.__dataclass_fields__)
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        cfg = cls(**known)
        for name, value in cfg.to_dict().items():
            floor = 0 if name == "min_voting_period_ms" else 1
            if not isinstance(value, int) or value < floor:
                raise ConfigError(f"config field {name} must be an integer >= {floor}")
        if cfg.quorum_num > cfg.quorum_den:
            raise ConfigError("quorum fraction cannot exceed 1")
        return cfg

    @classmethod
    def from_file(cls, path: str) -> "EngineConfig":
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
        return cls.from_dict(data)
