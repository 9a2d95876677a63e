"""Run configuration: defaults < config file < command-line flags."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any

from gameopt.core import GameContract, MarketParams

METHODS = ("lsmc", "two_step", "crr", "pde")
_METHOD_ALIASES = {
    "lsmc": "lsmc", "lsmc_std": "lsmc", "std": "lsmc",
    "two_step": "two_step", "two-step": "two_step", "lsmc_two_step": "two_step", "2step": "two_step",
    "crr": "crr", "tree": "crr",
    "pde": "pde", "cn": "pde",
}


class ConfigError(ValueError):
    """Invalid configuration; `field` names the offending key."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass(frozen=True)
class RunConfig:
    spot: float = 100.0
    rate: float = 0.03
    vol: float = 0.2
    strike: float = 100.0
    maturity: float = 1.0
    penalty: float = 10.0
    methods: tuple[str, ...] = METHODS
    paths: int = 100_000
    mc_steps: int | None = None  # None resolves to 50 per year of maturity
    seed: int = 42
    seeds: int = 1
    degree: int = 3
    tree_steps: int = 10_000
    grid_space: int = 2000
    grid_time: int = 2000
    smax_factor: float = 4.0
    workers: int = 1
    out: str | None = None
    provenance: dict[str, str] = field(default_factory=dict, compare=False, repr=False)

    @property
    def market(self) -> MarketParams:
        return MarketParams(spot=self.spot, rate=self.rate, vol=self.vol)

    @property
    def contract(self) -> GameContract:
        return GameContract(strike=self.strike, maturity=self.maturity, penalty=self.penalty)

    @property
    def seed_list(self) -> list[int]:
        return [self.seed + k for k in range(self.seeds)]

    def resolved(self) -> dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self) if f.name != "provenance"}


KEYS = tuple(f.name for f in fields(RunConfig) if f.name != "provenance")

_FLOATS = {"spot", "rate", "vol", "strike", "maturity", "penalty", "smax_factor"}
_INTS = {"paths", "mc_steps", "seed", "seeds", "degree", "tree_steps", "grid_space", "grid_time", "workers"}


def parse_methods(value) -> tuple[str, ...]:
    items = value.split(",") if isinstance(value, str) else list(value)
    out = []
    for item in items:
        key = item.strip().lower()
        if not key:
            continue
        if key not in _METHOD_ALIASES:
            raise ConfigError("methods", f"unknown method {item!r}; choose from {', '.join(METHODS)}")
        name = _METHOD_ALIASES[key]
        if name not in out:
            out.append(name)
    if not out:
        raise ConfigError("methods", "at least one method is required")
    return tuple(m for m in METHODS if m in out)


def coerce(key: str, value: Any) -> Any:
    if key not in KEYS:
        raise ConfigError(key, "unknown key")
    if value is None:
        return None
    try:
        if key in _FLOATS:
            return float(value)
        if key in _INTS:
            if isinstance(value, str):
                value = value.strip().replace("_", "")
                f = float(value)
                if not f.is_integer():
                    raise ValueError
                return int(f)
            return int(value)
    except (TypeError, ValueError):
        raise ConfigError(key, f"cannot parse {value!r}") from None
    if key == "methods":
        return parse_methods(value)
    return str(value)


def read_config_file(path: str | Path) -> dict[str, Any]:
    """Parse `key = value` lines; `#` starts a comment. Unknown keys are rejected."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}", f"expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in KEYS:
            raise ConfigError(key, f"unknown key (line {lineno})")
        values[key] = coerce(key, value)
    return values


def validate(cfg: RunConfig) -> RunConfig:
    checks = [
        ("spot", cfg.spot > 0 and math.isfinite(cfg.spot), "must be positive"),
        ("rate", math.isfinite(cfg.rate), "must be finite"),
        ("vol", cfg.vol > 0 and math.isfinite(cfg.vol), "must be positive"),
        ("strike", cfg.strike > 0 and math.isfinite(cfg.strike), "must be positive"),
        ("maturity", cfg.maturity > 0 and math.isfinite(cfg.maturity), "must be positive"),
        ("penalty", cfg.penalty >= 0, "must be >= 0"),
        ("paths", cfg.paths >= 2, "must be >= 2"),
        ("mc_steps", cfg.mc_steps is None or cfg.mc_steps >= 1, "must be >= 1"),
        ("seed", 0 <= cfg.seed < 2**64, "must be in [0, 2**64)"),
        ("seeds", cfg.seeds >= 1, "must be >= 1"),
        ("degree", 0 <= cfg.degree <= 10, "must be in [0, 10]"),
        ("tree_steps", cfg.tree_steps >= 1, "must be >= 1"),
        ("grid_space", cfg.grid_space >= 3, "must be >= 3"),
        ("grid_time", cfg.grid_time >= 1, "must be >= 1"),
        ("smax_factor", cfg.smax_factor > 1, "must be > 1"),
        ("workers", cfg.workers >= 1, "must be >= 1"),
    ]
    for name, ok, msg in checks:
        if not ok:
            raise ConfigError(name, f"{msg}, got {getattr(cfg, name)!r}")
    if cfg.smax_factor * max(cfg.spot, cfg.strike) <= cfg.strike:
        raise ConfigError("smax_factor", "grid upper bound must exceed the strike")
    if cfg.mc_steps is None:
        cfg = replace(cfg, mc_steps=max(1, round(50 * cfg.maturity)), provenance=cfg.provenance)
    return cfg


def build_config(file_values: dict[str, Any] | None = None, flag_values: dict[str, Any] | None = None) -> RunConfig:
    """Merge the three layers and record where each resolved field came from."""
    merged: dict[str, Any] = {}
    provenance = {k: "default" for k in KEYS}
    for layer, source in ((file_values or {}, "file"), (flag_values or {}, "flag")):
        for key, value in layer.items():
            if value is None:
                continue
            merged[key] = coerce(key, value)
            provenance[key] = source
    cfg = RunConfig(**merged, provenance=provenance)
    return validate(cfg)


def format_config(cfg: RunConfig) -> str:
    lines = []
    for key, value in cfg.resolved().items():
        if isinstance(value, tuple):
            value = ",".join(value)
        lines.append(f"{key} = {value}  # {cfg.provenance.get(key, 'default')}")
    return "\n".join(lines)
