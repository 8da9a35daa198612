from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Optional

from cyclo.errors import ConfigError

DEFAULT_BUDGET = 1 << 24
DEFAULT_MAX_N = 10**6
DEFAULT_SHARD_SIZE = 1 << 16


@dataclass(frozen=True)
class Settings:
    # Enumeration
    budget: int
    shard_size: int
    workers: int

    # CLI guard rails
    max_n: int
    log_level: str

    # Tool-owned output
    receipts_dir: Path


def _int_var(env: Mapping[str, str], name: str, default: int, minimum: int = 1) -> int:
    raw = env.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw, 0)
    except ValueError as e:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from e
    if value < minimum:
        raise ConfigError(f"{name} must be >= {minimum}, got {value}")
    return value


def get_settings(env: Optional[Mapping[str, str]] = None) -> Settings:
    """
    Single source of truth for runtime knobs.
    Every value can be overridden through a CYCLO_* environment variable.
    """
    if env is None:
        env = os.environ

    level = env.get("CYCLO_LOG_LEVEL", "WARNING").strip().upper() or "WARNING"
    if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
        raise ConfigError(f"CYCLO_LOG_LEVEL is not a logging level: {level!r}")

    return Settings(
        budget=_int_var(env, "CYCLO_BUDGET", DEFAULT_BUDGET),
        shard_size=_int_var(env, "CYCLO_SHARD_SIZE", DEFAULT_SHARD_SIZE),
        workers=_int_var(env, "CYCLO_WORKERS", 1),
        max_n=_int_var(env, "CYCLO_MAX_N", DEFAULT_MAX_N, minimum=2),
        log_level=level,
        receipts_dir=Path(env.get("CYCLO_RECEIPTS_DIR", "") or Path.cwd() / "receipts"),
    )
