from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from dotenv import load_dotenv

from fuzzydepth.errors import ConfigError

ROOT_DIR = Path(__file__).resolve().parents[1]
ENV_PATH = ROOT_DIR / ".env"
load_dotenv(dotenv_path=ENV_PATH)

PAIR_MODES = ("strict", "with-diagonal")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


@dataclass(frozen=True)
class Settings:
    seed: int
    workers: int
    pairs: str
    quadrature: int
    top_k: int
    bottom_k: int
    log_level: str


def get_settings() -> Settings:
    """Read the FUZZYDEPTH_* environment (after .env) into validated settings."""
    pairs = os.getenv("FUZZYDEPTH_PAIRS", "strict").strip() or "strict"
    if pairs not in PAIR_MODES:
        raise ConfigError(f"FUZZYDEPTH_PAIRS must be one of {', '.join(PAIR_MODES)}, got {pairs!r}")
    log_level = (os.getenv("FUZZYDEPTH_LOG_LEVEL", "INFO").strip() or "INFO").upper()
    if log_level not in LOG_LEVELS:
        raise ConfigError(f"FUZZYDEPTH_LOG_LEVEL must be one of {', '.join(LOG_LEVELS)}")
    return Settings(
        seed=_int_env("FUZZYDEPTH_SEED", "20240101", minimum=0),
        workers=_int_env("FUZZYDEPTH_WORKERS", "1", minimum=1),
        pairs=pairs,
        quadrature=_int_env("FUZZYDEPTH_QUADRATURE", "256", minimum=64),
        top_k=_int_env("FUZZYDEPTH_TOP_K", "5", minimum=0),
        bottom_k=_int_env("FUZZYDEPTH_BOTTOM_K", "0", minimum=0),
        log_level=log_level,
    )


def seed_from_env(explicit: int | None) -> int:
    """`--seed` wins; otherwise FUZZYDEPTH_SEED."""
    if explicit is not None:
        if explicit < 0 or explicit >= 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        return explicit
    return get_settings().seed


def _int_env(name: str, default: str, *, minimum: int) -> int:
    raw = os.getenv(name, default).strip() or default
    try:
        value = int(raw)
    except ValueError as exc:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from exc
    if value < minimum:
        raise ConfigError(f"{name} must be >= {minimum}, got {value}")
    return value
