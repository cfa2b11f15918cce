"""Environment-driven settings for the CLI, the sweep and the HTTP service."""

import logging
import os
from functools import lru_cache
from typing import List

from dotenv import load_dotenv
from pydantic import BaseModel, Field

logger = logging.getLogger(__name__)


class Settings(BaseModel):
    """Runtime settings read from the environment (and an optional .env file)."""

    workers: int = Field(default=1, ge=1, description="Sweep worker processes")
    subset_limit: int = Field(
        default=31,
        ge=1,
        description="Largest vertex count accepted by exhaustive subset searches",
    )
    sweep_p_max: int = Field(
        default=9,
        ge=1,
        description="Largest half-order a sweep runs without --force",
    )
    log_level: str = "INFO"
    cors_origins: List[str] = Field(default_factory=lambda: ["http://localhost:3000"])


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"Ignoring non-integer {name}={raw!r}, using {default}")
        return default


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Load settings once per process."""
    load_dotenv()

    origins = os.getenv("CORS_ORIGINS", "http://localhost:3000")
    return Settings(
        workers=_int_env("TOURNAMENT_WORKERS", 1),
        subset_limit=_int_env("TOURNAMENT_SUBSET_LIMIT", 31),
        sweep_p_max=_int_env("TOURNAMENT_SWEEP_P_MAX", 9),
        log_level=os.getenv("TOURNAMENT_LOG_LEVEL", "INFO").upper(),
        cors_origins=[o.strip() for o in origins.split(",") if o.strip()],
    )
