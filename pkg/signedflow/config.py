"""
Configuration settings for signedflow.
"""

from functools import lru_cache

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from .exceptions import ConfigurationError

_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class Settings(BaseSettings):
    # Search budgets
    node_limit: int = 2_000_000
    time_limit: float = 600.0

    # Guards for exhaustive computations
    cut_enumeration_limit: int = 16
    hoffman_oracle_limit: int = 12
    oracle_edge_limit: int = 8
    zk_vertex_limit: int = 5
    zk_edge_limit: int = 10
    avoidance_exhaustive_limit: int = 1_000_000

    # Circular chromatic number candidates: p <= factor * |V|
    chromatic_bound_factor: int = 4

    log_level: str = "WARNING"

    model_config = SettingsConfigDict(env_prefix="SIGNEDFLOW_", env_file=".env", extra="ignore")

    @field_validator(
        "node_limit",
        "time_limit",
        "cut_enumeration_limit",
        "hoffman_oracle_limit",
        "oracle_edge_limit",
        "zk_vertex_limit",
        "zk_edge_limit",
        "avoidance_exhaustive_limit",
        "chromatic_bound_factor",
    )
    @classmethod
    def _positive(cls, value):
        if value <= 0:
            raise ValueError("must be positive")
        return value

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        value = value.upper()
        if value not in _LEVELS:
            raise ValueError(f"unknown log level {value}")
        return value


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Build the settings once; invalid environment values become ConfigurationError."""
    try:
        return Settings()
    except ValueError as exc:
        raise ConfigurationError(str(exc)) from exc
