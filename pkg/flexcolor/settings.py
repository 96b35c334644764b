"""Run configuration loaded from FLEXCOLOR_* environment variables, a .env file and CLI flags"""

from typing import Literal, Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from flexcolor.constants import (
    DEFAULT_B,
    DEFAULT_D,
    DEFAULT_K,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    ENUMERATION_TIME_BUDGET,
    ENUMERATION_VERTEX_CAP,
    ORACLE_VERTEX_CAP,
)

Command = Literal[
    "faces",
    "check-reducible",
    "find-config",
    "discharge",
    "color",
    "count",
    "flex",
    "estimate",
    "gen",
]


class RunConfig(BaseSettings):
    """Parameters of one CLI run; defaults are the k = 4, b = 31 regime"""

    model_config = SettingsConfigDict(
        env_prefix="FLEXCOLOR_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    command: Optional[Command] = None
    k: int = Field(default=DEFAULT_K, ge=3)
    d: int = Field(default=DEFAULT_D, ge=1)
    b: int = Field(default=DEFAULT_B, ge=1)
    seed: int = DEFAULT_SEED
    trials: int = Field(default=DEFAULT_TRIALS, ge=1)
    cap: int = Field(default=ORACLE_VERTEX_CAP, ge=1)
    enum_cap: int = Field(default=ENUMERATION_VERTEX_CAP, ge=1)
    jobs: int = Field(default=1, ge=1)
    time_budget: float = Field(default=ENUMERATION_TIME_BUDGET, gt=0)
    verify: bool = False
    log_level: str = "WARNING"
    log_json: bool = False


def load_config(**overrides) -> RunConfig:
    """Build a RunConfig; explicit (non-None) overrides win over the environment."""
    return RunConfig(**{key: value for key, value in overrides.items() if value is not None})
