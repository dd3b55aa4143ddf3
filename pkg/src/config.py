"""
Settings for the uag library and command.

Values come from the environment, optionally seeded from a .env file.
"""
import os
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator

# Load environment variables
load_dotenv()

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class Settings(BaseModel):
    """Validated configuration."""

    log_level: str = "WARNING"
    check_trials: int = Field(500, ge=1)
    check_seed: int = Field(1, ge=0)
    check_max_f: int = Field(6, ge=1)
    check_max_d: int = Field(3, ge=0)
    check_workers: int = Field(1, ge=1)
    oracle_slack: int = Field(2, ge=0)

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        level = value.upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"UAG_LOG_LEVEL must be one of {', '.join(LOG_LEVELS)}, got '{value}'")
        return level

    @classmethod
    def from_env(cls) -> "Settings":
        """Read UAG_* variables, leaving unset ones at their defaults."""
        values = {}
        for name in cls.model_fields:
            raw = os.getenv(f"UAG_{name.upper()}")
            if raw is not None and raw.strip():
                values[name] = raw.strip()
        return cls(**values)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings.from_env()
