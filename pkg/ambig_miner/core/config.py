from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # Logging settings
    LOG: str = Field(default="INFO", description="log level")
    ENV: str = Field(default="production", description="env")
    SENTRY_DSN: str | None = Field(default=None, description="sentry DSN")

    # Pipeline settings
    JOBS: int = Field(default=1, ge=1)
    SHARD_SIZE: int = Field(default=50_000, ge=1)
    SEED: int = 0
    PROGRESS: bool = True

    # Preprocess defaults
    MAX_LENGTH_RATIO: float = Field(default=9.0, ge=1.0)
    MIN_TOKENS_FOR_LANGID: int = Field(default=4, ge=0)

    model_config = SettingsConfigDict(
        env_prefix="AMBIG_MINER_", env_file=".env", extra="ignore"
    )


@lru_cache
def get_settings() -> Settings:
    return Settings()


# Usage
settings = get_settings()
