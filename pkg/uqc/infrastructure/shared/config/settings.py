from pathlib import Path
from functools import lru_cache
from typing import Literal
from pydantic_settings import BaseSettings, SettingsConfigDict
from pydantic import Field

ENV_PATH = Path(__file__).resolve().parents[4] / ".env"

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


class LoggingSettings(BaseSettings):
    """Settings for process logging"""
    level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = Field(default="INFO", description="Root log level")
    format: str = Field(default=LOG_FORMAT, description="logging.basicConfig format string")

    model_config = SettingsConfigDict(
        env_file=ENV_PATH,
        env_prefix="UQC_LOG_",
        case_sensitive=False,
        extra="ignore",
    )


class RunSettings(BaseSettings):
    """Settings for run directories and sampling"""
    output_root: Path = Field(default=Path("runs"), description="Parent directory of the run directories")
    default_seed: int = Field(default=42, ge=0, description="Master seed when the config does not set one")

    model_config = SettingsConfigDict(
        env_file=ENV_PATH,
        env_prefix="UQC_",
        case_sensitive=False,
        extra="ignore", # Ignore extra fields from .env
    )


class AppSettings(BaseSettings):
    """Main application settings."""

    # Logging settings
    logging: LoggingSettings = Field(default_factory=LoggingSettings)

    # Run settings
    run: RunSettings = Field(default_factory=RunSettings)

    model_config = SettingsConfigDict(
        case_sensitive=False,
        env_nested_delimiter="__",
        extra="ignore", # Ignore extra fields from .env
    )


@lru_cache
def get_settings() -> AppSettings:
    """Get cached application settings."""
    return AppSettings()
