"""Pydantic settings models for qcaveat configuration."""

from functools import lru_cache
from pathlib import Path

from pydantic import BaseModel, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from qcaveat.config.defaults import (
    DEFAULT_CLOCK_QUBITS,
    DEFAULT_LOG_BACKUP_COUNT,
    DEFAULT_LOG_LEVEL,
    DEFAULT_LOG_MAX_SIZE_MB,
    DEFAULT_OUTPUT_FORMAT,
    DEFAULT_SAFETY_FACTOR,
    DEFAULT_THREADS,
    MAX_QUBITS,
    OUTPUT_FORMATS,
    REPORTS_DIR,
)


class SimulationSettings(BaseModel):
    """Statevector simulation configuration."""

    max_qubits: int = Field(default=MAX_QUBITS, ge=1, le=MAX_QUBITS)
    safety_factor: float = Field(default=DEFAULT_SAFETY_FACTOR, gt=0.0, lt=1.0)
    default_clock_qubits: int = Field(default=DEFAULT_CLOCK_QUBITS, ge=1)


class OutputSettings(BaseModel):
    """Report output configuration."""

    directory: Path = REPORTS_DIR
    format: str = DEFAULT_OUTPUT_FORMAT

    @field_validator("format")
    @classmethod
    def validate_format(cls, v: str) -> str:
        """Validate output format."""
        v = v.lower()
        if v not in OUTPUT_FORMATS:
            raise ValueError(f"Invalid output format: {v}. Must be one of {list(OUTPUT_FORMATS)}")
        return v


class LoggingSettings(BaseModel):
    """Logging configuration."""

    level: str = DEFAULT_LOG_LEVEL
    file: Path | None = None
    max_size_mb: int = DEFAULT_LOG_MAX_SIZE_MB
    backup_count: int = DEFAULT_LOG_BACKUP_COUNT

    @field_validator("level")
    @classmethod
    def validate_level(cls, v: str) -> str:
        """Validate log level."""
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        v = v.upper()
        if v not in valid_levels:
            raise ValueError(f"Invalid log level: {v}. Must be one of {valid_levels}")
        return v


class Settings(BaseSettings):
    """Main settings class for qcaveat."""

    model_config = SettingsConfigDict(
        env_prefix="QCAVEAT_",
        env_nested_delimiter="__",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # QCAVEAT_THREADS caps experiment workers
    threads: int = Field(default=DEFAULT_THREADS, ge=1)

    simulation: SimulationSettings = Field(default_factory=SimulationSettings)
    output: OutputSettings = Field(default_factory=OutputSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
