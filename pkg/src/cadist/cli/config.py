"""Run configuration: a JSON config file, command-line overrides and environment settings."""

from __future__ import annotations

import hashlib
import json
import logging
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field, ValidationError, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from cadist.exceptions import ConfigurationError
from cadist.filling.area import DEFAULT_MAX_AREA
from cadist.groups import DEFAULT_BALL_BOUND
from cadist.structures.structure import DEFAULT_WORD_BUDGET

logger = logging.getLogger(__name__)

BYTES_PER_WORD = 512
BYTES_PER_ELEMENT = 256

# Fields that do not change any artifact and stay out of the digest
UNHASHED_FIELDS = {"workers", "out_dir"}


class Settings(BaseSettings):
    """Environment settings; CADIST_BUDGET_MB caps enumeration and ball budgets."""

    model_config = SettingsConfigDict(env_prefix="CADIST_")

    budget_mb: int | None = Field(default=None, gt=0)

    def cap_words(self, requested: int) -> int:
        if self.budget_mb is None:
            return requested
        return min(requested, self.budget_mb * 2**20 // BYTES_PER_WORD)

    def cap_elements(self, requested: int) -> int:
        if self.budget_mb is None:
            return requested
        return min(requested, self.budget_mb * 2**20 // BYTES_PER_ELEMENT)


def load_settings() -> Settings:
    """Settings from the environment.

    Raises:
        ConfigurationError: If a CADIST_ variable is invalid
    """
    try:
        return Settings()
    except ValidationError as e:
        raise ConfigurationError(f"Invalid environment settings: {e}") from e


class RunConfig(BaseModel):
    """Effective configuration of one run."""

    subcommand: str = ""
    structure: str | None = None
    model: str | None = None
    n: int | None = None
    depth: int = 8
    max_words: int = DEFAULT_WORD_BUDGET
    ball_bound: int = DEFAULT_BALL_BOUND
    max_area: int = DEFAULT_MAX_AREA
    radius_cap: int | None = None
    out_dir: Path = Path("cadist-out")
    seed: int = 0
    workers: int = 1
    options: dict[str, Any] = Field(default_factory=dict)

    @field_validator("depth", "max_words", "ball_bound", "max_area", "workers")
    @classmethod
    def validate_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError(f"must be positive, got {v}")
        return v

    @field_validator("radius_cap", "n")
    @classmethod
    def validate_non_negative(cls, v: int | None) -> int | None:
        if v is not None and v < 0:
            raise ValueError(f"must be non-negative, got {v}")
        return v

    def digest(self) -> str:
        """sha256 of the canonical JSON of everything that affects artifacts."""
        data = self.model_dump(mode="json", exclude=UNHASHED_FIELDS)
        canonical = json.dumps(data, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode()).hexdigest()


class ConfigManager:
    """Loads a run config file and applies command-line overrides."""

    def __init__(self, config_path: Path | None = None) -> None:
        """Initialize config manager.

        Args:
            config_path: Optional JSON config file
        """
        self.config_path = config_path
        self.config = self._load()

    def _load(self) -> RunConfig:
        """Load configuration from file.

        Raises:
            ConfigurationError: If the file is missing or invalid
        """
        if self.config_path is None:
            return RunConfig()
        if not self.config_path.exists():
            raise ConfigurationError(f"Config file not found: {self.config_path}")
        try:
            with open(self.config_path) as f:
                data = json.load(f)
            return RunConfig.model_validate(data)
        except (json.JSONDecodeError, ValidationError) as e:
            raise ConfigurationError(f"Invalid config file {self.config_path}: {e}") from e

    def merge(self, overrides: dict[str, Any]) -> RunConfig:
        """Apply flags over the file values; flags that were not given are None.

        Raises:
            ConfigurationError: If the merged config is invalid
        """
        data = self.config.model_dump()
        options = dict(data.pop("options"))
        for key, value in overrides.items():
            if value is None:
                continue
            if key in RunConfig.model_fields:
                data[key] = value
            else:
                options[key] = value
        try:
            self.config = RunConfig.model_validate({**data, "options": options})
        except ValidationError as e:
            raise ConfigurationError(f"Invalid arguments: {e}") from e
        logger.debug("Effective config digest %s", self.config.digest())
        return self.config

    def save(self, path: Path) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w") as f:
            json.dump(self.config.model_dump(mode="json"), f, indent=2, sort_keys=True)
