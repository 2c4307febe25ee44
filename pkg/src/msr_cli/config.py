"""Configuration management for the MSR CLI."""

import tomllib
from pathlib import Path
from typing import Literal

import tomli_w
from pydantic import Field, ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from .exceptions import ConfigError

LogLevel = Literal["DEBUG", "INFO", "WARNING", "ERROR"]

# config set KEY -> (TOML section, TOML key)
CONFIG_KEYS: dict[str, tuple[str, str]] = {
    "modulus": ("code", "modulus"),
    "output_format": ("output", "default_format"),
    "max_sweep_n": ("verify", "max_n"),
    "seed": ("verify", "seed"),
    "log_level": ("logging", "level"),
}


class MSRConfig(BaseSettings):
    """MSR CLI configuration.

    Configuration is loaded from (in order of priority):
    1. Environment variables (MSR_MODULUS, MSR_OUTPUT_FORMAT, ...)
    2. .env file in current directory
    3. Config file at ~/.config/msr-cli/config.toml
    """

    model_config = SettingsConfigDict(
        env_prefix="MSR_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
        validate_assignment=True,
    )

    modulus: int | None = Field(
        default=None,
        description="Prime modulus used when --p is not given",
    )
    output_format: Literal["table", "json"] = Field(
        default="table",
        description="Default output format",
    )
    max_sweep_n: int = Field(
        default=12,
        description="Largest n accepted by exhaustive verification sweeps",
        ge=3,
    )
    seed: int = Field(
        default=0,
        description="Seed for random codewords in sweeps and benchmarks",
        ge=0,
    )
    log_level: LogLevel = Field(
        default="WARNING",
        description="Log level when --verbose is not given",
    )


def get_config_dir() -> Path:
    """Get the configuration directory path."""
    config_dir = Path.home() / ".config" / "msr-cli"
    config_dir.mkdir(parents=True, exist_ok=True)
    return config_dir


def get_config_file() -> Path:
    """Get the configuration file path."""
    return get_config_dir() / "config.toml"


def _read_file() -> dict:
    config_file = get_config_file()
    if not config_file.exists():
        return {}
    try:
        with open(config_file, "rb") as f:
            return tomllib.load(f)
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"Config file {config_file} is not valid TOML: {e}") from e


def load_config() -> MSRConfig:
    """Load configuration from environment and config file."""
    config = MSRConfig()
    explicit = config.model_fields_set
    toml_data = _read_file()

    try:
        # Environment wins; the file only fills what the environment left unset
        for field, (section, key) in CONFIG_KEYS.items():
            value = toml_data.get(section, {}).get(key)
            if value is not None and field not in explicit:
                setattr(config, field, value)
    except ValidationError as e:
        raise ConfigError(f"Invalid value in {get_config_file()}: {e}") from e

    return config


def save_config(**values: object) -> None:
    """Save the given configuration values to the TOML file.

    Keys are MSRConfig field names; None removes the key from the file.
    """
    config_file = get_config_file()
    config_data = _read_file()

    for field, value in values.items():
        if field not in CONFIG_KEYS:
            raise ConfigError(f"Unknown configuration key: {field}")
        section, key = CONFIG_KEYS[field]
        if value is None:
            config_data.get(section, {}).pop(key, None)
            continue
        config_data.setdefault(section, {})[key] = value

    with open(config_file, "wb") as f:
        tomli_w.dump(config_data, f)

    # Set proper permissions (read/write for owner only)
    config_file.chmod(0o600)
