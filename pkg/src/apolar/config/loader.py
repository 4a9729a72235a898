"""Configuration loading utilities."""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Any

import yaml
from pydantic import ValidationError

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

from apolar.config.schema import CorpusSpec
from apolar.errors import ApolarError


class ConfigError(ApolarError):
    """Configuration loading or validation error."""


class ConfigFileError(ConfigError):
    """The configuration file is missing or unreadable."""

    exit_code = 5


def load_yaml(path: Path) -> dict[str, Any]:
    """Load a YAML file.

    Args:
        path: Path to the YAML file.

    Returns:
        Parsed YAML contents as a dictionary.

    Raises:
        ConfigError: If the file cannot be loaded or parsed.
    """
    try:
        with open(path) as f:
            data = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise ConfigError(f"Invalid YAML in {path}: {e}") from e
    except OSError as e:
        raise ConfigFileError(f"Cannot read config file {path}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"Expected a mapping at the top of {path}")
    return data


def load_toml(path: Path) -> dict[str, Any]:
    try:
        with open(path, "rb") as f:
            return tomllib.load(f)
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"Invalid TOML in {path}: {e}") from e
    except OSError as e:
        raise ConfigFileError(f"Cannot read config file {path}: {e}") from e


def load_corpus_spec(
    source: Path | str | dict[str, Any],
    overrides: dict[str, Any] | None = None,
) -> CorpusSpec:
    """Load and validate a corpus specification.

    Args:
        source: Path to a YAML or TOML file, or a config dict. A TOML file
            may nest the settings under a ``[corpus]`` table.
        overrides: Values that replace those from ``source`` (CLI flags);
            ``None`` entries are ignored.

    Returns:
        Validated CorpusSpec instance.

    Raises:
        ConfigError: If the configuration is invalid.
    """
    if isinstance(source, dict):
        config_dict = dict(source)
    else:
        source = Path(source)

        if not source.exists():
            raise ConfigFileError(f"Config file not found: {source}")

        if source.suffix in (".yaml", ".yml"):
            config_dict = load_yaml(source)
        elif source.suffix == ".toml":
            config_dict = load_toml(source)
            config_dict = config_dict.get("corpus", config_dict)
        else:
            raise ConfigError(f"Unsupported config format: {source.suffix}")

    for key, value in (overrides or {}).items():
        if value is not None:
            config_dict[key] = value

    try:
        return CorpusSpec.model_validate(config_dict)
    except ValidationError as e:
        raise ConfigError(f"Invalid configuration: {e}") from e
