"""Loading and validating fit configuration documents.

Fit documents are YAML (or JSON) files validated against
``config/schema/fit_config.schema.json`` before they are parsed into
:class:`~restricted_regression.config.FitConfig`.
"""

import json
import logging
from pathlib import Path
from typing import Any

import yaml
from jsonschema import Draft7Validator, ValidationError

from restricted_regression.config import (
    CONFIG_DIR,
    DataConfig,
    FitConfig,
    MultivariatePriorConfig,
    RestrictionConfig,
    SamplerConfig,
    UnivariatePriorConfig,
)
from restricted_regression.core.errors import ConfigError, ConfigValidationError

logger = logging.getLogger(__name__)

SCHEMA_PATH = CONFIG_DIR / "schema" / "fit_config.schema.json"


class ConfigLoader:
    """Loads and parses fit configurations.

    Example:
        ```python
        config = ConfigLoader.load("path/to/fit.yaml")
        # Or load a shipped configuration by name
        config = ConfigLoader.load_by_name("chemical")
        ```
    """

    _schema: dict[str, Any] | None = None

    @classmethod
    def _get_schema(cls) -> dict[str, Any]:
        """Load and cache the JSON schema."""
        if cls._schema is None:
            with SCHEMA_PATH.open(encoding="utf-8") as f:
                cls._schema = json.load(f)
        assert cls._schema is not None
        return cls._schema

    @classmethod
    def validate(cls, data: Any) -> list[str]:
        """Validate a raw document against the JSON schema.

        Returns:
            Validation error messages, empty if the document is valid.
        """
        validator = Draft7Validator(cls._get_schema())
        errors = sorted(validator.iter_errors(data), key=lambda e: list(e.path))
        return [cls._format_error(e) for e in errors]

    @staticmethod
    def _format_error(error: ValidationError) -> str:
        path = ".".join(str(p) for p in error.absolute_path) or "(root)"
        return f"{path}: {error.message}"

    @staticmethod
    def read(path: str | Path) -> dict[str, Any]:
        """Read a raw document without validating it.

        Raises:
            ConfigError: If the file is missing or is not a YAML/JSON mapping.
        """
        path = Path(path)
        if not path.exists():
            raise ConfigError(f"config file not found: {path}")
        try:
            with path.open(encoding="utf-8") as f:
                raw = json.load(f) if path.suffix == ".json" else yaml.safe_load(f)
        except (json.JSONDecodeError, yaml.YAMLError) as exc:
            raise ConfigError(f"cannot decode {path.name}: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError(f"{path.name} must contain a mapping")
        return raw

    @classmethod
    def load(cls, path: str | Path, validate: bool = True) -> FitConfig:
        """Load a fit configuration.

        Relative data and restriction paths resolve against the document's
        directory.

        Raises:
            ConfigError: If the file is missing or cannot be decoded.
            ConfigValidationError: If schema validation fails.
        """
        path = Path(path)
        raw = cls.read(path)
        if validate:
            errors = cls.validate(raw)
            if errors:
                raise ConfigValidationError(path.name, errors)
        config = cls.parse(raw, base_dir=path.resolve().parent)
        config.source = path
        logger.debug("loaded config", extra={"path": str(path), "name": config.name})
        return config

    @classmethod
    def load_by_name(cls, name: str, validate: bool = True) -> FitConfig:
        """Load a shipped configuration (file name without ``.yaml``)."""
        path = CONFIG_DIR / f"{name}.yaml"
        if not path.exists():
            raise ConfigError(f"no shipped config named '{name}' (see 'restreg configs')")
        return cls.load(path, validate=validate)

    @staticmethod
    def available() -> list[str]:
        """Names of the shipped configurations."""
        return sorted(p.stem for p in CONFIG_DIR.glob("*.yaml"))

    @classmethod
    def parse(cls, data: dict[str, Any], base_dir: Path | None = None) -> FitConfig:
        """Parse a validated raw document into a :class:`FitConfig`."""
        model = data.get("model", "univariate")
        prior_data = data.get("prior", {})
        prior: UnivariatePriorConfig | MultivariatePriorConfig
        try:
            if model == "multivariate":
                prior = MultivariatePriorConfig.from_dict(prior_data)
            else:
                prior = UnivariatePriorConfig.from_dict(prior_data)
        except KeyError as exc:
            raise ConfigError(f"prior: missing hyperparameter {exc.args[0]!r}") from exc
        return FitConfig(
            name=data.get("name", "fit"),
            description=data.get("description", ""),
            model=model,
            data=DataConfig.from_dict(data.get("data", {}), base_dir),
            restrictions=RestrictionConfig.from_dict(data.get("restrictions", {}), base_dir),
            prior=prior,
            sampler=SamplerConfig.from_dict(data.get("sampler", {})),
        )
