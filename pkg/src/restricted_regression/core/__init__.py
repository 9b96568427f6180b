"""Core modules for restricted-regression."""

from restricted_regression.core.errors import (
    ConfigError,
    ModelError,
    RestrictedRegressionError,
)
from restricted_regression.core.logging import setup_logging

__all__ = [
    "ConfigError",
    "ModelError",
    "RestrictedRegressionError",
    "setup_logging",
]
