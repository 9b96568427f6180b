"""Validators for restriction systems."""

from restricted_regression.validators.restriction_validator import (
    RestrictionValidator,
    ValidationResult,
    ValidationStatus,
)

__all__ = [
    "RestrictionValidator",
    "ValidationResult",
    "ValidationStatus",
]
