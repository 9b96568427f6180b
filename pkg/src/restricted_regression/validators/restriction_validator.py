"""Restriction system validation.

Checks that K <= H beta <= G is a system of q independent, non-empty
restrictions on p >= q coefficients before any sampler touches it.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, ClassVar

import numpy as np

from restricted_regression.core.errors import (
    EmptyIntervalError,
    ModelError,
    RankDeficientError,
    ShapeMismatchError,
)

if TYPE_CHECKING:
    from restricted_regression.restrictions.system import RestrictionSystem


class ValidationStatus(Enum):
    """Status of restriction validation."""

    VALID = "valid"
    SHAPE_MISMATCH = "shape_mismatch"
    RANK_DEFICIENT = "rank_deficient"
    EMPTY_INTERVAL = "empty_interval"


@dataclass
class ValidationResult:
    """Result of restriction validation.

    Attributes:
        status: First failing check, or VALID.
        errors: Validation error messages.
        warnings: Non-blocking findings (e.g. a row bounded on neither side).
    """

    status: ValidationStatus
    errors: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return self.status == ValidationStatus.VALID

    def raise_for_status(self) -> None:
        """Raise the model error matching the status, if any."""
        if self.valid:
            return
        error_cls = RestrictionValidator.ERRORS[self.status]
        raise error_cls("; ".join(self.errors))


class RestrictionValidator:
    """Validator for univariate (K <= H beta <= G) and multivariate
    (K <= R B <= G) restriction systems.

    Example:
        ```python
        result = RestrictionValidator().validate(system)
        if not result.valid:
            print(result.errors)
        ```
    """

    ERRORS: ClassVar[dict[ValidationStatus, type[ModelError]]] = {
        ValidationStatus.SHAPE_MISMATCH: ShapeMismatchError,
        ValidationStatus.RANK_DEFICIENT: RankDeficientError,
        ValidationStatus.EMPTY_INTERVAL: EmptyIntervalError,
    }

    def validate(self, system: "RestrictionSystem") -> ValidationResult:
        errors = self._shape_errors(system)
        if errors:
            return ValidationResult(ValidationStatus.SHAPE_MISMATCH, errors)

        rank = int(np.linalg.matrix_rank(system.H))
        if rank < system.q:
            return ValidationResult(
                ValidationStatus.RANK_DEFICIENT,
                [
                    f"restrictions are not independent: rank(H) = {rank} < q = {system.q}"
                ],
            )

        errors = self._interval_errors(system)
        if errors:
            return ValidationResult(ValidationStatus.EMPTY_INTERVAL, errors)

        warnings = [
            f"row {i + 1} is bounded on neither side"
            for i in range(system.q)
            if np.all(np.isneginf(system.K[i])) and np.all(np.isposinf(system.G[i]))
        ]
        return ValidationResult(ValidationStatus.VALID, warnings=warnings)

    @staticmethod
    def _shape_errors(system: "RestrictionSystem") -> list[str]:
        errors: list[str] = []
        q, p = system.H.shape
        if q == 0 or p == 0:
            errors.append(f"restriction matrix has empty shape {system.H.shape}")
            return errors
        if q > p:
            errors.append(f"more restrictions ({q}) than coefficients ({p})")
        if not np.all(np.isfinite(system.H)):
            errors.append("restriction matrix has non-finite entries")
        if system.K.shape != system.G.shape:
            errors.append(f"K has shape {system.K.shape}, G has shape {system.G.shape}")
        elif system.K.ndim not in {1, 2} or system.K.shape[0] != q:
            errors.append(f"bounds of shape {system.K.shape} do not match {q} restrictions")
        if np.any(np.isnan(system.K)) or np.any(np.isnan(system.G)):
            errors.append("bounds contain NaN")
        if system.preferred is not None:
            S = system.preferred
            if len(S) != q or len(set(S)) != q or not all(0 <= j < p for j in S):
                errors.append(
                    f"preferred block {[j + 1 for j in S]} must list {q} distinct "
                    f"column indices in 1..{p}"
                )
        return errors

    @staticmethod
    def _interval_errors(system: "RestrictionSystem") -> list[str]:
        bad = np.argwhere(~(system.K < system.G))
        return [
            f"empty restriction interval at {_position(idx)}: "
            f"K = {system.K[tuple(idx)]} >= G = {system.G[tuple(idx)]}"
            for idx in bad
        ]


def _position(idx: np.ndarray) -> str:
    if idx.size == 1:
        return f"row {int(idx[0]) + 1}"
    return f"row {int(idx[0]) + 1}, response {int(idx[1]) + 1}"
