"""Exception hierarchy.

Every error raised by the library derives from ``RestrictedRegressionError``.
Two families carry the CLI exit code used when they escape a command:
``ConfigError`` (bad input files or options, exit 2) and ``ModelError``
(infeasible or degenerate model, exit 3).
"""

from typing import ClassVar


class RestrictedRegressionError(Exception):
    """Base class for all library errors."""

    exit_code: ClassVar[int] = 1


# ---------------------------------------------------------------------------
# Configuration and input errors (exit 2)
# ---------------------------------------------------------------------------


class ConfigError(RestrictedRegressionError):
    """A configuration document, dataset or CLI option is unusable."""

    exit_code: ClassVar[int] = 2


class ConfigValidationError(ConfigError):
    """A config document failed schema validation.

    Attributes:
        errors: Messages of the form ``path.to.field: message``.
    """

    def __init__(self, source: str, errors: list[str]) -> None:
        self.errors = errors
        details = "\n".join(f"  - {e}" for e in errors)
        super().__init__(f"Config validation failed for {source}:\n{details}")


class DatasetError(ConfigError):
    """A dataset file is missing or cannot be used."""


class ParseError(DatasetError):
    """A dataset or chain file could not be parsed.

    Attributes:
        row: 1-based data row of the failure, when known.
        column: Column name of the failure, when known.
    """

    def __init__(
        self, message: str, *, row: int | None = None, column: str | None = None
    ) -> None:
        self.row = row
        self.column = column
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column '{column}'")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(f"{prefix}{message}")


class MissingValueError(ParseError):
    """A dataset cell is empty."""


class InsufficientDataError(ConfigError):
    """A series is too short for the requested diagnostic."""


class UnknownStudyError(ConfigError):
    """The requested replication study does not exist."""


# ---------------------------------------------------------------------------
# Model errors (exit 3)
# ---------------------------------------------------------------------------


class ModelError(RestrictedRegressionError):
    """The model, prior or restriction system is infeasible or degenerate."""

    exit_code: ClassVar[int] = 3


class DimensionMismatchError(ModelError):
    """Operands of a matrix operation do not conform."""


class ShapeMismatchError(ModelError):
    """Restriction, design or coefficient shapes do not agree."""


class NotPositiveDefiniteError(ModelError):
    """A matrix expected to be symmetric positive definite is not."""


class InvalidParameterError(ModelError):
    """A distribution or sampler parameter is outside its domain."""


class InvalidDegreesOfFreedomError(InvalidParameterError):
    """Inverse Wishart degrees of freedom must exceed dimension - 1."""


class EmptyIntervalError(ModelError):
    """A truncation or restriction interval has lower >= upper."""


class InfeasibleStartError(ModelError):
    """A truncated sampler was started outside its support."""


class SingularTransformError(ModelError):
    """The linear map of a truncated sampler is not invertible."""


class RankDeficientError(ModelError):
    """The restriction rows are not linearly independent."""


class NoFullRankBlockError(ModelError):
    """No invertible q x q column block exists in the restriction matrix."""


class PreferredSingularError(ModelError):
    """The user-supplied column block of the restriction matrix is singular."""


class NonPositiveEtaError(ModelError):
    """The posterior inverse-gamma scale came out non-positive."""


class NotSquareError(ModelError):
    """The baseline sampler needs a square restriction matrix."""


class SingularError(ModelError):
    """The square restriction matrix of the baseline sampler is singular."""


class EmptyChainError(ModelError):
    """No draws remain after burn-in."""


class NonPositiveMseError(ModelError):
    """Relative efficiency needs strictly positive mean squared errors."""
