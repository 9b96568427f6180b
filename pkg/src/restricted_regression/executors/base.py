"""Base interface for running independent replications.

A study hands an executor a picklable task function and a list of payloads;
the executor returns one ``ReplicationResult`` per payload, in payload
order, whatever order the work actually finished in.
"""

import time
from abc import ABC, abstractmethod
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from restricted_regression.core.errors import RestrictedRegressionError


class ReplicationStatus(Enum):
    """Status of one replication."""

    SUCCESS = "success"
    ERROR = "error"


@dataclass
class ReplicationResult:
    """Result of one replication.

    Attributes:
        index: Position of the payload in the submitted sequence.
        status: Success or error.
        value: Return value of the task on success.
        error: Error message if the task raised a library error.
        metadata: Timing and other bookkeeping.
    """

    index: int
    status: ReplicationStatus
    value: Any = None
    error: str | None = None
    metadata: dict[str, Any] = field(default_factory=dict)

    @property
    def success(self) -> bool:
        return self.status == ReplicationStatus.SUCCESS


TaskFn = Callable[[Any], Any]


def run_task(fn: TaskFn, index: int, payload: Any) -> ReplicationResult:
    """Run one task, turning library errors into an ERROR result.

    Anything that is not a ``RestrictedRegressionError`` propagates.
    """
    started = time.perf_counter()
    try:
        value = fn(payload)
    except RestrictedRegressionError as exc:
        return ReplicationResult(
            index=index,
            status=ReplicationStatus.ERROR,
            error=f"{type(exc).__name__}: {exc}",
            metadata={"seconds": time.perf_counter() - started},
        )
    return ReplicationResult(
        index=index,
        status=ReplicationStatus.SUCCESS,
        value=value,
        metadata={"seconds": time.perf_counter() - started},
    )


class ReplicationExecutor(ABC):
    """Abstract base class for replication backends.

    Implementations:
        - SerialExecutor: runs tasks in the calling process.
        - ProcessPoolReplicationExecutor: spreads tasks over worker processes.
    """

    @abstractmethod
    def map(self, fn: TaskFn, payloads: Sequence[Any]) -> list[ReplicationResult]:
        """Run ``fn`` on every payload.

        Args:
            fn: Module-level function of one argument.
            payloads: Task inputs.

        Returns:
            Results ordered like ``payloads``.
        """

    def shutdown(self) -> None:
        """Release worker resources. Override in pooled implementations."""

    def __enter__(self) -> "ReplicationExecutor":
        return self

    def __exit__(
        self,
        exc_type: type[BaseException] | None,
        exc_val: BaseException | None,
        exc_tb: Any,
    ) -> None:
        self.shutdown()
