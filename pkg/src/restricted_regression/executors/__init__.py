"""Replication backends for the simulation studies."""

import logging

from restricted_regression.core.errors import InvalidParameterError
from restricted_regression.executors.base import (
    ReplicationExecutor,
    ReplicationResult,
    ReplicationStatus,
    run_task,
)

logger = logging.getLogger(__name__)

__all__ = [
    "ReplicationExecutor",
    "ReplicationResult",
    "ReplicationStatus",
    "create_executor",
    "run_task",
]


def create_executor(jobs: int = 1) -> ReplicationExecutor:
    """Create a replication executor.

    Args:
        jobs: 1 for in-process execution, more for a process pool.

    Returns:
        Configured ReplicationExecutor instance.

    Raises:
        InvalidParameterError: If ``jobs`` < 1.
    """
    if jobs < 1:
        raise InvalidParameterError(f"jobs must be >= 1, got {jobs}")
    if jobs > 1:
        from restricted_regression.executors.pool import ProcessPoolReplicationExecutor

        logger.info("Using process pool executor", extra={"jobs": jobs})
        return ProcessPoolReplicationExecutor(jobs)
    from restricted_regression.executors.local import SerialExecutor

    logger.debug("Using serial executor")
    return SerialExecutor()
