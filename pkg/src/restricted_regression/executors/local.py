"""In-process replication executor."""

import logging
from collections.abc import Sequence
from typing import Any

from restricted_regression.executors.base import (
    ReplicationExecutor,
    ReplicationResult,
    TaskFn,
    run_task,
)

logger = logging.getLogger(__name__)

PROGRESS_EVERY = 50


class SerialExecutor(ReplicationExecutor):
    """Runs replications one after another in the calling process."""

    def map(self, fn: TaskFn, payloads: Sequence[Any]) -> list[ReplicationResult]:
        results = []
        for index, payload in enumerate(payloads):
            results.append(run_task(fn, index, payload))
            if (index + 1) % PROGRESS_EVERY == 0:
                logger.info("replications completed", extra={"done": index + 1, "total": len(payloads)})
        return results
