"""Process-pool replication executor.

Workers are started with the ``spawn`` method so that no parent state
(RNG streams included) leaks into a replication.
"""

import logging
import multiprocessing
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Any

from restricted_regression.executors.base import (
    ReplicationExecutor,
    ReplicationResult,
    TaskFn,
    run_task,
)

logger = logging.getLogger(__name__)


class ProcessPoolReplicationExecutor(ReplicationExecutor):
    """Runs replications on up to ``jobs`` worker processes.

    Attributes:
        jobs: Number of worker processes.
    """

    def __init__(self, jobs: int) -> None:
        self.jobs = jobs
        self._pool = ProcessPoolExecutor(
            max_workers=jobs, mp_context=multiprocessing.get_context("spawn")
        )

    def map(self, fn: TaskFn, payloads: Sequence[Any]) -> list[ReplicationResult]:
        futures = {
            self._pool.submit(run_task, fn, index, payload): index
            for index, payload in enumerate(payloads)
        }
        results: list[ReplicationResult] = []
        for done, future in enumerate(as_completed(futures), start=1):
            results.append(future.result())
            if done % max(1, len(payloads) // 10) == 0:
                logger.info("replications completed", extra={"done": done, "total": len(payloads)})
        return sorted(results, key=lambda r: r.index)

    def shutdown(self) -> None:
        self._pool.shutdown(wait=True, cancel_futures=True)
