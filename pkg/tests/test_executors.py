"""Tests for the replication executors."""

import math

import pytest

from restricted_regression.core.errors import InvalidParameterError
from restricted_regression.executors import (
    ReplicationStatus,
    create_executor,
    run_task,
)
from restricted_regression.executors.local import SerialExecutor
from restricted_regression.experiments import Study


def _boom(_: object) -> None:
    raise RuntimeError("not a library error")


@pytest.mark.unit
def test_run_task_success():
    result = run_task(math.sqrt, 3, 16.0)
    assert result.success
    assert result.index == 3
    assert result.value == 4.0
    assert result.metadata["seconds"] >= 0.0


@pytest.mark.unit
def test_run_task_captures_library_errors():
    result = run_task(Study.parse, 0, "example3")
    assert result.status is ReplicationStatus.ERROR
    assert result.error.startswith("UnknownStudyError")


@pytest.mark.unit
def test_run_task_propagates_other_errors():
    with pytest.raises(RuntimeError):
        run_task(_boom, 0, None)


@pytest.mark.unit
def test_serial_executor_keeps_order():
    with create_executor(1) as executor:
        assert isinstance(executor, SerialExecutor)
        results = executor.map(math.sqrt, [1.0, 4.0, 9.0])
    assert [r.value for r in results] == [1.0, 2.0, 3.0]


@pytest.mark.unit
def test_create_executor_rejects_zero_jobs():
    with pytest.raises(InvalidParameterError):
        create_executor(0)


@pytest.mark.integration
def test_process_pool_matches_serial():
    payloads = [float(i * i) for i in range(12)] + ["example3"]
    with create_executor(1) as serial:
        expected = serial.map(math.sqrt, payloads[:-1])
    with create_executor(2) as pool:
        results = pool.map(math.sqrt, payloads[:-1])
        failures = pool.map(Study.parse, payloads[-1:])
    assert [r.index for r in results] == list(range(12))
    assert [r.value for r in results] == [r.value for r in expected]
    assert not failures[0].success
