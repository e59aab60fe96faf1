"""
Tests for `qnahm.utils.multiproc`.
"""

import os

import pytest
from pytest import MonkeyPatch

from qnahm.utils.multiproc import (
    get_number_of_available_cores,
    parallel_map,
    resolve_jobs,
)


def _square(x: int) -> int:
    return x * x


def test__get_number_of_available_cores(monkeypatch: MonkeyPatch) -> None:
    """
    Test `qnahm.utils.multiproc.get_number_of_available_cores()`.
    """

    # Case 1: Assume os.sched_getaffinity() is available
    # We need to monkeypatch this to make sure the test works on macOS
    with monkeypatch.context() as context:
        context.setattr(
            target=os,
            name="sched_getaffinity",
            value=lambda _: 13 * [0],
            raising=False,
        )
        assert get_number_of_available_cores() == 13

    # Case 2: Assume os.sched_getaffinity() is not available
    with monkeypatch.context() as context:
        context.delattr(
            target=os,
            name="sched_getaffinity",
            raising=False,
        )
        assert get_number_of_available_cores(default=17) == 17


def test__resolve_jobs(monkeypatch: MonkeyPatch) -> None:
    """
    Test `qnahm.utils.multiproc.resolve_jobs()`.
    """

    monkeypatch.setattr(
        target=os,
        name="sched_getaffinity",
        value=lambda _: 5 * [0],
        raising=False,
    )

    # Case 1: Explicit number of jobs
    assert resolve_jobs(3) == 3

    # Case 2: None and 0 mean "all cores"
    assert resolve_jobs(None) == 5
    assert resolve_jobs(0) == 5

    # Case 3: Negative values are invalid
    with pytest.raises(ValueError) as value_error:
        resolve_jobs(-1)
    assert "Number of jobs must be >= 0" in str(value_error)


def test__parallel_map() -> None:
    """
    Test `qnahm.utils.multiproc.parallel_map()`.
    """

    # Case 1: Sequential
    assert parallel_map(_square, [3, 1, 2], jobs=1) == [9, 1, 4]

    # Case 2: No items
    assert parallel_map(_square, [], jobs=4) == []

    # Case 3: Process pool (results keep the order of the items)
    items = list(range(20))
    assert parallel_map(_square, items, jobs=2) == [x * x for x in items]
