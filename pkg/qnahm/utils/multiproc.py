"""
Utility functions for multiprocessing.
"""

import os
from typing import Callable, Sequence, TypeVar

from p_tqdm import p_map
from tqdm import tqdm

T = TypeVar("T")
R = TypeVar("R")


def get_number_of_available_cores(default: int = 8) -> int:
    """
    Get the number cores available to the current process (if possible,
    otherwise return the given default value).

    Args:
        default: The default number of cores that is returned if
            ``os.sched_getaffinity()`` is not available.

    Returns:
        The number of cores available to the current process.
    """

    try:
        return len(os.sched_getaffinity(0))  # type: ignore
    except AttributeError:
        return default


def resolve_jobs(jobs: int | None) -> int:
    """
    Number of worker processes for a `--jobs` value (None or 0 means
    "use all available cores").
    """

    if jobs is None or jobs == 0:
        return get_number_of_available_cores()
    if jobs < 0:
        raise ValueError(f"Number of jobs must be >= 0, not {jobs}!")
    return jobs


def parallel_map(
    function: Callable[[T], R],
    items: Sequence[T],
    jobs: int | None = 1,
    show_progress: bool = False,
) -> list[R]:
    """
    Apply `function` to all `items`, either sequentially (for a single
    job) or in a process pool, optionally with a progress bar. The
    results are in the same order as the items.

    Args:
        function: A picklable function of one argument.
        items: The inputs.
        jobs: Number of worker processes (None / 0: all cores).
        show_progress: Whether to show a progress bar.

    Returns:
        The list of results.
    """

    num_cpus = resolve_jobs(jobs)
    if num_cpus == 1 or len(items) < 2:
        return [
            function(item)
            for item in tqdm(items, ncols=80, disable=not show_progress)
        ]

    return list(
        p_map(
            function,
            items,
            num_cpus=min(num_cpus, len(items)),
            ncols=80,
            disable=not show_progress,
        )
    )
