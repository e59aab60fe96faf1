"""
Measure runtimes (e.g., of the verification of a catalog entry).
"""

import time


class Stopwatch:
    """
    Measure the wall time of a code block in milliseconds:

        with Stopwatch() as stopwatch:
            ...
        print(stopwatch.millis)
    """

    def __init__(self) -> None:
        self.start = float("nan")
        self.millis = 0

    def __enter__(self) -> "Stopwatch":
        self.start = time.perf_counter()
        return self

    def __exit__(self, *_: object) -> None:
        self.millis = round(1_000 * (time.perf_counter() - self.start))
