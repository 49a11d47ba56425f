import time
from contextlib import contextmanager
from typing import Iterator

import numpy as np

from scr.utils.types_alias import Timings


def format_elapsed(
        t: float,
        prec: int = 3
) -> str:
    if t < 0.:
        raise ValueError('Elapsed time "t" must be a non-negative number.')
    n = 3.

    if t * n < 1.:  # less than 1/n seconds -> show milliseconds
        return f"{np.round(t * 1000., prec):.{prec:d}f} milliseconds"
    if t / 60. < n:  # less than n minutes -> show seconds
        return f"{np.round(t, prec):.{prec:d}f} seconds"
    if t / 60. < n * 60.:  # between n minutes and n hours -> show minutes
        return f"{np.round(t / 60., prec):.{prec:d}f} minutes"
    return f"{np.round(t / 3600., prec):.{prec:d}f} hours"


class StageTimer:
    """
    Accumulates wall-clock seconds per named stage.
    """

    def __init__(self):
        self.seconds: Timings = {}

    @contextmanager
    def stage(
            self,
            name: str
    ) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            self.seconds[name] = self.seconds.get(name, 0.) + time.perf_counter() - start

    def merge(
            self,
            other: "StageTimer",
            prefix: str = ""
    ) -> None:
        for name, seconds in other.seconds.items():
            self.seconds[f"{prefix}{name}"] = self.seconds.get(f"{prefix}{name}", 0.) + seconds

    def report(self) -> str:
        return "\n".join(f"  {name}: {format_elapsed(seconds)}" for name, seconds in self.seconds.items())
