# src/lyndon_bwt/utils/timing.py
"""
timing.py

Wall-clock timing of named pipeline steps.
"""

import time
from contextlib import contextmanager
from typing import Dict, Iterator


class StepTimes:
    """Accumulates perf_counter seconds per step name, in first-seen order."""

    def __init__(self) -> None:
        self.seconds: Dict[str, float] = {}

    @contextmanager
    def step(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            self.seconds[name] = self.seconds.get(name, 0.0) + time.perf_counter() - start

    @property
    def total(self) -> float:
        return sum(self.seconds.values())
