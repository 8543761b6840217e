# src/lyndon_bwt/succinct/select.py
"""
select.py

Per-symbol select over the BWT string: select(c, k) is the 1-based
position of the k-th occurrence of symbol c in L.

Dependencies:
    - numpy
    - utils.memory

PositionSelect keeps every occurrence (one word per symbol of L, constant
time). SampledSelect keeps every ``rate``-th occurrence and finishes with a
scan of L, trading time for O(n / rate) words.
"""

import logging

import numpy as np

from ..exceptions import OutOfRange
from ..utils.memory import allocate

logger = logging.getLogger(__name__)

DEFAULT_SAMPLE_RATE = 64


def _occurrence_order(l: np.ndarray, dtype: np.dtype) -> np.ndarray:
    """0-based positions of L grouped by symbol, in increasing position within each group."""
    order = allocate(l.shape[0], dtype, "select-positions")
    order[:] = np.argsort(l, kind="stable")
    return order


def _symbol_starts(l: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    counts = np.bincount(l, minlength=256).astype(np.int64)
    starts = np.zeros(257, dtype=np.int64)
    np.cumsum(counts, out=starts[1:])
    return starts, counts


class PositionSelect:
    """All occurrence positions of each symbol, concatenated in symbol order."""

    def __init__(self, l: np.ndarray, dtype: np.dtype = np.dtype(np.int64)):
        self.n = int(l.shape[0])
        self.starts, self.counts = _symbol_starts(l)
        self.order = _occurrence_order(l, dtype)

    def select(self, c: int, k: int) -> int:
        if k < 1 or k > self.counts[c]:
            raise OutOfRange(f"select({c}, {k}) with {int(self.counts[c])} occurrences")
        return int(self.order[self.starts[c] + k - 1]) + 1

    def overhead_bits(self) -> int:
        return int(self.order.nbytes + self.starts.nbytes + self.counts.nbytes) * 8


class SampledSelect:
    """Every ``rate``-th occurrence of each symbol plus a forward scan of L."""

    def __init__(self, l: np.ndarray, rate: int = DEFAULT_SAMPLE_RATE):
        if rate < 1:
            raise ValueError(f"Sample rate must be >= 1, got {rate}")
        self.l = l
        self.n = int(l.shape[0])
        self.rate = rate
        _, self.counts = _symbol_starts(l)
        sampled = (self.counts + rate - 1) // rate
        self.sample_starts = np.zeros(257, dtype=np.int64)
        np.cumsum(sampled, out=self.sample_starts[1:])

        order = np.argsort(l, kind="stable")
        group_starts, _ = _symbol_starts(l)
        self.samples = np.empty(int(self.sample_starts[-1]), dtype=np.int64)
        for c in np.flatnonzero(self.counts):
            group = order[group_starts[c]:group_starts[c + 1]]
            self.samples[self.sample_starts[c]:self.sample_starts[c + 1]] = group[::rate]
        del order
        logger.debug(f"Sampled select: {self.samples.size} samples at rate {rate}")

    def select(self, c: int, k: int) -> int:
        if k < 1 or k > self.counts[c]:
            raise OutOfRange(f"select({c}, {k}) with {int(self.counts[c])} occurrences")
        q, r = divmod(k - 1, self.rate)
        pos = int(self.samples[self.sample_starts[c] + q])
        # r further occurrences of c after pos
        window = self.rate
        while r:
            chunk = self.l[pos + 1:pos + 1 + window]
            hits = np.flatnonzero(chunk == c)
            if hits.size >= r:
                return pos + 1 + int(hits[r - 1]) + 1
            r -= hits.size
            pos += chunk.size
            window *= 2
        return pos + 1

    def overhead_bits(self) -> int:
        return int(self.samples.nbytes + self.sample_starts.nbytes + self.counts.nbytes) * 8
