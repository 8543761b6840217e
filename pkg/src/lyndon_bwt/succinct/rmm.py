# src/lyndon_bwt/succinct/rmm.py
"""
rmm.py

Range min-max tree over the excess of a parenthesis bit sequence
(1 = open, 0 = close), used to find matching closing parentheses.

Dependencies:
    - bitarray
    - numpy

Leaves summarise blocks of ``block_size`` bits; the tree is complete and
stored in arrays indexed from 1 (children of node v are 2v and 2v + 1).
Each node keeps e (total excess of its range) and m (minimum excess over
the non-empty prefixes of its range, relative to the range start). Padding
leaves get a minimum that no search can reach.

find_close scans the rest of the start block byte by byte, climbs to the
first right sibling whose minimum reaches the target, descends to the
leftmost such leaf and scans that block.
"""

import logging

import numpy as np
from bitarray import bitarray

from ..exceptions import InvariantViolation, Unbalanced

logger = logging.getLogger(__name__)

DEFAULT_BLOCK_SIZE = 512
UNREACHABLE = np.int64(1) << 40
BUILD_CHUNK_BLOCKS = 4096


def _byte_tables() -> tuple[np.ndarray, np.ndarray]:
    bits = np.unpackbits(np.arange(256, dtype=np.uint8)[:, None], axis=1, bitorder="little")
    steps = bits.astype(np.int16) * 2 - 1
    prefix = np.cumsum(steps, axis=1)
    return prefix[:, -1].astype(np.int64), prefix.min(axis=1).astype(np.int64)


BYTE_EXCESS, BYTE_MIN = _byte_tables()


class RmmTree:
    """Excess summaries over a balanced parenthesis bitarray."""

    def __init__(self, bits: bitarray, block_size: int = DEFAULT_BLOCK_SIZE):
        if block_size <= 0 or block_size % 8:
            raise ValueError(f"Block size must be a positive multiple of 8, got {block_size}")
        self.bits = bits
        self.n_bits = len(bits)
        self.block_size = block_size
        self._bytes = np.frombuffer(bits.tobytes(), dtype=np.uint8)

        self.num_blocks = max(1, (self.n_bits + block_size - 1) // block_size)
        self.leaf_start = 1 << (self.num_blocks - 1).bit_length()
        self.e = np.zeros(2 * self.leaf_start, dtype=np.int64)
        self.m = np.full(2 * self.leaf_start, UNREACHABLE, dtype=np.int64)

        self._build_leaves()
        for v in range(self.leaf_start - 1, 0, -1):
            left, right = 2 * v, 2 * v + 1
            self.e[v] = self.e[left] + self.e[right]
            self.m[v] = min(self.m[left], self.e[left] + self.m[right])
        logger.debug(f"rmM tree: {self.n_bits} bits, {self.num_blocks} blocks of {block_size}")

    def _build_leaves(self) -> None:
        for first in range(0, self.num_blocks, BUILD_CHUNK_BLOCKS):
            last = min(first + BUILD_CHUNK_BLOCKS, self.num_blocks)
            lo, hi = first * self.block_size, min(last * self.block_size, self.n_bits)
            bits = np.unpackbits(self._bytes[lo // 8:(hi + 7) // 8], bitorder="little")[:hi - lo]
            steps = np.zeros((last - first) * self.block_size, dtype=np.int32)
            steps[:hi - lo] = bits.astype(np.int32) * 2 - 1
            prefix = np.cumsum(steps.reshape(last - first, self.block_size), axis=1)
            leaves = self.leaf_start + np.arange(first, last)
            self.e[leaves] = prefix[:, -1]
            self.m[leaves] = prefix.min(axis=1)

    @property
    def total_excess(self) -> int:
        return int(self.e[1])

    @property
    def min_excess(self) -> int:
        return int(self.m[1])

    def overhead_bits(self) -> int:
        return int(self.e.nbytes + self.m.nbytes) * 8

    def _scan(self, start: int, stop: int, rel: int, target: int) -> tuple[int, int]:
        """
        Scans 0-based bits start..stop-1 carrying relative excess ``rel``.

        Returns (index, rel) of the first bit where rel reaches ``target``,
        or (-1, rel) after the range.
        """
        bits = self.bits
        p = start
        while p < stop and p & 7:
            rel += 1 if bits[p] else -1
            if rel == target:
                return p, rel
            p += 1
        while p + 8 <= stop:
            byte = self._bytes[p >> 3]
            if rel + BYTE_MIN[byte] <= target:
                break
            rel += int(BYTE_EXCESS[byte])
            p += 8
        while p < stop:
            rel += 1 if bits[p] else -1
            if rel == target:
                return p, rel
            p += 1
        return -1, rel

    def find_close(self, open_pos: int) -> int:
        """1-based position of the parenthesis closing the open at ``open_pos``."""
        start = open_pos  # 0-based index of the bit after the open
        block = (open_pos - 1) // self.block_size
        block_end = min((block + 1) * self.block_size, self.n_bits)
        found, rel = self._scan(start, block_end, 0, -1)
        if found >= 0:
            return found + 1

        v = self.leaf_start + block
        while v > 1:
            if v % 2 == 0 and rel + self.m[v + 1] <= -1:
                v += 1
                break
            if v % 2 == 0:
                rel += int(self.e[v + 1])
            v //= 2
        else:
            logger.error(f"No matching close for the open at {open_pos}")
            raise Unbalanced(f"Open parenthesis at {open_pos} is never closed")

        while v < self.leaf_start:
            left = 2 * v
            if rel + self.m[left] <= -1:
                v = left
            else:
                rel += int(self.e[left])
                v = left + 1

        block = v - self.leaf_start
        lo = block * self.block_size
        found, _ = self._scan(lo, min(lo + self.block_size, self.n_bits), rel, -1)
        if found < 0:
            raise InvariantViolation(f"rmM tree descent for the open at {open_pos} reached a block without the close")
        return found + 1
