# src/lyndon_bwt/succinct/bitvector.py
"""
bitvector.py

Static bit sequence with rank and select support.

Dependencies:
    - bitarray
    - numpy

The index is one cumulative count of ones per superblock. rank adds the
popcount of the partial superblock (bitarray.count, in C); select finds the
superblock by binary search over the counts and finishes inside it with
bitarray.util.count_n. Positions are 1-based.
"""

import logging

import numpy as np
from bitarray import bitarray
from bitarray.util import count_n

from ..exceptions import OutOfRange

logger = logging.getLogger(__name__)

SUPERBLOCK_BITS = 2048


class RankSelectBitvector:
    """Read-only bits with rank1 and select1 over 1-based positions."""

    def __init__(self, bits: bitarray, superblock_bits: int = SUPERBLOCK_BITS):
        if bits.endian() != "little":
            raise ValueError("RankSelectBitvector expects a little-endian bitarray")
        self.bits = bits
        self.n = len(bits)
        self.superblock_bits = superblock_bits

        starts = range(0, self.n, superblock_bits)
        counts = np.fromiter(
            (bits.count(1, s, min(s + superblock_bits, self.n)) for s in starts),
            dtype=np.int64, count=len(starts),
        )
        self._ones = np.zeros(len(starts) + 1, dtype=np.int64)
        np.cumsum(counts, out=self._ones[1:])
        self.ones = int(self._ones[-1])

    def __len__(self) -> int:
        return self.n

    def rank1(self, i: int) -> int:
        """Number of ones in positions 1..i (0 <= i <= n)."""
        if i < 0 or i > self.n:
            raise OutOfRange(f"rank position {i} outside 0..{self.n}")
        sb = i // self.superblock_bits
        return int(self._ones[sb]) + self.bits.count(1, sb * self.superblock_bits, i)

    def select1(self, k: int) -> int:
        """Position of the k-th one."""
        if k < 1 or k > self.ones:
            raise OutOfRange(f"select1({k}) with {self.ones} ones")
        sb = int(np.searchsorted(self._ones, k, side="left")) - 1
        start = sb * self.superblock_bits
        chunk = self.bits[start:start + self.superblock_bits]
        return start + count_n(chunk, k - int(self._ones[sb]))

    def overhead_bits(self) -> int:
        """Bits used by the index beyond the sequence itself."""
        return int(self._ones.nbytes) * 8
