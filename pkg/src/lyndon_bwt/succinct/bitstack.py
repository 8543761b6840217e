# src/lyndon_bwt/succinct/bitstack.py
"""
bitstack.py

A stack of distinct values in 1..n stored as a bit sequence: bit e is set
iff e is on the stack. Values on the stack always increase from bottom to
top, so reading the set bits left to right gives the stack bottom to top
and the top is the last set bit.

Dependencies:
    - bitarray

Superblock popcounts are kept in a Fenwick tree so rank, select and
single-bit updates each touch O(log(n / superblock)) counters plus one
superblock of bits.
"""

import logging

from bitarray.util import count_n, zeros

from ..exceptions import DuplicatePush, OutOfRange

logger = logging.getLogger(__name__)

SUPERBLOCK_BITS = 2048


class FenwickCounts:
    """Prefix sums over a fixed number of counters."""

    def __init__(self, size: int):
        self.size = size
        self._tree = [0] * (size + 1)
        self._top_step = 1 << (size.bit_length() - 1) if size else 0

    def add(self, index: int, delta: int) -> None:
        """Adds ``delta`` to counter ``index`` (0-based)."""
        i = index + 1
        tree = self._tree
        while i <= self.size:
            tree[i] += delta
            i += i & -i

    def prefix(self, count: int) -> int:
        """Sum of the first ``count`` counters."""
        total = 0
        tree = self._tree
        while count > 0:
            total += tree[count]
            count -= count & -count
        return total

    def search(self, k: int) -> tuple[int, int]:
        """Index of the counter holding the k-th unit, and k relative to that counter."""
        pos = 0
        step = self._top_step
        tree = self._tree
        while step:
            nxt = pos + step
            if nxt <= self.size and tree[nxt] < k:
                pos = nxt
                k -= tree[nxt]
            step >>= 1
        return pos, k


class BitStack:
    """Stack over values 1..n with rank/select driven pops."""

    def __init__(self, n: int, superblock_bits: int = SUPERBLOCK_BITS):
        self.n = n
        self.superblock_bits = superblock_bits
        self.bits = zeros(n, endian="little")
        self._counts = FenwickCounts((n + superblock_bits - 1) // superblock_bits)
        self.size = 0
        self.pushes = 0
        self.pops = 0
        self.high_water = 0

    def __len__(self) -> int:
        return self.size

    def rank1(self, i: int) -> int:
        """Stacked values <= i."""
        sb = i // self.superblock_bits
        return self._counts.prefix(sb) + self.bits.count(1, sb * self.superblock_bits, i)

    def select1(self, k: int) -> int:
        """The k-th smallest stacked value."""
        if k < 1 or k > self.size:
            raise OutOfRange(f"select1({k}) on a stack of {self.size} values")
        sb, rest = self._counts.search(k)
        start = sb * self.superblock_bits
        return start + count_n(self.bits[start:start + self.superblock_bits], rest)

    def top(self) -> int | None:
        return self.select1(self.size) if self.size else None

    def _set(self, e: int, value: int) -> None:
        self.bits[e - 1] = value
        self._counts.add((e - 1) // self.superblock_bits, 1 if value else -1)

    def push(self, e: int) -> int:
        """
        Deletes every stacked value larger than ``e``, then stacks ``e``.

        Returns:
            How many values were deleted (one close parenthesis each in
            the parenthesis construction).

        Raises:
            OutOfRange: If ``e`` is outside 1..n.
            DuplicatePush: If ``e`` is already on the stack.
        """
        if e < 1 or e > self.n:
            raise OutOfRange(f"value {e} outside 1..{self.n}")
        if self.bits[e - 1]:
            logger.error(f"Value {e} pushed twice")
            raise DuplicatePush(f"Value {e} is already on the stack")
        r = self.rank1(e)
        deleted = self.size - r
        for _ in range(deleted):
            # after each deletion the next larger value becomes the (r+1)-th
            self._set(self.select1(r + 1), 0)
            self.size -= 1
        self._set(e, 1)
        self.size += 1
        self.pushes += 1
        self.pops += deleted
        self.high_water = max(self.high_water, self.size)
        return deleted

    def pop(self) -> int:
        """Removes and returns the top value."""
        top = self.top()
        if top is None:
            raise OutOfRange("pop from an empty stack")
        self._set(top, 0)
        self.size -= 1
        self.pops += 1
        return top

    def overhead_bits(self) -> int:
        return self._counts.size * 64
