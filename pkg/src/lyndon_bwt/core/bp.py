# src/lyndon_bwt/core/bp.py
"""
bp.py

Balanced-parenthesis form of the Lyndon array: 2n bits, one open per text
position in order, where the i-th open is closed as soon as a smaller ISA
value arrives. lambda[i] is then (selectclose(i) - selectopen(i) + 1) / 2.

Dependencies:
    - bitarray, numpy
    - succinct.bitvector, succinct.bitstack, succinct.rmm
    - core.bwt (Psi streaming)

Inputs:
    - an ordered producer of ISA[1..n], or a BwtString

Outputs:
    - BpRepresentation, BpIndex, BP files ("LYNBP001" header)

Bits are little-endian within bytes and 64-bit words; 1 is an open
parenthesis.
"""

import logging
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Literal, Tuple

import numpy as np
from bitarray import bitarray
from bitarray.util import zeros

from ..exceptions import EmptyInput, InvariantViolation, MalformedHeader, OutOfRange, PermutationViolation, Unbalanced
from ..succinct.bitstack import BitStack
from ..succinct.bitvector import RankSelectBitvector
from ..succinct.rmm import DEFAULT_BLOCK_SIZE, RmmTree
from ..succinct.select import DEFAULT_SAMPLE_RATE
from ..utils.file_handler import read_bytes, write_bytes
from ..utils.jit import njit
from ..utils.memory import allocate
from .bwt import BwtString, PsiView, SelectIndex, count_array, isa_stream
from .textcore import IntArray, LyndonArray, StackStats, dtype_for_width

logger = logging.getLogger(__name__)

StackMode = Literal["pairs", "bitstack"]

BP_MAGIC = b"LYNBP001"
BP_HEADER = struct.Struct("<8sQ")
STACK_INITIAL_CAPACITY = 1024


@dataclass(frozen=True, eq=False)
class BpRepresentation:
    """2n parenthesis bits, 1 = open."""

    bits: bitarray

    @property
    def n(self) -> int:
        return len(self.bits) // 2

    def __len__(self) -> int:
        return len(self.bits)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BpRepresentation):
            return NotImplemented
        return self.bits == other.bits

    def __str__(self) -> str:
        return self.bits.to01().replace("1", "(").replace("0", ")")

    @classmethod
    def from_string(cls, parens: str) -> "BpRepresentation":
        bits = bitarray(parens.replace("(", "1").replace(")", "0"), endian="little")
        return cls(bits)

    @property
    def opens(self) -> int:
        return self.bits.count(1)

    def is_balanced(self) -> bool:
        excess = 0
        for bit in self.bits:
            excess += 1 if bit else -1
            if excess < 0:
                return False
        return excess == 0 and len(self.bits) > 0


def bp_from_isa_values(isa_values: Iterable[int], n: int | None = None) -> BpRepresentation:
    """
    Builds the parenthesis bits from ISA[1], ..., ISA[n] with a value stack.

    For each value, every stacked value larger than it is popped (one
    close each), then the value is pushed (one open). The last value must
    be 1, leaving exactly one value for the final close.

    Raises:
        PermutationViolation: If the values do not end with a single stacked value.
    """
    bits = bitarray(endian="little")
    stack: List[int] = []
    count = 0
    for v in isa_values:
        while stack and stack[-1] > v:
            stack.pop()
            bits.append(0)
        stack.append(v)
        bits.append(1)
        count += 1
    if n is not None and count != n:
        raise PermutationViolation(f"Expected {n} ISA values, got {count}")
    if len(stack) != 1:
        logger.error(f"{len(stack)} values left on the stack after {count} ISA values")
        raise PermutationViolation("ISA values are not a permutation ending in 1")
    stack.pop()
    bits.append(0)
    return BpRepresentation(bits)


@njit(cache=True)
def _bp_pairs_kernel(order, out):
    """
    Walks Psi(v) = order[v - 1] + 1 from v = 1 and writes the parenthesis
    bits into the zeroed byte buffer ``out``. Returns
    (pushes, pops, high_water, capacity, stacked_at_end).
    """
    n = order.shape[0]
    cap = STACK_INITIAL_CAPACITY if n > STACK_INITIAL_CAPACITY else n
    stack = np.empty_like(order[:cap])
    top = 0
    p = 0
    pushes = 0
    pops = 0
    high = 0
    v = 1
    for _ in range(n):
        v = order[v - 1] + 1
        while top > 0 and stack[top - 1] > v:
            top -= 1
            pops += 1
            p += 1
        if top == cap:
            new_cap = cap * 2 if cap * 2 < n else n
            grown = np.empty_like(order[:new_cap])
            grown[:cap] = stack
            stack = grown
            cap = new_cap
        stack[top] = v
        top += 1
        pushes += 1
        if top > high:
            high = top
        out[p >> 3] |= 1 << (p & 7)
        p += 1
    return pushes, pops + 1, high, cap, top


def _bits_from_buffer(buf: np.ndarray, n_bits: int) -> bitarray:
    bits = bitarray(endian="little")
    bits.frombytes(buf.tobytes())
    del bits[n_bits:]
    return bits


def _bp_pairs(l: BwtString, width: int) -> Tuple[BpRepresentation, StackStats]:
    n = l.n
    order = allocate(n, dtype_for_width(width), "psi-order")
    order[:] = np.argsort(l.data, kind="stable")
    buf = allocate((2 * n + 7) // 8, np.uint8, "bp-bits")
    buf[:] = 0
    pushes, pops, high, cap, left = _bp_pairs_kernel(order, buf)
    if left != 1:
        raise PermutationViolation("Psi walk from row 1 does not produce a permutation of 1..n")
    stats = StackStats(pushes=int(pushes), pops=int(pops), high_water=int(high),
                       capacity=int(cap), entry_bytes=order.itemsize)
    return BpRepresentation(_bits_from_buffer(buf, 2 * n)), stats


def _bp_bitstack(l: BwtString, select_index: SelectIndex, sample_rate: int, width: int) -> Tuple[BpRepresentation, StackStats]:
    n = l.n
    view = PsiView(l, count_array(l), select_index, sample_rate, width)
    stack = BitStack(n)
    bits = bitarray(endian="little")
    for v in isa_stream(view):
        closes = stack.push(v)
        if closes:
            bits.extend(zeros(closes, endian="little"))
        bits.append(1)
    if len(stack) != 1:
        raise PermutationViolation("Psi walk from row 1 does not produce a permutation of 1..n")
    stack.pop()
    bits.append(0)
    # the stack is the n-bit sequence itself
    stats = StackStats(pushes=stack.pushes, pops=stack.pops, high_water=stack.high_water,
                       capacity=(n + 7) // 8, entry_bytes=1)
    logger.debug(f"Bit stack: {stack.overhead_bits()} counter bits, select index {view.select.overhead_bits()} bits")
    return BpRepresentation(bits), stats


def bp_from_bwt_stats(l: BwtString, stack_mode: StackMode = "pairs", select_index: SelectIndex = "positions",
                      sample_rate: int = DEFAULT_SAMPLE_RATE, width: int = 32) -> Tuple[BpRepresentation, StackStats]:
    """Parenthesis bits straight from the BWT, with stack instrumentation."""
    if stack_mode == "pairs":
        return _bp_pairs(l, width)
    if stack_mode == "bitstack":
        return _bp_bitstack(l, select_index, sample_rate, width)
    raise ValueError(f"Unknown stack mode {stack_mode!r}; expected 'pairs' or 'bitstack'")


def bp_from_bwt(l: BwtString, stack_mode: StackMode = "pairs", select_index: SelectIndex = "positions",
                sample_rate: int = DEFAULT_SAMPLE_RATE, width: int = 32) -> BpRepresentation:
    """
    Parenthesis bits from the BWT without building SA or ISA.

    Args:
        l: The BWT string.
        stack_mode: "pairs" keeps the stack as an array of words and walks
            Psi through the per-symbol position lists; "bitstack" keeps it
            as an n-bit BitStack and walks Psi through F rank/select and
            the chosen select index.
        select_index: "positions" or "sampled" (bitstack mode).
        sample_rate: Sampling rate of the sampled select index.
        width: Word width of the position lists.
    """
    bp, _ = bp_from_bwt_stats(l, stack_mode, select_index, sample_rate, width)
    return bp


class BpIndex:
    """selectopen / selectclose / lambda_at over a balanced parenthesis sequence."""

    def __init__(self, bp: BpRepresentation, block_size: int = DEFAULT_BLOCK_SIZE):
        self.bp = bp
        self.n = bp.n
        self.rank_select = RankSelectBitvector(bp.bits)
        self.rmm = RmmTree(bp.bits, block_size)

    def _check(self, i: int) -> None:
        if i < 1 or i > self.n:
            raise OutOfRange(f"Index {i} outside 1..{self.n}")

    def excess(self, p: int) -> int:
        """Opens minus closes in positions 1..p."""
        return 2 * self.rank_select.rank1(p) - p

    def selectopen(self, i: int) -> int:
        self._check(i)
        return self.rank_select.select1(i)

    def selectclose(self, i: int) -> int:
        self._check(i)
        return self.rmm.find_close(self.rank_select.select1(i))

    def lambda_at(self, i: int) -> int:
        o = self.selectopen(i)
        c = self.rmm.find_close(o)
        span = c - o + 1
        if span % 2:
            raise InvariantViolation(f"Parenthesis span {span} for index {i} is odd")
        return span // 2

    def lambdas(self, width: int = 32) -> LyndonArray:
        """Full sweep of lambda_at(1..n)."""
        return IntArray.from_values((self.lambda_at(i) for i in range(1, self.n + 1)), width)

    def overhead_bits(self) -> int:
        """Index bits beyond the 2n parenthesis bits."""
        return self.rank_select.overhead_bits() + self.rmm.overhead_bits()


def build_bp_index(bp: BpRepresentation, block_size: int = DEFAULT_BLOCK_SIZE) -> BpIndex:
    """
    Raises:
        Unbalanced: If ``bp`` is empty, of odd length, or not balanced.
    """
    if len(bp) == 0 or len(bp) % 2:
        logger.error(f"Parenthesis sequence of length {len(bp)} cannot be balanced")
        raise Unbalanced(f"A balanced sequence has positive even length, got {len(bp)}")
    index = BpIndex(bp, block_size)
    if index.rmm.total_excess != 0 or index.rmm.min_excess < 0:
        logger.error("Parenthesis sequence is not balanced")
        raise Unbalanced(f"Sequence ends at excess {index.rmm.total_excess}, minimum excess {index.rmm.min_excess}")
    logger.debug(f"BP index for n={index.n}: {index.overhead_bits()} overhead bits")
    return index


def selectopen(idx: BpIndex, i: int) -> int:
    """Position of the i-th open parenthesis."""
    return idx.selectopen(i)


def selectclose(idx: BpIndex, i: int) -> int:
    """Position of the parenthesis closing the i-th open."""
    return idx.selectclose(i)


def lambda_at(idx: BpIndex, i: int) -> int:
    """lambda[i] = (selectclose(i) - selectopen(i) + 1) / 2."""
    return idx.lambda_at(i)


def write_bp(path: str | Path, bp: BpRepresentation) -> None:
    """Writes "LYNBP001", n as 8 bytes little-endian, then the bits in little-endian 64-bit words."""
    if len(bp) == 0:
        raise EmptyInput("Cannot write an empty parenthesis sequence")
    body = bp.bits.tobytes()
    body += bytes(-len(body) % 8)
    write_bytes(path, BP_HEADER.pack(BP_MAGIC, bp.n) + body)
    logger.info(f"Wrote BP of n={bp.n} to {path}")


def read_bp(path: str | Path) -> BpRepresentation:
    """
    Raises:
        MalformedHeader: If the magic or the length do not match the file.
    """
    raw = read_bytes(path)
    if len(raw) < BP_HEADER.size:
        raise MalformedHeader(f"{path} is shorter than the {BP_HEADER.size}-byte BP header")
    magic, n = BP_HEADER.unpack_from(raw)
    if magic != BP_MAGIC:
        raise MalformedHeader(f"{path} does not start with {BP_MAGIC!r}")
    if n == 0:
        raise MalformedHeader(f"{path} declares n = 0")
    expected = BP_HEADER.size + (2 * n + 63) // 64 * 8
    if len(raw) != expected:
        raise MalformedHeader(f"{path} holds {len(raw)} bytes, header implies {expected}")
    bits = bitarray(endian="little")
    bits.frombytes(raw[BP_HEADER.size:])
    del bits[2 * n:]
    return BpRepresentation(bits)
