# src/lyndon_bwt/core/bwt.py
"""
bwt.py

Burrows-Wheeler transform of a sentinel-terminated text: construction from
the suffix array, the count array C, the LF mapping, inversion by LF
walking, the F boundary bitvector and left-to-right ISA streaming through
Psi, the inverse of LF.

Dependencies:
    - numpy, bitarray
    - succinct.bitvector, succinct.select
    - core.suffix

Inputs:
    - Text and SuffixArray (textcore, suffix), or a BWT read from a file

Outputs:
    - BwtString, CountArray, LfArray, PsiView and the ISA value stream

The sentinel stays inside L (L[i] = sentinel where SA[i] = 1); no primary
index is stored. Row 1 is the sentinel suffix, so LF walking starts at
row 1 and decodes the text right to left.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Literal, Tuple

import numpy as np
from bitarray.util import zeros

from ..exceptions import EmptyInput, LengthMismatch, NonTerminating, OutOfRange, PermutationViolation, SentinelConflict
from ..succinct.bitvector import RankSelectBitvector
from ..succinct.select import DEFAULT_SAMPLE_RATE, PositionSelect, SampledSelect
from ..utils.file_handler import read_bytes
from ..utils.jit import njit
from ..utils.memory import allocate
from .suffix import Sorter, build_sa, build_sa_bwt
from .textcore import SENTINEL, IntArray, LfArray, SuffixArray, Text, dtype_for_width, text_repr

logger = logging.getLogger(__name__)

SelectIndex = Literal["positions", "sampled"]


@dataclass(frozen=True, eq=False)
class BwtString:
    """Last column L of the sorted rotation matrix; holds the sentinel exactly once."""

    data: np.ndarray

    @property
    def n(self) -> int:
        return int(self.data.shape[0])

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BwtString):
            return NotImplemented
        return np.array_equal(self.data, other.data)

    def __str__(self) -> str:
        return text_repr(self.data)

    def to_bytes(self) -> bytes:
        return self.data.tobytes()

    @classmethod
    def from_bytes(cls, raw: bytes | str) -> "BwtString":
        """
        Wraps raw BWT bytes ('$' in a str stands for the sentinel byte 0).

        Raises:
            EmptyInput: If ``raw`` is empty.
            SentinelConflict: If byte 0 does not occur exactly once.
        """
        if isinstance(raw, str):
            raw = raw.replace("$", "\x00").encode("latin-1")
        if not raw:
            raise EmptyInput("A BWT string holds at least the sentinel")
        zeros_found = raw.count(b"\x00")
        if zeros_found != 1:
            logger.error(f"BWT holds {zeros_found} sentinel bytes")
            raise SentinelConflict(f"A BWT string must hold the sentinel byte 0 exactly once, found {zeros_found}")
        data = allocate(len(raw), np.uint8, "bwt")
        data[:] = np.frombuffer(raw, dtype=np.uint8)
        return cls(data)


def load_bwt(path: str | Path) -> BwtString:
    """Reads a BWT file (raw bytes, sentinel byte 0 inside)."""
    bwt = BwtString.from_bytes(read_bytes(path))
    logger.info(f"Loaded BWT {path}: n={bwt.n}")
    return bwt


@dataclass(frozen=True, eq=False)
class CountArray:
    """C[a] = number of text symbols strictly smaller than a, over all 256 byte values."""

    c: np.ndarray
    counts: np.ndarray

    @property
    def present(self) -> np.ndarray:
        """Symbols occurring in the text, ascending."""
        return np.flatnonzero(self.counts)

    @property
    def sigma(self) -> int:
        return int(np.count_nonzero(self.counts))

    @property
    def n(self) -> int:
        return int(self.counts.sum())

    def __getitem__(self, symbol: int | str) -> int:
        if isinstance(symbol, str):
            symbol = SENTINEL if symbol == "$" else ord(symbol)
        return int(self.c[symbol])


@njit(cache=True)
def _bwt_kernel(t, sa, l):
    for i in range(sa.shape[0]):
        p = sa[i]
        l[i] = t[p - 2] if p != 1 else 0


def bwt_from_sa(t: Text, sa: SuffixArray) -> BwtString:
    """L[i] = T[SA[i] - 1], or the sentinel where SA[i] = 1."""
    if len(sa) != t.n:
        raise LengthMismatch(f"Suffix array of length {len(sa)} for a text of length {t.n}")
    l = allocate(t.n, np.uint8, "bwt")
    _bwt_kernel(t.data, sa.values, l)
    return BwtString(l)


def sa_and_bwt(t: Text, width: int = 32, sorter: Sorter = "sais") -> Tuple[SuffixArray, BwtString]:
    """
    Suffix array and BWT of ``t``. SA-IS writes L during its final induction
    pass; the naive sorter is followed by the usual gather.
    """
    if sorter == "sais":
        sa, l = build_sa_bwt(t, width)
        return sa, BwtString(l)
    sa = build_sa(t, width, sorter)
    return sa, bwt_from_sa(t, sa)


def count_array(l: BwtString) -> CountArray:
    """Exclusive prefix sums of the symbol frequencies of L."""
    counts = np.bincount(l.data, minlength=256).astype(np.int64)
    c = np.zeros(256, dtype=np.int64)
    np.cumsum(counts[:-1], out=c[1:])
    return CountArray(c=c, counts=counts)


@njit(cache=True)
def _lf_kernel(l, c, lf):
    next_row = c.copy()
    for i in range(l.shape[0]):
        a = l[i]
        next_row[a] += 1
        lf[i] = next_row[a]


def lf_array(l: BwtString, c: CountArray | None = None, width: int = 32) -> LfArray:
    """
    LF[i] = C[L[i]] + (occurrences of L[i] in L[1..i]).

    Equal symbols keep their relative order (stable).
    """
    if c is None:
        c = count_array(l)
    lf = IntArray.empty(l.n, width, "lf")
    _lf_kernel(l.data, c.c, lf.values)
    return lf


@njit(cache=True)
def _is_permutation(a, seen):
    n = a.shape[0]
    for i in range(n):
        seen[i] = 0
    for i in range(n):
        v = a[i]
        if v < 1 or v > n or seen[v - 1]:
            return False
        seen[v - 1] = 1
    return True


def check_permutation(a: IntArray, what: str = "array") -> None:
    """
    Raises:
        PermutationViolation: If ``a`` is not a permutation of 1..n.
    """
    seen = allocate(len(a), np.uint8, "permutation-check")
    if not _is_permutation(a.values, seen):
        logger.error(f"{what} is not a permutation of 1..{len(a)}")
        raise PermutationViolation(f"{what} is not a permutation of 1..{len(a)}")


@njit(cache=True)
def _decode_kernel(l, lf, out):
    """Right-to-left LF walk from row 1; returns False if the walk closes early."""
    n = l.shape[0]
    out[n - 1] = 0
    pos = 0
    for i in range(n - 2, -1, -1):
        a = l[pos]
        if a == 0:
            return False
        out[i] = a
        pos = lf[pos] - 1
    return l[pos] == 0


def invert_bwt(l: BwtString, lf: LfArray | None = None, validate: bool = True) -> Text:
    """
    Decodes the text from its BWT by walking LF from row 1 (the row of ISA[n]).

    Args:
        l: The BWT string.
        lf: Its LF mapping; computed when omitted.
        validate: Check that lf is a permutation before walking.

    Raises:
        LengthMismatch: If l and lf differ in length.
        PermutationViolation: If lf is not a permutation of 1..n.
        NonTerminating: If the walk meets the sentinel before n - 1 steps.
    """
    if lf is None:
        lf = lf_array(l)
    if len(lf) != l.n:
        raise LengthMismatch(f"LF of length {len(lf)} for a BWT of length {l.n}")
    if validate:
        check_permutation(lf, "LF")
    out = allocate(l.n, np.uint8, "text")
    if not _decode_kernel(l.data, lf.values, out):
        logger.error("LF walk does not visit all rows in one cycle")
        raise NonTerminating(f"LF walking from row 1 does not cover all {l.n} rows")
    return Text(data=out, sigma=int(np.count_nonzero(np.bincount(out, minlength=256))))


def f_bitvector(c: CountArray, n: int | None = None) -> RankSelectBitvector:
    """F[j] = 1 iff row j is the first row starting with some symbol: bits at C[a] + 1 for present a."""
    if n is None:
        n = c.n
    bits = zeros(n, endian="little")
    for a in c.present:
        bits[int(c.c[a])] = 1
    return RankSelectBitvector(bits)


class PsiView:
    """
    Psi over a BWT: Psi(i) = select_c(L, i - select1(F, r) + 1) with r = rank1(F, i)
    and c the r-th smallest symbol. Psi(1) is the position of the sentinel in
    L, which is ISA[1].
    """

    def __init__(self, l: BwtString, c: CountArray | None = None,
                 select_index: SelectIndex = "positions", sample_rate: int = DEFAULT_SAMPLE_RATE,
                 width: int = 32):
        self.l = l
        self.n = l.n
        self.counts = c if c is not None else count_array(l)
        self.symbols = self.counts.present
        self.f = f_bitvector(self.counts, self.n)
        if select_index == "positions":
            self.select = PositionSelect(l.data, dtype_for_width(width))
        elif select_index == "sampled":
            self.select = SampledSelect(l.data, sample_rate)
        else:
            raise ValueError(f"Unknown select index: {select_index!r}")

    def __call__(self, i: int) -> int:
        return psi_at(self, i)

    def overhead_bits(self) -> int:
        return self.select.overhead_bits() + self.f.overhead_bits() + self.n


def psi_at(view: PsiView, i: int) -> int:
    """
    Psi[i] for 1 <= i <= n.

    Raises:
        OutOfRange: If i is outside 1..n.
    """
    if i < 1 or i > view.n:
        raise OutOfRange(f"Psi index {i} outside 1..{view.n}")
    r = view.f.rank1(i)
    symbol = int(view.symbols[r - 1])
    return view.select.select(symbol, i - view.f.select1(r) + 1)


def isa_stream(source: BwtString | PsiView) -> Iterator[int]:
    """Yields ISA[1], ..., ISA[n] as Psi(1), Psi(Psi(1)), ...; the last value is 1."""
    view = source if isinstance(source, PsiView) else PsiView(source)
    v = 1
    for _ in range(view.n):
        v = psi_at(view, v)
        yield v
