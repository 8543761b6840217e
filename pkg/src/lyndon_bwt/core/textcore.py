# src/lyndon_bwt/core/textcore.py
"""
textcore.py

Text ingestion, sentinel enforcement and binary I/O for the integer arrays
produced by the toolkit (SA, ISA, NSV, LF, lambda, lambda_SA).

Dependencies:
    - numpy
    - utils.file_handler, utils.memory

Inputs:
    - raw text files (bytes), binary array files

Outputs:
    - Text and IntArray values; binary array files

Positions are 1-based in every value stored in an array and in every
external format; Python indexing of the underlying numpy arrays stays
0-based, so ``arr.values[k]`` holds the entry for position k + 1.
"""

import logging
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Literal

import numpy as np

from ..exceptions import EmptyInput, MalformedHeader, SentinelConflict, WidthOverflow
from ..utils.file_handler import read_bytes, write_bytes
from ..utils.memory import allocate

logger = logging.getLogger(__name__)

SENTINEL = 0
ARRAY_MAGIC = b"LYNARR01"
ARRAY_HEADER = struct.Struct("<8sB7xQ")
WIDTHS = {32: np.dtype("<i4"), 64: np.dtype("<i8")}

SentinelPolicy = Literal["append", "verify"]


def dtype_for_width(width: int) -> np.dtype:
    if width not in WIDTHS:
        raise ValueError(f"Unsupported integer width {width}; expected 32 or 64.")
    return WIDTHS[width]


def require_width(n: int, width: int) -> np.dtype:
    """Dtype for arrays over a text of length n; NSV values reach n + 1."""
    dtype = dtype_for_width(width)
    if n + 1 >= 2 ** (width - 1):
        raise WidthOverflow(f"A text of length {n} needs 64-bit arrays; width {width} is too small")
    return dtype


@dataclass(frozen=True, eq=False)
class Text:
    """A byte text whose last symbol is the unique, smallest sentinel (byte 0)."""

    data: np.ndarray
    sigma: int

    @property
    def n(self) -> int:
        return int(self.data.shape[0])

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Text):
            return NotImplemented
        return np.array_equal(self.data, other.data)

    def __str__(self) -> str:
        return text_repr(self.data)

    def to_bytes(self) -> bytes:
        """Raw bytes including the trailing sentinel byte."""
        return self.data.tobytes()

    @classmethod
    def from_bytes(cls, raw: bytes | str, sentinel_policy: SentinelPolicy = "append") -> "Text":
        """Builds a Text from bytes (or a str of code points < 256), applying the sentinel policy."""
        if isinstance(raw, str):
            raw = raw.encode("latin-1")
        return _text_from_raw(raw, sentinel_policy, source="<bytes>")


def text_repr(symbols: np.ndarray) -> str:
    """Human-readable form with the sentinel shown as '$'."""
    return symbols.tobytes().decode("latin-1").replace("\x00", "$")


def _text_from_raw(raw: bytes, policy: SentinelPolicy, source: str) -> Text:
    if policy == "append":
        bad = raw.find(b"\x00")
        if bad >= 0:
            logger.error(f"Byte 0 found at offset {bad} of {source}")
            raise SentinelConflict(f"Byte 0 is reserved for the sentinel but occurs at offset {bad} of {source}")
        data = allocate(len(raw) + 1, np.uint8, "text")
        data[:-1] = np.frombuffer(raw, dtype=np.uint8)
        data[-1] = SENTINEL
    elif policy == "verify":
        if not raw:
            logger.error(f"Empty input under verify policy: {source}")
            raise EmptyInput(f"Input {source} is empty; the verify policy needs a trailing sentinel byte")
        first = raw.find(b"\x00")
        if first != len(raw) - 1:
            where = "is missing" if first < 0 else f"occurs mid-text at offset {first}"
            logger.error(f"Sentinel {where} in {source}")
            raise SentinelConflict(f"The sentinel byte 0 {where} in {source}")
        data = allocate(len(raw), np.uint8, "text")
        data[:] = np.frombuffer(raw, dtype=np.uint8)
    else:
        raise ValueError(f"Unknown sentinel policy: {policy!r}")

    sigma = int(np.count_nonzero(np.bincount(data, minlength=256)))
    return Text(data=data, sigma=sigma)


def load_text(path: str | Path, sentinel_policy: SentinelPolicy = "append") -> Text:
    """
    Reads a raw byte file as a Text.

    Args:
        path: File to read.
        sentinel_policy: "append" adds the sentinel (byte 0 must not occur in
            the file); "verify" requires the file to end with its only byte 0.

    Returns:
        The Text, with sigma counting the sentinel.

    Raises:
        FileNotFoundError: If the file does not exist.
        SentinelConflict: If byte 0 occurs where the policy forbids it.
        EmptyInput: If the file is empty under the verify policy.
    """
    raw = read_bytes(path)
    text = _text_from_raw(raw, sentinel_policy, source=str(path))
    logger.info(f"Loaded text {path}: n={text.n}, sigma={text.sigma}")
    return text


@dataclass(frozen=True, eq=False)
class IntArray:
    """A sequence of non-negative integers stored at a fixed width (32 or 64 bits)."""

    values: np.ndarray
    width: int = 32

    def __post_init__(self) -> None:
        expected = dtype_for_width(self.width)
        if self.values.dtype != expected:
            raise ValueError(f"IntArray of width {self.width} needs dtype {expected}, got {self.values.dtype}")

    def __len__(self) -> int:
        return int(self.values.shape[0])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntArray):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    def at(self, i: int) -> int:
        """Entry for 1-based position i."""
        return int(self.values[i - 1])

    def tolist(self) -> list[int]:
        return self.values.tolist()

    @classmethod
    def empty(cls, n: int, width: int = 32, label: str = "array") -> "IntArray":
        """Uninitialised array of length n, allocated through the memory ledger."""
        return cls(allocate(n, dtype_for_width(width), label), width)

    @classmethod
    def from_values(cls, values: Iterable[int], width: int = 32) -> "IntArray":
        """Copies ``values`` into a new array, checking they fit ``width``."""
        wide = np.asarray(list(values) if not isinstance(values, np.ndarray) else values, dtype=np.int64)
        check_fits(wide, width)
        return cls(wide.astype(dtype_for_width(width)), width)


def check_fits(values: np.ndarray, width: int) -> None:
    if values.size == 0:
        return
    low, high = int(values.min()), int(values.max())
    if low < 0:
        raise WidthOverflow(f"Negative value {low} cannot be stored in an IntArray")
    if high >= 2 ** (width - 1):
        raise WidthOverflow(f"Value {high} does not fit width {width} (limit {2 ** (width - 1) - 1})")


def write_array(path: str | Path, arr: IntArray) -> None:
    """
    Writes ``arr`` in the binary array format: magic "LYNARR01", 1 byte width,
    7 reserved zero bytes, 8-byte little-endian length, then the values
    little-endian at the stated width.

    Raises:
        EmptyInput: If the array is empty.
        WidthOverflow: If a value does not fit the array's width.
    """
    if len(arr) == 0:
        raise EmptyInput("Arrays must have length >= 1 to be written")
    check_fits(arr.values, arr.width)
    header = ARRAY_HEADER.pack(ARRAY_MAGIC, arr.width, len(arr))
    body = arr.values.astype(dtype_for_width(arr.width), copy=False).tobytes()
    write_bytes(path, header + body)
    logger.info(f"Wrote {len(arr)} values (width {arr.width}) to {path}")


def read_array(path: str | Path) -> IntArray:
    """
    Reads an array written by ``write_array``.

    Raises:
        MalformedHeader: If the magic, width, reserved bytes or length do not
            match the file.
    """
    raw = read_bytes(path)
    if len(raw) < ARRAY_HEADER.size:
        raise MalformedHeader(f"{path} is shorter than the {ARRAY_HEADER.size}-byte array header")
    magic, width, n = ARRAY_HEADER.unpack_from(raw)
    if magic != ARRAY_MAGIC:
        raise MalformedHeader(f"{path} does not start with {ARRAY_MAGIC!r}")
    if raw[9:16] != bytes(7):
        raise MalformedHeader(f"{path} has non-zero reserved header bytes")
    if width not in WIDTHS:
        raise MalformedHeader(f"{path} declares unsupported width {width}")
    if n == 0:
        raise MalformedHeader(f"{path} declares an empty array")
    expected = ARRAY_HEADER.size + n * (width // 8)
    if len(raw) != expected:
        raise MalformedHeader(f"{path} holds {len(raw)} bytes, header implies {expected}")
    dtype = dtype_for_width(width)
    values = allocate(n, dtype, "array")
    values[:] = np.frombuffer(raw, dtype=dtype, offset=ARRAY_HEADER.size, count=n)
    if values.min() < 0:
        raise MalformedHeader(f"{path} holds negative values")
    return IntArray(values, width)


# Roles an IntArray plays across the pipelines
SuffixArray = IntArray
InverseSuffixArray = IntArray
NsvArray = IntArray
LfArray = IntArray
LyndonArray = IntArray


@dataclass(frozen=True)
class StackStats:
    """Instrumentation of a stack-driven pass (BWT decoding, NSV, BP build)."""

    pushes: int
    pops: int
    high_water: int
    capacity: int
    entry_bytes: int

    @property
    def operations(self) -> int:
        return self.pushes + self.pops

    @property
    def stack_bytes(self) -> int:
        """Bytes of the stack storage at its largest capacity."""
        return self.capacity * self.entry_bytes
