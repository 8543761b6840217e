# src/lyndon_bwt/utils/memory.py
"""
memory.py

Counting allocation layer for the large arrays of the pipelines.

Every array whose size grows with n is created through ``allocate``. When a
MemoryLedger is active (``with MemoryLedger() as ledger:``) the array's
bytes are added to the live total on allocation and subtracted when the
array is garbage collected or released explicitly; the ledger keeps the
running peak. Outside a ledger ``allocate`` is a plain ``numpy.empty``.

Dependencies:
    - numpy
"""

import itertools
import logging
import weakref
from contextvars import ContextVar
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np

logger = logging.getLogger(__name__)

_active_ledger: ContextVar["MemoryLedger | None"] = ContextVar("active_ledger", default=None)


@dataclass
class LedgerEvent:
    kind: str  # "alloc", "free" or "transient"
    label: str
    nbytes: int
    live_after: int


@dataclass
class MemoryLedger:
    """Tracks live and peak bytes of arrays created through ``allocate``."""

    live: int = 0
    peak: int = 0
    events: List[LedgerEvent] = field(default_factory=list)
    _entries: Dict[int, Tuple[str, int, weakref.finalize]] = field(default_factory=dict, repr=False)
    _by_id: Dict[int, int] = field(default_factory=dict, repr=False)
    _keys: itertools.count = field(default_factory=itertools.count, repr=False)
    _token: object = field(default=None, repr=False)

    def __enter__(self) -> "MemoryLedger":
        self._token = _active_ledger.set(self)
        return self

    def __exit__(self, exc_type, exc, tb) -> None:
        _active_ledger.reset(self._token)
        self._token = None

    def track(self, arr: np.ndarray, label: str) -> np.ndarray:
        """Starts counting ``arr``'s bytes until it is collected or released."""
        key = next(self._keys)
        nbytes = int(arr.nbytes)
        finalizer = weakref.finalize(arr, self._free, key, id(arr))
        self._entries[key] = (label, nbytes, finalizer)
        self._by_id[id(arr)] = key
        self.live += nbytes
        self.peak = max(self.peak, self.live)
        self.events.append(LedgerEvent("alloc", label, nbytes, self.live))
        logger.debug(f"alloc {label}: {nbytes} bytes (live {self.live}, peak {self.peak})")
        return arr

    def release(self, arr: np.ndarray) -> None:
        """Stops counting ``arr`` now, even if references to it remain."""
        key = self._by_id.get(id(arr))
        if key is None:
            return
        _, _, finalizer = self._entries[key]
        finalizer()

    def record_transient(self, nbytes: int, label: str) -> None:
        """Accounts storage that lived on top of the current live total, e.g. a kernel's stack."""
        self.peak = max(self.peak, self.live + int(nbytes))
        self.events.append(LedgerEvent("transient", label, int(nbytes), self.live + int(nbytes)))

    def _free(self, key: int, arr_id: int) -> None:
        entry = self._entries.pop(key, None)
        if entry is None:
            return
        label, nbytes, _ = entry
        if self._by_id.get(arr_id) == key:
            del self._by_id[arr_id]
        self.live -= nbytes
        self.events.append(LedgerEvent("free", label, nbytes, self.live))

    def labels_live(self) -> List[str]:
        return [label for label, _, _ in self._entries.values()]


def current_ledger() -> MemoryLedger | None:
    return _active_ledger.get()


def allocate(shape, dtype, label: str) -> np.ndarray:
    """``numpy.empty`` that reports to the active ledger, if any."""
    arr = np.empty(shape, dtype=dtype)
    ledger = _active_ledger.get()
    if ledger is not None:
        ledger.track(arr, label)
    return arr


def release(arr: np.ndarray) -> None:
    """Marks ``arr`` as no longer owned by the pipeline in the active ledger."""
    ledger = _active_ledger.get()
    if ledger is not None:
        ledger.release(arr)
