# src/lyndon_bwt/core/lyndon.py
"""
lyndon.py

Lyndon array construction.

  - bwt_lyndon: decodes the text from its BWT right to left while a stack
    of <pos, step> pairs yields lambda (the BWT-Lyndon route).
  - lyndon_via_bwt: the full route from a text (SA and L -> LF -> lambda).
  - oracle_lyndon: lambda[i] = j - i with j the first k > i whose suffix is
    smaller, by direct suffix comparison (quadratic on unary texts).
  - lyndon_sa_permuted: lambda_SA[i] = lambda[SA[i]].

Dependencies:
    - numpy
    - utils.jit, utils.memory
    - core.suffix, core.bwt

Row positions are 1-based inside the stack, so the bottom pair <-1, 0>
compares below every row.
"""

import logging
from dataclasses import dataclass
from typing import Iterator, List, Literal, Tuple

import numpy as np

from ..exceptions import LengthMismatch, NonTerminating
from ..utils.jit import njit
from ..utils.memory import allocate, current_ledger, release
from ..utils.timing import StepTimes
from .bwt import BwtString, check_permutation, count_array, lf_array, sa_and_bwt
from .suffix import Sorter, lyndon_from_nsv_stats
from .textcore import IntArray, LfArray, LyndonArray, StackStats, SuffixArray, Text

logger = logging.getLogger(__name__)

Algo = Literal["bwt", "nsv", "oracle"]
ALGOS: tuple[str, ...] = ("bwt", "nsv", "oracle")

STACK_INITIAL_CAPACITY = 1024
BOTTOM = (-1, 0)


@njit(cache=True)
def _bwt_lyndon_kernel(l, lf, lam, text, decode):
    """
    Right-to-left walk over 1-based rows. Each step reads L[pos], moves to
    pos = LF[pos], pops pairs whose row exceeds pos, sets
    lambda[i] = step - top.step and pushes <pos, step>.

    ``lam`` may be storage that is not read here (e.g. the suffix array).
    Returns (pushes, pops, high_water, capacity, closed); capacity counts
    the bottom pair, and closed is False when the walk meets the sentinel
    before the last step or does not end on it.
    """
    n = l.shape[0]
    cap = STACK_INITIAL_CAPACITY if n > STACK_INITIAL_CAPACITY else n
    spos = np.empty_like(lf[:cap])
    sstep = np.empty_like(lf[:cap])
    spos[0] = -1
    sstep[0] = 0
    top = 0
    pushes = 0
    pops = 0
    high = 0
    pos = 1
    step = 1
    if decode:
        text[n - 1] = 0
    for i in range(n - 2, -1, -1):
        a = l[pos - 1]
        if a == 0:
            return pushes, pops, high, cap, False
        if decode:
            text[i] = a
        pos = lf[pos - 1]
        while spos[top] > pos:
            top -= 1
            pops += 1
        lam[i] = step - sstep[top]
        if top + 1 == cap:
            new_cap = cap * 2 if cap * 2 < n else n
            grown_pos = np.empty_like(lf[:new_cap])
            grown_step = np.empty_like(lf[:new_cap])
            grown_pos[:cap] = spos
            grown_step[:cap] = sstep
            spos = grown_pos
            sstep = grown_step
            cap = new_cap
        top += 1
        spos[top] = pos
        sstep[top] = step
        pushes += 1
        if top > high:
            high = top
        step += 1
    lam[n - 1] = 1
    return pushes, pops, high, cap, l[pos - 1] == 0


def _run_bwt_lyndon(l: BwtString, lf: LfArray, out: IntArray | None, decode: bool) -> Tuple[Text | None, LyndonArray, StackStats]:
    if len(lf) != l.n:
        raise LengthMismatch(f"LF of length {len(lf)} for a BWT of length {l.n}")
    if out is None:
        out = IntArray.empty(l.n, lf.width, "lambda")
    elif len(out) != l.n:
        raise LengthMismatch(f"Output of length {len(out)} for a BWT of length {l.n}")
    text = allocate(l.n if decode else 1, np.uint8, "text")
    pushes, pops, high, cap, closed = _bwt_lyndon_kernel(l.data, lf.values, out.values, text, decode)
    if not closed:
        logger.error("LF walk does not visit all rows in one cycle")
        raise NonTerminating(f"LF walking from row 1 does not cover all {l.n} rows")
    stats = StackStats(pushes=int(pushes), pops=int(pops), high_water=int(high),
                       capacity=int(cap), entry_bytes=2 * lf.values.itemsize)
    ledger = current_ledger()
    if ledger is not None:
        ledger.record_transient(stats.stack_bytes, "lyndon-stack")
    decoded = Text(data=text, sigma=int(np.count_nonzero(np.bincount(text, minlength=256)))) if decode else None
    return decoded, out, stats


def bwt_lyndon(l: BwtString, lf: LfArray, validate: bool = True) -> Tuple[Text, LyndonArray]:
    """
    Decodes the text and computes its Lyndon array in one right-to-left LF walk.

    Raises:
        LengthMismatch: If l and lf differ in length.
        PermutationViolation: If lf is not a permutation of 1..n.
        NonTerminating: If walking LF from row 1 closes before visiting all rows.
    """
    if validate:
        check_permutation(lf, "LF")
    text, lam, _ = _run_bwt_lyndon(l, lf, None, decode=True)
    return text, lam


def bwt_lyndon_stats(l: BwtString, lf: LfArray, out: IntArray | None = None) -> Tuple[LyndonArray, StackStats]:
    """Lambda only, with stack instrumentation; ``out`` may reuse dead storage such as SA."""
    _, lam, stats = _run_bwt_lyndon(l, lf, out, decode=False)
    return lam, stats


def bwt_lyndon_array(l: BwtString, lf: LfArray, out: IntArray | None = None) -> LyndonArray:
    """Lambda only, without decoding the text."""
    lam, _ = bwt_lyndon_stats(l, lf, out)
    return lam


def stack_high_water(l: BwtString, lf: LfArray) -> int:
    """Largest number of pairs on the stack at once, the bottom pair not counted."""
    _, stats = bwt_lyndon_stats(l, lf)
    return stats.high_water


class PairStack:
    """Stack of <pos, step> pairs over a bottom pair <-1, 0>."""

    def __init__(self) -> None:
        self._pairs: List[Tuple[int, int]] = [BOTTOM]

    def __len__(self) -> int:
        return len(self._pairs) - 1

    def top(self) -> Tuple[int, int]:
        return self._pairs[-1]

    def push(self, pos: int, step: int) -> None:
        if len(self._pairs) > 1:
            last_pos, last_step = self._pairs[-1]
            assert pos > last_pos and step > last_step, "pairs must increase towards the top"
        self._pairs.append((pos, step))

    def pop_above(self, pos: int) -> List[Tuple[int, int]]:
        """Pops every pair whose row is larger than ``pos``."""
        popped = []
        while self._pairs[-1][0] > pos:
            popped.append(self._pairs.pop())
        return popped

    def snapshot(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(self._pairs[1:])


@dataclass(frozen=True)
class TraceStep:
    step: int
    i: int
    symbol: int
    pos: int
    popped: Tuple[Tuple[int, int], ...]
    lam: int
    stack: Tuple[Tuple[int, int], ...]


def trace_bwt_lyndon(l: BwtString, lf: LfArray) -> Iterator[TraceStep]:
    """Replays the BWT-Lyndon walk step by step; ``stack`` is taken after the push."""
    stack = PairStack()
    pos = 1
    for step, i in enumerate(range(l.n - 1, 0, -1), start=1):
        symbol = int(l.data[pos - 1])
        pos = lf.at(pos)
        popped = stack.pop_above(pos)
        lam = step - stack.top()[1]
        stack.push(pos, step)
        yield TraceStep(step=step, i=i, symbol=symbol, pos=pos, popped=tuple(popped), lam=lam,
                        stack=stack.snapshot())


@njit(cache=True)
def _oracle_kernel(t, lam):
    n = t.shape[0]
    lam[n - 1] = 1
    for i in range(n - 2, -1, -1):
        k = i + 1
        while True:
            d = 0
            while t[k + d] == t[i + d]:
                d += 1
            if t[k + d] < t[i + d]:
                break
            # suffixes in (k, k + lam[k]) are larger than suffix k
            k += lam[k]
        lam[i] = k - i


def oracle_lyndon(t: Text, width: int = 32) -> LyndonArray:
    """Lambda by direct suffix comparison; O(n^2) on unary texts."""
    lam = IntArray.empty(t.n, width, "lambda")
    _oracle_kernel(t.data, lam.values)
    return lam


@njit(cache=True)
def _gather_kernel(lam, sa, out):
    for i in range(sa.shape[0]):
        out[i] = lam[sa[i] - 1]


def lyndon_sa_permuted(lam: LyndonArray, sa: SuffixArray) -> IntArray:
    """lambda_SA[i] = lambda[SA[i]]."""
    if len(lam) != len(sa):
        logger.error(f"lambda has length {len(lam)}, SA has length {len(sa)}")
        raise LengthMismatch(f"lambda and SA lengths differ: {len(lam)} != {len(sa)}")
    out = IntArray.empty(len(sa), lam.width, "lambda-sa")
    _gather_kernel(lam.values, sa.values, out.values)
    return out


def lyndon_via_bwt_stats(t: Text, width: int = 32, sorter: Sorter = "sais", consume_text: bool = False,
                         times: StepTimes | None = None) -> Tuple[LyndonArray, StackStats]:
    """
    BWT-Lyndon from a text: SA and L together, then LF, then lambda written over SA.

    With ``consume_text`` the text is released once L exists, so the
    largest live set is L + LF + SA (9n bytes at width 32).
    """
    times = times if times is not None else StepTimes()
    with times.step("sa_bwt"):
        sa, l = sa_and_bwt(t, width, sorter)
    if consume_text:
        release(t.data)
    with times.step("lf"):
        lf = lf_array(l, count_array(l), width)
    with times.step("lambda"):
        lam, stats = bwt_lyndon_stats(l, lf, out=sa)
    release(lf.values)
    release(l.data)
    return lam, stats


def lyndon_via_bwt(t: Text, width: int = 32, sorter: Sorter = "sais") -> LyndonArray:
    lam, _ = lyndon_via_bwt_stats(t, width, sorter)
    return lam


def lyndon_array_stats(t: Text, algo: Algo = "bwt", width: int = 32, sorter: Sorter = "sais",
                       consume_text: bool = False, times: StepTimes | None = None) -> Tuple[LyndonArray, StackStats | None]:
    """Dispatches to one of the three routes; the oracle has no stack."""
    times = times if times is not None else StepTimes()
    if algo == "bwt":
        return lyndon_via_bwt_stats(t, width, sorter, consume_text, times)
    if algo == "nsv":
        return lyndon_from_nsv_stats(t, width, sorter, consume_text, times)
    if algo == "oracle":
        with times.step("lambda"):
            return oracle_lyndon(t, width), None
    raise ValueError(f"Unknown algorithm {algo!r}; expected one of {', '.join(ALGOS)}")


def lyndon_array(t: Text, algo: Algo = "bwt", width: int = 32, sorter: Sorter = "sais") -> LyndonArray:
    """
    Lyndon array of ``t``.

    Args:
        t: Text ending with the sentinel.
        algo: "bwt" (BWT-Lyndon), "nsv" (NSV-Lyndon) or "oracle" (quadratic scan).
        width: 32 or 64 bit integers.
        sorter: Suffix sorter for the bwt and nsv routes.
    """
    lam, _ = lyndon_array_stats(t, algo, width, sorter)
    return lam
