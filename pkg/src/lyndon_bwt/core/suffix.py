# src/lyndon_bwt/core/suffix.py
"""
suffix.py

Suffix array construction, inversion, next-smaller-value computation and
the NSV route to the Lyndon array (lambda[i] = NSV_ISA[i] - i).

Dependencies:
    - numpy
    - utils.jit (numba when installed)

The default sorter is SA-IS induced sorting. The reduced problem of each
recursion level lives inside the suffix array buffer itself (names in the
tail, the reduced suffix array in the head), so the extra space is the
S/L type map plus one bucket table. build_sa_bwt also fills the BWT
during the final induction pass.
"""

import logging
from typing import Literal

import numpy as np

from ..exceptions import PermutationViolation
from ..utils.jit import njit
from ..utils.memory import allocate, current_ledger, release
from ..utils.timing import StepTimes
from .textcore import (
    IntArray,
    InverseSuffixArray,
    LyndonArray,
    NsvArray,
    StackStats,
    SuffixArray,
    Text,
    require_width,
)

logger = logging.getLogger(__name__)

Sorter = Literal["sais", "naive"]

L_TYPE = 0
S_TYPE = 1
ALPHABET = 256
STACK_INITIAL_CAPACITY = 1024


# --- induced sorting kernels (0-based positions, -1 marks an empty slot) ---

@njit(cache=True)
def _classify(s, t):
    n = s.shape[0]
    t[n - 1] = S_TYPE
    for i in range(n - 2, -1, -1):
        if s[i] < s[i + 1] or (s[i] == s[i + 1] and t[i + 1] == S_TYPE):
            t[i] = S_TYPE
        else:
            t[i] = L_TYPE


@njit(cache=True)
def _buckets(s, bkt, end):
    for c in range(bkt.shape[0]):
        bkt[c] = 0
    for i in range(s.shape[0]):
        bkt[s[i]] += 1
    total = 0
    for c in range(bkt.shape[0]):
        total += bkt[c]
        if end:
            bkt[c] = total
        else:
            bkt[c] = total - bkt[c]


@njit(cache=True)
def _place_lms(s, sa, t, bkt):
    n = s.shape[0]
    _buckets(s, bkt, True)
    for i in range(n):
        sa[i] = -1
    for i in range(1, n):
        if t[i] == S_TYPE and t[i - 1] == L_TYPE:
            bkt[s[i]] -= 1
            sa[bkt[s[i]]] = i


@njit(cache=True)
def _induce(s, sa, t, bkt):
    n = s.shape[0]
    _buckets(s, bkt, False)
    for i in range(n):
        j = sa[i] - 1
        if sa[i] > 0 and t[j] == L_TYPE:
            sa[bkt[s[j]]] = j
            bkt[s[j]] += 1
    _buckets(s, bkt, True)
    for i in range(n - 1, -1, -1):
        j = sa[i] - 1
        if sa[i] > 0 and t[j] == S_TYPE:
            bkt[s[j]] -= 1
            sa[bkt[s[j]]] = j


@njit(cache=True)
def _induce_bwt(s, sa, t, bkt, first, s_first, l):
    """
    _induce that also writes L[i] = s[sa[i] - 1], or 0 for the row of suffix 0.

    When the right-to-left pass reaches row i, sa[i] is final and starts
    with the bucket symbol c of row i. The type of sa[i] - 1 then follows
    from a = s[sa[i] - 1]: S iff a < c, or a == c and row i lies in the
    S part of bucket c. One random read per row gives both L[i] and the
    type, in place of the type lookup plus a later L gather.
    """
    n = s.shape[0]
    _buckets(s, bkt, False)
    for i in range(n):
        j = sa[i] - 1
        if sa[i] > 0 and t[j] == L_TYPE:
            sa[bkt[s[j]]] = j
            bkt[s[j]] += 1
    _buckets(s, first, False)
    _buckets(s, bkt, True)
    for c in range(s_first.shape[0]):
        s_first[c] = bkt[c]
    for i in range(n):
        if t[i] == S_TYPE:
            s_first[s[i]] -= 1
    c = first.shape[0] - 1
    for i in range(n - 1, -1, -1):
        while i < first[c]:
            c -= 1
        p = sa[i]
        if p > 0:
            a = s[p - 1]
            l[i] = a
            if a < c or (a == c and i >= s_first[c]):
                bkt[a] -= 1
                sa[bkt[a]] = p - 1
        else:
            l[i] = 0


@njit(cache=True)
def _name_lms(s, sa, t):
    """Names the sorted LMS substrings; leaves the reduced string in sa[n - n1:]."""
    n = s.shape[0]
    n1 = 0
    for i in range(n):
        p = sa[i]
        if p > 0 and t[p] == S_TYPE and t[p - 1] == L_TYPE:
            sa[n1] = p
            n1 += 1
    for i in range(n1, n):
        sa[i] = -1
    name = 0
    prev = -1
    for i in range(n1):
        pos = sa[i]
        diff = False
        for d in range(n):
            if prev == -1 or s[pos + d] != s[prev + d] or t[pos + d] != t[prev + d]:
                diff = True
                break
            if d > 0 and ((t[pos + d] == S_TYPE and t[pos + d - 1] == L_TYPE)
                          or (t[prev + d] == S_TYPE and t[prev + d - 1] == L_TYPE)):
                break
        if diff:
            name += 1
            prev = pos
        sa[n1 + pos // 2] = name - 1
    j = n - 1
    for i in range(n - 1, n1 - 1, -1):
        if sa[i] >= 0:
            sa[j] = sa[i]
            j -= 1
    return n1, name


@njit(cache=True)
def _direct_sort(s1, sa1):
    for i in range(s1.shape[0]):
        sa1[s1[i]] = i


@njit(cache=True)
def _place_sorted_lms(s, sa, t, bkt, n1):
    n = s.shape[0]
    j = 0
    for i in range(1, n):
        if t[i] == S_TYPE and t[i - 1] == L_TYPE:
            sa[n - n1 + j] = i
            j += 1
    for i in range(n1):
        sa[i] = sa[n - n1 + sa[i]]
    for i in range(n1, n):
        sa[i] = -1
    _buckets(s, bkt, True)
    for i in range(n1 - 1, -1, -1):
        j = sa[i]
        sa[i] = -1
        bkt[s[j]] -= 1
        sa[bkt[s[j]]] = j


def _sais(s: np.ndarray, sa: np.ndarray, alphabet: int, depth: int = 0, l: np.ndarray | None = None) -> None:
    """
    Sorts the suffixes of ``s`` (last symbol unique and smallest) into ``sa``, 0-based.
    With ``l`` the last induction pass also writes the BWT of ``s`` into it.
    """
    n = s.shape[0]
    if n == 1:
        sa[0] = 0
        if l is not None:
            l[0] = 0
        return
    types = allocate(n, np.uint8, f"sais-types-{depth}")
    _classify(s, types)
    bkt = allocate(alphabet, sa.dtype, f"sais-buckets-{depth}")
    _place_lms(s, sa, types, bkt)
    _induce(s, sa, types, bkt)
    n1, names = _name_lms(s, sa, types)
    release(bkt)
    del bkt

    s1 = sa[n - n1:]
    sa1 = sa[:n1]
    if names < n1:
        logger.debug(f"SA-IS level {depth}: n={n}, {n1} LMS substrings, {names} names; recursing")
        _sais(s1, sa1, names, depth + 1)
    else:
        _direct_sort(s1, sa1)

    bkt = allocate(alphabet, sa.dtype, f"sais-buckets-{depth}")
    _place_sorted_lms(s, sa, types, bkt, n1)
    if l is None:
        _induce(s, sa, types, bkt)
    else:
        first = allocate(alphabet, sa.dtype, f"sais-bucket-starts-{depth}")
        s_first = allocate(alphabet, sa.dtype, f"sais-s-starts-{depth}")
        _induce_bwt(s, sa, types, bkt, first, s_first, l)


@njit(cache=True)
def _to_one_based(a):
    for i in range(a.shape[0]):
        a[i] += 1


def naive_sa(t: Text, width: int = 32) -> SuffixArray:
    """Comparison sort of all suffixes; quadratic memory traffic, test oracle only."""
    raw = t.to_bytes()
    order = sorted(range(t.n), key=lambda i: raw[i:])
    return IntArray.from_values([i + 1 for i in order], width)


def build_sa(t: Text, width: int = 32, sorter: Sorter = "sais") -> SuffixArray:
    """
    Builds the suffix array of ``t`` (values 1..n, SA[1] = n).

    Args:
        t: Text ending with the sentinel.
        width: Integer width of the result, 32 or 64.
        sorter: "sais" (linear-time induced sorting) or "naive" (comparison sort).

    Returns:
        The suffix array.
    """
    dtype = require_width(t.n, width)
    if sorter == "naive":
        return naive_sa(t, width)
    if sorter != "sais":
        raise ValueError(f"Unknown suffix sorter: {sorter!r}")
    sa = allocate(t.n, dtype, "sa")
    _sais(t.data, sa, ALPHABET)
    _to_one_based(sa)
    logger.debug(f"Suffix array built for n={t.n}")
    return IntArray(sa, width)


def build_sa_bwt(t: Text, width: int = 32) -> tuple[SuffixArray, np.ndarray]:
    """
    SA-IS that also returns the BWT bytes, written during its last induction
    pass. A separate L = T[SA - 1] gather reads the text in suffix order,
    one cache miss per row once the text outgrows the cache.
    """
    dtype = require_width(t.n, width)
    sa = allocate(t.n, dtype, "sa")
    l = allocate(t.n, np.uint8, "bwt")
    _sais(t.data, sa, ALPHABET, l=l)
    _to_one_based(sa)
    logger.debug(f"Suffix array and BWT built for n={t.n}")
    return IntArray(sa, width), l


@njit(cache=True)
def _invert(sa, isa):
    """Writes the inverse permutation; returns False if ``sa`` is not a permutation of 1..n."""
    n = sa.shape[0]
    for i in range(n):
        isa[i] = 0
    for i in range(n):
        v = sa[i]
        if v < 1 or v > n or isa[v - 1] != 0:
            return False
        isa[v - 1] = i + 1
    return True


def invert_sa(sa: SuffixArray) -> InverseSuffixArray:
    """
    Inverts a suffix array: ISA[SA[i]] = i.

    Raises:
        PermutationViolation: If ``sa`` is not a permutation of 1..n.
    """
    isa = IntArray.empty(len(sa), sa.width, "isa")
    if not _invert(sa.values, isa.values):
        logger.error("Suffix array is not a permutation of 1..n")
        raise PermutationViolation("Input is not a permutation of 1..n")
    return isa


@njit(cache=True)
def _nsv_kernel(a, out):
    """
    Left-to-right NSV with a stack of positions whose values never decrease
    upwards. ``out`` may alias ``a``: a slot is written only once it has
    left the stack, after which its value is no longer read.
    """
    n = a.shape[0]
    cap = STACK_INITIAL_CAPACITY if n > STACK_INITIAL_CAPACITY else n
    stack = np.empty_like(a[:cap])
    top = 0
    high = 0
    pushes = 0
    pops = 0
    for i in range(n):
        v = a[i]
        while top > 0 and a[stack[top - 1]] > v:
            top -= 1
            out[stack[top]] = i + 1
            pops += 1
        if top == cap:
            new_cap = cap * 2 if cap * 2 < n else n
            grown = np.empty_like(a[:new_cap])
            grown[:cap] = stack
            stack = grown
            cap = new_cap
        stack[top] = i
        top += 1
        pushes += 1
        if top > high:
            high = top
    while top > 0:
        top -= 1
        out[stack[top]] = n + 1
        pops += 1
    return pushes, pops, high, cap


def compute_nsv_stats(a: IntArray, out: IntArray | None = None) -> tuple[NsvArray, StackStats]:
    """NSV of ``a`` with stack instrumentation; ``out=a`` computes it in place."""
    n = len(a)
    require_width(n, a.width)
    if out is None:
        out = IntArray.empty(n, a.width, "nsv")
    pushes, pops, high, cap = _nsv_kernel(a.values, out.values)
    stats = StackStats(pushes=int(pushes), pops=int(pops), high_water=int(high),
                       capacity=int(cap), entry_bytes=a.values.itemsize)
    return out, stats


def compute_nsv(a: IntArray, out: IntArray | None = None) -> NsvArray:
    """
    Next smaller value: NSV[i] = min({n+1} U {j > i : A[j] < A[i]}).

    Equal values do not end the scan. ``out`` may be ``a`` itself.
    """
    nsv, _ = compute_nsv_stats(a, out)
    return nsv


@njit(cache=True)
def _subtract_positions(a):
    for i in range(a.shape[0]):
        a[i] -= i + 1


def lyndon_from_nsv_stats(t: Text, width: int = 32, sorter: Sorter = "sais", consume_text: bool = False,
                          times: StepTimes | None = None) -> tuple[LyndonArray, StackStats]:
    """NSV-Lyndon with the NSV stack instrumentation; ``consume_text`` releases T once SA exists."""
    times = times if times is not None else StepTimes()
    with times.step("sa"):
        sa = build_sa(t, width, sorter)
    if consume_text:
        release(t.data)
    with times.step("isa"):
        isa = invert_sa(sa)
    release(sa.values)
    del sa
    with times.step("nsv"):
        nsv, stats = compute_nsv_stats(isa, out=isa)
    ledger = current_ledger()
    if ledger is not None:
        ledger.record_transient(stats.stack_bytes, "nsv-stack")
    with times.step("lambda"):
        _subtract_positions(nsv.values)
    return nsv, stats


def lyndon_from_nsv(t: Text, width: int = 32, sorter: Sorter = "sais") -> LyndonArray:
    """
    Lyndon array as lambda[i] = NSV_ISA[i] - i.

    ISA replaces SA, and NSV and then lambda are computed in ISA's storage.
    """
    lam, _ = lyndon_from_nsv_stats(t, width, sorter)
    return lam
