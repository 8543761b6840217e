# tests/succinct/test_bitstack.py
import numpy as np
import pytest

from lyndon_bwt.exceptions import DuplicatePush, OutOfRange
from lyndon_bwt.succinct.bitstack import BitStack, FenwickCounts


def _values(stack: BitStack) -> list[int]:
    """Stacked values bottom to top."""
    return [stack.select1(k) for k in range(1, len(stack) + 1)]


def test_fenwick_prefix_and_search():
    counts = FenwickCounts(5)
    for index, delta in enumerate([3, 0, 2, 5, 1]):
        counts.add(index, delta)
    assert [counts.prefix(c) for c in range(6)] == [0, 3, 3, 5, 10, 11]
    assert counts.search(1) == (0, 1)
    assert counts.search(4) == (2, 1)
    assert counts.search(6) == (3, 1)
    assert counts.search(11) == (4, 1)


def test_push_pops_larger_values():
    """Pushing 5, 7 then 3 deletes 7 and 5."""
    stack = BitStack(8)
    assert stack.push(5) == 0
    assert stack.push(7) == 0
    assert _values(stack) == [5, 7]
    assert stack.top() == 7
    assert stack.push(3) == 2
    assert _values(stack) == [3]
    assert stack.pushes == 3
    assert stack.pops == 2
    assert stack.high_water == 2


def test_push_into_empty_and_pop():
    stack = BitStack(4)
    assert stack.top() is None
    stack.push(1)
    assert stack.rank1(1) == 1 and stack.rank1(2) == 1
    assert stack.pop() == 1
    assert len(stack) == 0
    with pytest.raises(OutOfRange):
        stack.pop()


def test_push_errors(caplog):
    stack = BitStack(4)
    stack.push(2)
    with pytest.raises(DuplicatePush):
        stack.push(2)
    assert "pushed twice" in caplog.text
    with pytest.raises(OutOfRange):
        stack.push(5)
    with pytest.raises(OutOfRange):
        stack.select1(2)


@pytest.mark.parametrize("superblock_bits", [8, 64, 2048])
def test_matches_list_stack(superblock_bits):
    """Random pushes against a plain list stack holding the same values."""
    n = 5000
    rng = np.random.default_rng(superblock_bits)
    stack = BitStack(n, superblock_bits)
    reference: list[int] = []
    for _ in range(100_000 // 4):
        e = int(rng.integers(1, n + 1))
        if stack.bits[e - 1]:
            if reference:
                assert stack.pop() == reference.pop()
            continue
        deleted = 0
        while reference and reference[-1] > e:
            reference.pop()
            deleted += 1
        reference.append(e)
        assert stack.push(e) == deleted
        assert len(stack) == len(reference)
        assert stack.top() == reference[-1]
        assert stack.rank1(e) == len(reference)
    assert _values(stack) == reference
