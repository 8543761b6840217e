# tests/succinct/test_select.py
import numpy as np
import pytest

from lyndon_bwt.exceptions import OutOfRange
from lyndon_bwt.succinct.select import PositionSelect, SampledSelect


def _l(s: str) -> np.ndarray:
    return np.frombuffer(s.replace("$", "\x00").encode("latin-1"), dtype=np.uint8)


@pytest.mark.parametrize("index", [PositionSelect, lambda l: SampledSelect(l, 2)])
def test_select_banana_bwt(index):
    sel = index(_l("annb$aa"))
    assert [sel.select(ord("a"), k) for k in (1, 2, 3)] == [1, 6, 7]
    assert [sel.select(ord("n"), k) for k in (1, 2)] == [2, 3]
    assert sel.select(0, 1) == 5
    with pytest.raises(OutOfRange):
        sel.select(ord("b"), 2)
    with pytest.raises(OutOfRange):
        sel.select(ord("z"), 1)


@pytest.mark.parametrize("rate", [1, 3, 64])
def test_sampled_matches_positions(rate):
    """Sampled select returns the same positions as the full position lists."""
    rng = np.random.default_rng(rate)
    l = rng.integers(0, 6, size=20_000).astype(np.uint8)
    full = PositionSelect(l)
    sampled = SampledSelect(l, rate)
    for c in range(6):
        count = int(full.counts[c])
        for k in range(1, count + 1, 7):
            assert sampled.select(c, k) == full.select(c, k)
        assert sampled.select(c, count) == full.select(c, count)


def test_sampled_uses_less_space():
    l = np.random.default_rng(0).integers(0, 4, size=50_000).astype(np.uint8)
    assert SampledSelect(l, 64).overhead_bits() < PositionSelect(l).overhead_bits() // 8


def test_sample_rate_must_be_positive():
    with pytest.raises(ValueError, match="Sample rate"):
        SampledSelect(_l("a$"), 0)
