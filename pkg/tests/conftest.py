# tests/conftest.py
import itertools

import numpy as np
import pytest

from lyndon_bwt.core.textcore import Text

BANANA = {
    "sa": [7, 6, 4, 2, 1, 5, 3],
    "isa": [5, 4, 7, 3, 6, 2, 1],
    "nsv_isa": [2, 4, 4, 6, 6, 7, 8],
    "lf": [2, 6, 7, 5, 1, 3, 4],
    "bwt": "annb$aa",
    "psi": [5, 1, 6, 7, 4, 2, 3],
    "lam": [1, 2, 1, 2, 1, 1, 1],
    "lam_sa": [1, 1, 2, 2, 1, 1, 1],
    "bp": "()(())(())()()",
}


def is_lyndon(word: bytes) -> bool:
    """Strictly smaller than each of its proper suffixes."""
    return all(word < word[k:] for k in range(1, len(word)))


def brute_lyndon(raw: bytes) -> list[int]:
    """Lambda by testing every factor; the sentinel is byte 0 at the end."""
    s = raw + b"\x00"
    n = len(s)
    return [max(l for l in range(1, n - i + 1) if is_lyndon(s[i:i + l])) for i in range(n)]


def all_words(alphabet: bytes, max_len: int):
    for length in range(max_len + 1):
        for word in itertools.product(alphabet, repeat=length):
            yield bytes(word)


def random_words(count: int, max_len: int, sigmas=(1, 2, 4, 26, 255), seed: int = 7):
    rng = np.random.default_rng(seed)
    for k in range(count):
        sigma = sigmas[k % len(sigmas)]
        n = int(rng.integers(1, max_len + 1))
        low = ord("a") if sigma <= 26 else 1
        yield rng.integers(low, low + sigma, size=n, dtype=np.uint8).tobytes()


@pytest.fixture
def banana():
    return Text.from_bytes(b"banana")


@pytest.fixture
def banana_values():
    return BANANA
