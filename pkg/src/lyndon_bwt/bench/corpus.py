# src/lyndon_bwt/bench/corpus.py
"""
corpus.py

Benchmark inputs: synthetic texts (unary, Fibonacci word, random per
alphabet size) and the reference corpus manifest.

Dependencies:
    - numpy
    - PyYAML
    - bench.schemas (manifest validation)

No synthetic text contains byte 0, which is reserved for the sentinel.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, List

import numpy as np
import yaml
from pydantic import ValidationError

from ..utils.file_handler import read_bytes, write_bytes
from .schemas import CorpusEntry, CorpusManifest

logger = logging.getLogger(__name__)

DEFAULT_SIGMAS = (2, 4, 26, 255)
MANIFEST_NAME = "manifest.yaml"


def unary_text(n: int, symbol: bytes = b"a") -> bytes:
    return symbol * n


def fibonacci_word(n: int) -> bytes:
    """Prefix of length n of the fixed point of a -> ab, b -> a."""
    prev, cur = b"a", b"ab"
    while len(cur) < n:
        prev, cur = cur, cur + prev
    return cur[:n]


def random_text(n: int, sigma: int, seed: int = 0) -> bytes:
    """n symbols drawn uniformly from sigma symbols ('a'.. for sigma <= 26, else 1..sigma)."""
    if not 1 <= sigma <= 255:
        raise ValueError(f"Alphabet size must be in 1..255, got {sigma}")
    low = ord("a") if sigma <= 26 else 1
    rng = np.random.default_rng(seed)
    return rng.integers(low, low + sigma, size=n, dtype=np.uint8).tobytes()


def synthetic_corpus(sizes: Iterable[int], sigmas: Iterable[int] = DEFAULT_SIGMAS, seed: int = 0) -> Dict[str, bytes]:
    """File name -> content for every generator and size."""
    corpus: Dict[str, bytes] = {}
    for n in sizes:
        corpus[f"unary.{n}"] = unary_text(n)
        corpus[f"fib.{n}"] = fibonacci_word(n)
        for sigma in sigmas:
            corpus[f"random-s{sigma}.{n}"] = random_text(n, sigma, seed)
    return corpus


def make_corpus(out_dir: str | Path, sizes: Iterable[int], sigmas: Iterable[int] = DEFAULT_SIGMAS, seed: int = 0) -> List[Path]:
    """Writes the synthetic corpus into ``out_dir``; returns the written paths."""
    out = Path(out_dir)
    written = []
    for name, content in synthetic_corpus(sizes, sigmas, seed).items():
        path = out / name
        write_bytes(path, content)
        written.append(path)
    logger.info(f"Wrote {len(written)} synthetic texts to {out}")
    return written


def corpus_files(corpus_dir: str | Path) -> List[Path]:
    """Benchmark inputs in ``corpus_dir``: regular files other than the manifest and hidden files."""
    root = Path(corpus_dir)
    if not root.is_dir():
        logger.error(f"Corpus directory not found: {corpus_dir}")
        raise FileNotFoundError(f"Corpus directory not found: {corpus_dir}")
    return sorted(
        p for p in root.iterdir()
        if p.is_file() and not p.name.startswith(".") and p.name != MANIFEST_NAME and p.suffix != ".yaml"
    )


def load_manifest(path: str | Path) -> CorpusManifest:
    """
    Raises:
        FileNotFoundError: If the manifest does not exist.
        ValueError: If it is not valid YAML or does not match the schema.
    """
    content = read_bytes(path).decode("utf-8")
    try:
        data = yaml.safe_load(content)
        return CorpusManifest.model_validate(data)
    except yaml.YAMLError as e:
        logger.error(f"Invalid YAML in corpus manifest {path}: {e}")
        raise ValueError(f"Invalid YAML in corpus manifest {path}") from e
    except ValidationError as e:
        logger.error(f"Corpus manifest {path} does not match the schema: {e}")
        raise ValueError(f"Corpus manifest {path} does not match the schema") from e


@dataclass(frozen=True)
class CorpusStatus:
    entry: CorpusEntry
    path: Path
    actual_size: int | None

    @property
    def state(self) -> str:
        if self.actual_size is None:
            return "missing"
        return "ok" if self.actual_size == self.entry.size else "size-mismatch"


def check_corpus(manifest: CorpusManifest, corpus_dir: str | Path) -> List[CorpusStatus]:
    """Compares each manifest entry with the file of the same name in ``corpus_dir``."""
    statuses = []
    for entry in manifest.corpus:
        path = Path(corpus_dir) / entry.name
        size = path.stat().st_size if path.is_file() else None
        status = CorpusStatus(entry=entry, path=path, actual_size=size)
        if status.state == "size-mismatch":
            logger.warning(f"{path}: {size} bytes, manifest says {entry.size}")
        statuses.append(status)
    return statuses
