# src/lyndon_bwt/bench/schemas.py
"""
schemas.py

Pydantic models for benchmark output and the reference corpus manifest.
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field, HttpUrl, model_validator

SCHEMA_VERSION = "bench-v1"


class StackReport(BaseModel):
    pushes: int = 0
    pops: int = 0
    high_water: int = 0
    bytes: int = 0


class BenchReport(BaseModel):
    """One (dataset, algo, size) cell; emitted as one JSON line."""

    schema_version: str = Field(default=SCHEMA_VERSION, alias="schema")
    dataset: str
    algo: str
    n: int = Field(gt=0)
    sigma: int = Field(gt=0)
    width: int = 32
    repetitions: int = 1
    seconds: Dict[str, float] = Field(default_factory=dict)
    total_seconds: float = 0.0
    peak_bytes: int = 0
    peak_bytes_per_symbol: float = 0.0
    working_bytes: int = 0
    stack: Optional[StackReport] = None
    error: Optional[str] = None

    model_config = {"populate_by_name": True}

    @model_validator(mode="after")
    def _derive(self) -> "BenchReport":
        if self.peak_bytes and not self.peak_bytes_per_symbol:
            self.peak_bytes_per_symbol = self.peak_bytes / self.n
        return self

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True)


def working_space(peak_bytes: int, n: int, width: int = 32) -> int:
    """Peak minus the text (n bytes) and the output array (n words)."""
    return peak_bytes - n - n * (width // 8)


class CorpusEntry(BaseModel):
    name: str
    url: HttpUrl
    size: int = Field(gt=0, description="Expected size in bytes once decompressed")
    sigma: Optional[int] = None
    description: str = ""


class CorpusManifest(BaseModel):
    corpus: List[CorpusEntry]
