# src/lyndon_bwt/bench/harness.py
"""
harness.py

Runs the Lyndon array routes over a corpus and reports, per
(dataset, algo, size): per-step wall-clock seconds (median over
repetitions), tracked peak bytes, working bytes and stack usage.

Dependencies:
    - loguru (progress logging)
    - numpy
    - core.lyndon, utils.memory, utils.timing
    - bench.schemas, bench.corpus

Every repetition runs inside its own MemoryLedger. The text is released
as soon as the route no longer needs it, and the output array stays
live, so working space is peak minus n bytes of text minus n words of
output.

Cells may run in separate processes (``jobs`` > 1); each process reads
its input file itself.
"""

import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Sequence

from loguru import logger

from ..core.lyndon import ALGOS, lyndon_array_stats
from ..core.textcore import Text
from ..utils.file_handler import read_bytes
from ..utils.memory import MemoryLedger
from ..utils.timing import StepTimes
from .corpus import corpus_files, unary_text
from .schemas import BenchReport, StackReport, working_space


@dataclass(frozen=True)
class BenchCell:
    dataset: str
    algo: str
    size: int | None = None  # prefix length; None for the whole file
    path: Path | None = None
    generated: str | None = None  # "unary" for generated inputs
    width: int = 32
    repetitions: int = 3
    sorter: str = "sais"

    def load(self) -> bytes:
        if self.generated == "unary":
            return unary_text(self.size or 0)
        raw = read_bytes(self.path)
        return raw if self.size is None else raw[:self.size]


def _run_once(data: bytes, cell: BenchCell) -> tuple[Dict[str, float], int, StackReport | None]:
    times = StepTimes()
    with MemoryLedger() as ledger:
        text = Text.from_bytes(data)
        lam, stats = lyndon_array_stats(text, cell.algo, cell.width, cell.sorter, consume_text=True, times=times)
        del text
        peak = ledger.peak
    del lam
    stack = None
    if stats is not None:
        stack = StackReport(pushes=stats.pushes, pops=stats.pops, high_water=stats.high_water, bytes=stats.stack_bytes)
    return times.seconds, peak, stack


def run_cell(cell: BenchCell) -> BenchReport:
    """Runs one cell; failures become a report with ``error`` set."""
    try:
        data = cell.load()
        n = len(data) + 1
        sigma = len(set(data)) + 1
        runs = [_run_once(data, cell) for _ in range(cell.repetitions)]
    except Exception as e:
        logger.error(f"{cell.dataset}/{cell.algo}: {e}")
        return BenchReport(dataset=cell.dataset, algo=cell.algo, n=max(1, (cell.size or 0) + 1), sigma=1,
                           width=cell.width, repetitions=cell.repetitions, error=str(e))

    steps = list(runs[0][0])
    seconds = {step: statistics.median(r[0].get(step, 0.0) for r in runs) for step in steps}
    peak = max(r[1] for r in runs)
    report = BenchReport(
        dataset=cell.dataset, algo=cell.algo, n=n, sigma=sigma, width=cell.width,
        repetitions=cell.repetitions, seconds=seconds,
        total_seconds=statistics.median(sum(r[0].values()) for r in runs),
        peak_bytes=peak, working_bytes=working_space(peak, n, cell.width), stack=runs[0][2],
    )
    logger.info(f"{cell.dataset} [{cell.algo}] n={n}: {report.total_seconds:.3f}s, "
                f"{report.peak_bytes_per_symbol:.2f} bytes/symbol")
    return report


def plan_cells(corpus_dir: str | Path, sizes: Sequence[int], algos: Sequence[str], repetitions: int = 3,
               width: int = 32, sorter: str = "sais", maxlyn_sizes: Sequence[int] = ()) -> List[BenchCell]:
    """
    One cell per (file, algo, size) for sizes up to the file length, plus
    the whole file when it is longer than every size, plus the oracle on
    unary texts of ``maxlyn_sizes``.
    """
    for algo in algos:
        if algo not in ALGOS:
            raise ValueError(f"Unknown algorithm {algo!r}; expected one of {', '.join(ALGOS)}")
    cells: List[BenchCell] = []
    for path in corpus_files(corpus_dir):
        length = path.stat().st_size
        prefixes: List[int | None] = [s for s in sorted(sizes) if s <= length]
        if not prefixes or length > max(sizes, default=0):
            prefixes.append(None)
        for size in prefixes:
            for algo in algos:
                cells.append(BenchCell(dataset=path.name, algo=algo, size=size, path=path,
                                       width=width, repetitions=repetitions, sorter=sorter))
    for size in maxlyn_sizes:
        cells.append(BenchCell(dataset=f"unary.{size}", algo="oracle", size=size, generated="unary",
                               width=width, repetitions=repetitions, sorter=sorter))
    return cells


def run_bench(cells: Iterable[BenchCell], jobs: int = 1) -> Iterator[BenchReport]:
    """Yields one report per cell, in cell order."""
    cells = list(cells)
    logger.info(f"Running {len(cells)} benchmark cells with {jobs} job(s)")
    if jobs <= 1:
        for cell in cells:
            yield run_cell(cell)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(run_cell, cells)


def time_ratio(small: BenchReport, large: BenchReport) -> float:
    """Growth of total time between two reports of the same algo."""
    if small.total_seconds <= 0:
        return float("inf")
    return large.total_seconds / small.total_seconds
