# src/lyndon_bwt/main.py
"""
main.py

Command-line front end.

Subcommands:
    lyndon        text -> Lyndon array file (bwt, nsv or oracle route)
    bwt / unbwt   text <-> BWT file (sentinel byte 0 inside L)
    bp            build, query (--at), dump or verify the parenthesis form
    bench         JSON-lines benchmark reports over a corpus directory
    make-corpus   write the synthetic corpus
    fetch-corpus  list reference corpus URLs and check local sizes

Exit codes: 0 success, 1 usage, 2 data error, 3 internal invariant violation.
Results go to stdout or files; diagnostics go to stderr and the log file.
"""

import argparse
import logging
import sys
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Callable, Dict, List, Sequence

from .bench.corpus import DEFAULT_SIGMAS, check_corpus, load_manifest, make_corpus
from .bench.harness import plan_cells, run_bench
from .bench.schemas import BenchReport, StackReport, working_space
from .core.bp import BP_MAGIC, BpIndex, bp_from_bwt, build_bp_index, lambda_at, read_bp, write_bp
from .core.bwt import BwtString, count_array, invert_bwt, lf_array, load_bwt, sa_and_bwt
from .core.lyndon import ALGOS, bwt_lyndon, lyndon_array_stats
from .core.textcore import load_text, read_array, write_array
from .exceptions import InvariantViolation, LengthMismatch, LyndonBwtError, VerificationMismatch
from .utils.config_loader import get_env_variable, get_setting, load_config
from .utils.file_handler import read_bytes, write_bytes
from .utils.logging_setup import setup_logging
from .utils.memory import MemoryLedger
from .utils.timing import StepTimes

logger = logging.getLogger(__name__)

CONFIG_FILE_PATH = "config/config.ini"
ENV_FILE_PATH = ".env"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INVARIANT = 3


def _int_list(raw: str) -> List[int]:
    return [int(x) for x in raw.split(",") if x.strip()]


def _str_list(raw: str) -> List[str]:
    return [x.strip() for x in raw.split(",") if x.strip()]


@dataclass
class Settings:
    """Effective settings: CLI flag > environment > INI file > these defaults."""

    width: int = 32
    sentinel_policy: str = "append"
    sorter: str = "sais"
    block_size: int = 512
    stack_mode: str = "pairs"
    select_index: str = "positions"
    sample_rate: int = 64
    repetitions: int = 3
    sizes: List[int] = field(default_factory=lambda: [4096, 65536, 1048576])
    algos: List[str] = field(default_factory=lambda: ["bwt", "nsv"])
    jobs: int = 1
    corpus_dir: str = "data/corpus"
    manifest: str = "data/corpus/manifest.yaml"
    maxlyn_sizes: List[int] = field(default_factory=lambda: [4096, 16384])
    log_level: str = "INFO"
    log_file: str | None = None


# setting -> (INI section, INI key, cast)
CONFIG_KEYS: Dict[str, tuple[str, str, Callable[[str], Any] | None]] = {
    "width": ("general", "width", int),
    "sentinel_policy": ("general", "sentinel_policy", None),
    "sorter": ("general", "sorter", None),
    "block_size": ("bp", "block_size", int),
    "stack_mode": ("bp", "stack_mode", None),
    "select_index": ("bp", "select_index", None),
    "sample_rate": ("bp", "sample_rate", int),
    "repetitions": ("bench", "repetitions", int),
    "sizes": ("bench", "sizes", _int_list),
    "algos": ("bench", "algos", _str_list),
    "jobs": ("bench", "jobs", int),
    "corpus_dir": ("bench", "corpus_dir", None),
    "manifest": ("bench", "manifest", None),
    "maxlyn_sizes": ("bench", "maxlyn_sizes", _int_list),
    "log_level": ("logging", "level", None),
    "log_file": ("logging", "log_file", str),
}

ENV_OVERRIDES = {
    "log_level": ("LYNDON_BWT_LOG_LEVEL", str),
    "width": ("LYNDON_BWT_WIDTH", int),
}

CHOICES = {
    "width": (32, 64),
    "sentinel_policy": ("append", "verify"),
    "sorter": ("sais", "naive"),
    "stack_mode": ("pairs", "bitstack"),
    "select_index": ("positions", "sampled"),
}


def resolve_settings(config: Dict[str, Dict[str, str]], args: argparse.Namespace) -> Settings:
    """Merges INI values, environment overrides and CLI flags over the defaults."""
    settings = Settings()
    for name, (section, key, cast) in CONFIG_KEYS.items():
        setattr(settings, name, get_setting(config, section, key, getattr(settings, name), cast))

    for name, (var, cast) in ENV_OVERRIDES.items():
        value = get_env_variable(var, required=False)
        if value:
            try:
                setattr(settings, name, cast(value))
            except ValueError as e:
                raise ValueError(f"Invalid value for {var}: {value!r}") from e

    for f in fields(Settings):
        value = getattr(args, f.name, None)
        if value is not None:
            setattr(settings, f.name, value)

    for name, allowed in CHOICES.items():
        if getattr(settings, name) not in allowed:
            raise ValueError(f"Setting {name} = {getattr(settings, name)!r}; expected one of {allowed}")
    for algo in settings.algos:
        if algo not in ALGOS:
            raise ValueError(f"Unknown algorithm {algo!r} in algos; expected one of {ALGOS}")
    return settings


def _initial_setup(args: argparse.Namespace) -> Settings:
    """Loads config, sets up logging and resolves the effective settings."""
    config: Dict[str, Dict[str, str]] = {}
    missing_config = False
    try:
        config = load_config(args.config, args.env)
    except FileNotFoundError:
        missing_config = True
    settings = resolve_settings(config, args)
    setup_logging(log_level_str=settings.log_level, log_file=settings.log_file or None)
    if missing_config:
        logger.warning(f"Config file {args.config} not found; using defaults.")
    logger.debug(f"Effective settings: {settings}")
    return settings


class CliParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with code 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = CliParser(prog="lyndon-bwt", description="Lyndon arrays through the Burrows-Wheeler transform.")
    parser.add_argument("-c", "--config", type=str, default=CONFIG_FILE_PATH,
                        help=f"Path to the configuration INI file (default: {CONFIG_FILE_PATH}).")
    parser.add_argument("--env", type=str, default=ENV_FILE_PATH,
                        help=f"Path to the environment file (default: {ENV_FILE_PATH}).")
    parser.add_argument("--log-level", dest="log_level", type=str, default=None, help="Override the log level.")
    parser.add_argument("--width", type=int, choices=(32, 64), default=None, help="Integer width of arrays.")
    parser.add_argument("--sorter", choices=("sais", "naive"), default=None, help="Suffix sorter.")
    parser.add_argument("--sentinel-policy", dest="sentinel_policy", choices=("append", "verify"), default=None,
                        help="append: add the sentinel; verify: the input already ends with its only byte 0.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lyndon", help="Compute the Lyndon array of a text file.")
    p.add_argument("input", type=str)
    p.add_argument("--algo", choices=ALGOS, default="bwt")
    p.add_argument("--out", type=str, default=None, help="Output array file (default: INPUT.lambda).")
    p.add_argument("--report", action="store_true", help="Print a bench-v1 JSON report on stdout.")

    p = sub.add_parser("bwt", help="Write the BWT of a text file.")
    p.add_argument("input", type=str)
    p.add_argument("--out", type=str, default=None, help="Output file (default: INPUT.bwt).")

    p = sub.add_parser("unbwt", help="Decode a BWT file.")
    p.add_argument("input", type=str)
    p.add_argument("--out", type=str, default=None, help="Output file (default: INPUT.unbwt).")
    p.add_argument("--strip-sentinel", dest="strip_sentinel", action="store_true",
                   help="Drop the trailing sentinel byte from the decoded text.")

    p = sub.add_parser("bp", help="Balanced-parenthesis Lyndon array: build, query, dump or verify.")
    p.add_argument("input", type=str, help="Text file, BWT file (--bwt) or BP file (detected by header).")
    p.add_argument("--bwt", action="store_true", help="Treat INPUT as a BWT file.")
    action = p.add_mutually_exclusive_group()
    action.add_argument("--at", type=int, default=None, metavar="I", help="Print lambda[I].")
    action.add_argument("--dump", action="store_true", help="Print the parenthesis string.")
    action.add_argument("--verify", action="store_true", help="Check balance and agreement with lambda.")
    p.add_argument("--lambda", dest="lambda_file", type=str, default=None,
                   help="Lyndon array file to verify against (from the lyndon subcommand).")
    p.add_argument("--out", type=str, default=None, help="BP output file when building (default: INPUT.bp).")
    p.add_argument("--stack-mode", dest="stack_mode", choices=("pairs", "bitstack"), default=None)
    p.add_argument("--select-index", dest="select_index", choices=("positions", "sampled"), default=None)
    p.add_argument("--sample-rate", dest="sample_rate", type=int, default=None)
    p.add_argument("--block-size", dest="block_size", type=int, default=None)

    p = sub.add_parser("bench", help="Benchmark the routes over a corpus directory.")
    p.add_argument("--corpus-dir", dest="corpus_dir", type=str, default=None)
    p.add_argument("--sizes", type=_int_list, default=None, help="Comma-separated prefix sizes.")
    p.add_argument("--algos", type=_str_list, default=None, help="Comma-separated routes.")
    p.add_argument("--repetitions", type=int, default=None)
    p.add_argument("--jobs", type=int, default=None, help="Parallel worker processes.")
    p.add_argument("--maxlyn-sizes", dest="maxlyn_sizes", type=_int_list, default=None,
                   help="Unary sizes for the quadratic oracle demonstration ('' to skip).")

    p = sub.add_parser("make-corpus", help="Write synthetic texts (unary, Fibonacci, random).")
    p.add_argument("out_dir", nargs="?", default=None)
    p.add_argument("--sizes", type=_int_list, default=None)
    p.add_argument("--sigmas", type=_int_list, default=list(DEFAULT_SIGMAS))
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("fetch-corpus", help="List reference corpus URLs and check local file sizes.")
    p.add_argument("--manifest", type=str, default=None)
    p.add_argument("--corpus-dir", dest="corpus_dir", type=str, default=None)
    return parser


def parse_arguments(argv: Sequence[str] | None = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)


def cmd_lyndon(args: argparse.Namespace, settings: Settings) -> int:
    times = StepTimes()
    with MemoryLedger() as ledger:
        text = load_text(args.input, settings.sentinel_policy)
        n, sigma = text.n, text.sigma
        lam, stats = lyndon_array_stats(text, args.algo, settings.width, settings.sorter,
                                        consume_text=True, times=times)
        del text
        peak = ledger.peak
    out = args.out or f"{args.input}.lambda"
    write_array(out, lam)
    logger.info(f"Lyndon array ({args.algo}) of {args.input} written to {out}")
    if args.report:
        stack = None
        if stats is not None:
            stack = StackReport(pushes=stats.pushes, pops=stats.pops, high_water=stats.high_water,
                                bytes=stats.stack_bytes)
        report = BenchReport(dataset=Path(args.input).name, algo=args.algo, n=n, sigma=sigma,
                             width=settings.width, seconds=times.seconds, total_seconds=times.total,
                             peak_bytes=peak, working_bytes=working_space(peak, n, settings.width), stack=stack)
        print(report.to_json())
    return EXIT_OK


def cmd_bwt(args: argparse.Namespace, settings: Settings) -> int:
    text = load_text(args.input, settings.sentinel_policy)
    _, l = sa_and_bwt(text, settings.width, settings.sorter)
    out = args.out or f"{args.input}.bwt"
    write_bytes(out, l.to_bytes())
    logger.info(f"BWT of {args.input} (n={l.n}) written to {out}")
    return EXIT_OK


def cmd_unbwt(args: argparse.Namespace, settings: Settings) -> int:
    l = load_bwt(args.input)
    text = invert_bwt(l, lf_array(l, count_array(l), settings.width))
    data = text.to_bytes()
    if args.strip_sentinel:
        data = data[:-1]
    out = args.out or f"{args.input}.unbwt"
    write_bytes(out, data)
    logger.info(f"Decoded {args.input} (n={text.n}) to {out}")
    return EXIT_OK


def _bwt_for_bp(args: argparse.Namespace, settings: Settings) -> BwtString:
    if args.bwt:
        return load_bwt(args.input)
    text = load_text(args.input, settings.sentinel_policy)
    _, l = sa_and_bwt(text, settings.width, settings.sorter)
    return l


def cmd_bp(args: argparse.Namespace, settings: Settings) -> int:
    l: BwtString | None = None
    if read_bytes(args.input, limit=len(BP_MAGIC)) == BP_MAGIC:
        if args.bwt:
            logger.error(f"--bwt given for parenthesis file {args.input}")
            raise ValueError(f"{args.input} is a parenthesis file, not a BWT; drop --bwt")
        bp = read_bp(args.input)
    else:
        l = _bwt_for_bp(args, settings)
        bp = bp_from_bwt(l, settings.stack_mode, settings.select_index, settings.sample_rate, settings.width)
    index = build_bp_index(bp, settings.block_size)

    if args.at is not None:
        print(lambda_at(index, args.at))
    elif args.dump:
        print(str(bp))
    elif args.verify:
        _verify_bp(index, args, l, settings)
        print("OK")
    else:
        out = args.out or f"{args.input}.bp"
        write_bp(out, bp)
    return EXIT_OK


def _verify_bp(index: BpIndex, args: argparse.Namespace, l: BwtString | None, settings: Settings) -> None:
    """Compares lambda_at(1..n) with a lambda file, or with lambda decoded from the same BWT."""
    swept = index.lambdas(settings.width)
    if args.lambda_file:
        expected = read_array(args.lambda_file)
        if len(expected) != len(swept):
            raise LengthMismatch(f"{args.lambda_file} holds {len(expected)} values, BP encodes {len(swept)}")
        if expected != swept:
            first = next(i for i, (a, b) in enumerate(zip(expected.tolist(), swept.tolist()), start=1) if a != b)
            logger.error(f"BP disagrees with {args.lambda_file} at index {first}")
            raise VerificationMismatch(f"lambda_at({first}) differs from {args.lambda_file}")
    elif l is not None:
        _, lam = bwt_lyndon(l, lf_array(l, count_array(l), settings.width))
        if lam != swept:
            raise InvariantViolation("Parenthesis form disagrees with the Lyndon array of the same BWT")
    logger.info(f"BP verified: n={index.n}, balanced, {index.overhead_bits()} index bits")


def cmd_bench(args: argparse.Namespace, settings: Settings) -> int:
    cells = plan_cells(settings.corpus_dir, settings.sizes, settings.algos, settings.repetitions,
                       settings.width, settings.sorter, settings.maxlyn_sizes)
    for report in run_bench(cells, settings.jobs):
        print(report.to_json(), flush=True)
    return EXIT_OK


def cmd_make_corpus(args: argparse.Namespace, settings: Settings) -> int:
    out_dir = args.out_dir or settings.corpus_dir
    for path in make_corpus(out_dir, settings.sizes, args.sigmas, args.seed):
        print(path)
    return EXIT_OK


def cmd_fetch_corpus(args: argparse.Namespace, settings: Settings) -> int:
    manifest = load_manifest(settings.manifest)
    statuses = check_corpus(manifest, settings.corpus_dir)
    for status in statuses:
        print(f"{status.entry.name}\t{status.state}\t{status.entry.size}\t{status.entry.url}")
    mismatched = [s for s in statuses if s.state == "size-mismatch"]
    return EXIT_DATA if mismatched else EXIT_OK


COMMANDS: Dict[str, Callable[[argparse.Namespace, Settings], int]] = {
    "lyndon": cmd_lyndon,
    "bwt": cmd_bwt,
    "unbwt": cmd_unbwt,
    "bp": cmd_bp,
    "bench": cmd_bench,
    "make-corpus": cmd_make_corpus,
    "fetch-corpus": cmd_fetch_corpus,
}


def run(argv: Sequence[str] | None = None) -> None:
    """Main execution function."""
    args = parse_arguments(argv)

    try:
        settings = _initial_setup(args)
    except ValueError as e:
        logging.basicConfig(level=logging.ERROR)
        logging.error(f"Configuration Error: {e}")
        print(f"Error: Configuration failed. {e}", file=sys.stderr)
        sys.exit(EXIT_USAGE)

    try:
        code = COMMANDS[args.command](args, settings)
    except InvariantViolation as e:
        logger.error(f"Internal invariant violated: {e}", exc_info=True)
        print(f"Error: Internal invariant violated. {e}", file=sys.stderr)
        sys.exit(EXIT_INVARIANT)
    except (LyndonBwtError, FileNotFoundError, OSError, RuntimeError) as e:
        logger.error(f"{args.command} failed: {e}", exc_info=False)
        logger.debug("Detailed traceback:", exc_info=True)
        print(f"Error: {e}", file=sys.stderr)
        sys.exit(EXIT_DATA)
    except ValueError as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"Error: {e}", file=sys.stderr)
        sys.exit(EXIT_USAGE)
    except KeyboardInterrupt:
        logger.warning("Operation cancelled by user.")
        print("\nOperation cancelled.", file=sys.stderr)
        sys.exit(EXIT_USAGE)

    if code != EXIT_OK:
        sys.exit(code)


if __name__ == "__main__":
    run()
