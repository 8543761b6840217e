# src/lyndon_bwt/utils/logging_setup.py
"""
logging_setup.py

Initializes and configures logging for the toolkit.

Dependencies:
    - logging

Input: log level name, optional log file path
Output: configured root logger

Console output goes to stderr: stdout is reserved for machine-readable
results (bench JSON lines, ``bp --at`` values, ``lyndon --report``).
"""

import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path

DEFAULT_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
LOG_FILE_MAX_BYTES = 5 * 1024 * 1024
LOG_FILE_BACKUPS = 3


def setup_logging(log_level_str: str = 'INFO', log_file: str | None = None, log_format: str = DEFAULT_FORMAT) -> None:
    """Sets up the logging configuration. Safe to call more than once."""
    log_level = getattr(logging, log_level_str.upper(), logging.INFO)
    logger = logging.getLogger()

    if logger.level == logging.NOTSET or logger.level > log_level:
        logger.setLevel(log_level)

    formatter = logging.Formatter(log_format)

    has_console_handler = any(
        isinstance(h, logging.StreamHandler) and getattr(h, "stream", None) is sys.stderr
        for h in logger.handlers
    )
    added_console = False
    if not has_console_handler:
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(log_level)
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)
        added_console = True
    else:
        logger.debug("Console handler already exists. Skipping add.")

    added_file = False
    if log_file:
        log_file_path = Path(log_file).resolve()
        has_file_handler = any(
            isinstance(h, RotatingFileHandler) and Path(h.baseFilename).resolve() == log_file_path
            for h in logger.handlers
        )
        if not has_file_handler:
            try:
                log_file_path.parent.mkdir(parents=True, exist_ok=True)
                file_handler = RotatingFileHandler(
                    log_file_path, maxBytes=LOG_FILE_MAX_BYTES, backupCount=LOG_FILE_BACKUPS, encoding='utf-8'
                )
                file_handler.setLevel(log_level)
                file_handler.setFormatter(formatter)
                logger.addHandler(file_handler)
                added_file = True
            except Exception as e:
                logger.error(f"Failed to configure file logging for {log_file}: {e}. Logging to console only.")
        else:
            logger.debug(f"File handler for {log_file} already exists. Skipping add.")

    if added_console or added_file:
        target = f"console and file: {log_file}" if added_file else "console only"
        logger.debug(f"Logging configured. Level: {log_level_str}. Outputting to {target}.")

    # numba's compiler logs at DEBUG through the root logger
    logging.getLogger("numba").setLevel(logging.WARNING)
