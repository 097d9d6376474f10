"""
Logging utility for the FluxMap toolkit.

All module loggers live under the ``fluxmap`` hierarchy. Handlers are installed
once on the hierarchy root by ``configure_logging``; console output goes to
stderr so that reports written to stdout stay machine-readable.
"""

import logging
import os
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional, Union

ROOT_LOGGER = 'fluxmap'

DETAILED_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s'
CONSOLE_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'


def _resolve_level(level: Union[int, str, None]) -> int:
    if level is None:
        level = os.getenv('FLUXMAP_LOG_LEVEL', 'WARNING')
    if isinstance(level, int):
        return level
    resolved = logging.getLevelName(str(level).upper())
    return resolved if isinstance(resolved, int) else logging.INFO


def setup_logger(name: str) -> logging.Logger:
    """
    Return a module logger attached to the ``fluxmap`` hierarchy.

    Args:
        name: Logger name (typically __name__ of the calling module)

    Example:
        >>> logger = setup_logger(__name__)
        >>> logger.info("Mapping started")
    """
    root = logging.getLogger(ROOT_LOGGER)
    if not root.handlers:
        # Library use without configure_logging: stay quiet below WARNING.
        root.addHandler(logging.NullHandler())
        root.setLevel(_resolve_level(None))

    if name.startswith(ROOT_LOGGER):
        return logging.getLogger(name)
    return logging.getLogger(f"{ROOT_LOGGER}.{name}")


def configure_logging(
    level: Union[int, str, None] = logging.INFO,
    log_file: Optional[str] = None,
    max_bytes: int = 10485760,  # 10MB
    backup_count: int = 5
) -> logging.Logger:
    """
    Install console and optional rotating file handlers on the hierarchy root.

    Calling it again replaces the previous handlers, so the CLI can reconfigure
    after flags are parsed.

    Args:
        level: Logging level name or number
        log_file: Path to log file; parent directories are created
        max_bytes: Maximum size of log file before rotation (default: 10MB)
        backup_count: Number of backup log files to keep (default: 5)

    Returns:
        The ``fluxmap`` root logger
    """
    root = logging.getLogger(ROOT_LOGGER)
    resolved = _resolve_level(level)
    root.setLevel(resolved)

    for handler in list(root.handlers):
        root.removeHandler(handler)
        handler.close()

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(resolved)
    console_handler.setFormatter(logging.Formatter(CONSOLE_FORMAT, datefmt='%H:%M:%S'))
    root.addHandler(console_handler)

    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)

        file_handler = RotatingFileHandler(
            log_path,
            maxBytes=max_bytes,
            backupCount=backup_count,
            encoding='utf-8'
        )
        file_handler.setLevel(resolved)
        file_handler.setFormatter(
            logging.Formatter(DETAILED_FORMAT, datefmt='%Y-%m-%d %H:%M:%S')
        )
        root.addHandler(file_handler)

    root.propagate = False
    return root
