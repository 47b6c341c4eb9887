"""
Logging configuration for penney_race.
"""

import logging
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config import LOG_LEVEL

ROOT_LOGGER = "penney_race"


def setup_logger(name: str = ROOT_LOGGER, level: str = LOG_LEVEL) -> logging.Logger:
    """
    Configure and return a logger with standard format.

    Diagnostics are written to stderr so that results on stdout stay clean.

    Args:
        name: Logger name
        level: Level name (DEBUG, INFO, WARNING, ...)

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(name)

    if logger.handlers:
        return logger

    logger.setLevel(getattr(logging, level, logging.WARNING))

    # Console handler
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(logging.DEBUG)

    # Formatter
    formatter = logging.Formatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S"
    )
    console_handler.setFormatter(formatter)

    logger.addHandler(console_handler)

    return logger


def get_logger(module: str) -> logging.Logger:
    """Return a child of the package logger, e.g. penney_race.oracle."""
    return setup_logger().getChild(module.rsplit(".", 1)[-1])
