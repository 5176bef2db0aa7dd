"""
Logging setup for the atlas command line.
"""

import logging

from atlas.core.config import settings


def configure_logging(level: str | None = None) -> logging.Logger:
    """Attach one stderr handler to the package logger and set its level."""
    logger = logging.getLogger("atlas")
    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(settings.LOG_FORMAT))
        logger.addHandler(handler)
    logger.setLevel((level or settings.LOG_LEVEL).upper())
    logger.propagate = False
    return logger
