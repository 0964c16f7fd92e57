"""
Logging configuration for CrossTalk
"""
import logging
import sys

LOGGER_NAME = "crosstalk"


def setup_logging(level: str = "INFO") -> logging.Logger:
    """
    Configure application logging

    Records go to stderr so that figure data written to stdout stays clean.
    Repeated calls only change the level.

    Args:
        level: Level name for the "crosstalk" logger

    Returns:
        The configured "crosstalk" logger
    """
    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(getattr(logging, level.upper(), logging.INFO))

    # Console handler
    handler = logging.StreamHandler(sys.stderr)
    formatter = logging.Formatter(
        "[%(asctime)s] %(levelname)s %(name)s: %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S"
    )
    handler.setFormatter(formatter)

    # Avoid duplicate handlers
    if not logger.handlers:
        logger.addHandler(handler)

    return logger
