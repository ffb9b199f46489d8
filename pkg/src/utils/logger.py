"""
Logging Utility
Configures logging for the verification library and CLI
"""

import logging
import os
import sys
from datetime import datetime
from typing import Optional

LOG_LEVEL_ENV = 'BSD_VERIFY_LOG_LEVEL'


def get_logger(name: str, level: Optional[str] = None) -> logging.Logger:
    """
    Get configured logger instance

    Args:
        name: Logger name (usually __name__)
        level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL).
            Falls back to $BSD_VERIFY_LOG_LEVEL, then INFO.

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(name)

    # Only configure if not already configured
    if not logger.handlers:
        level_name = (level or os.getenv(LOG_LEVEL_ENV, 'INFO')).upper()
        logger.setLevel(getattr(logging, level_name, logging.INFO))

        # Reports go to stdout, so logs use stderr
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(getattr(logging, level_name, logging.INFO))

        formatter = logging.Formatter(
            fmt='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )
        console_handler.setFormatter(formatter)

        logger.addHandler(console_handler)
        logger.propagate = False

    return logger


def set_level(level: str):
    """
    Change the level of every logger created through get_logger

    Args:
        level: Logging level name
    """
    numeric = getattr(logging, level.upper(), logging.INFO)
    for name in list(logging.root.manager.loggerDict):
        if name == 'src' or name.startswith('src.') or name == '__main__':
            logger = logging.getLogger(name)
            logger.setLevel(numeric)
            for handler in logger.handlers:
                handler.setLevel(numeric)


class SuiteLogger:
    """
    Context manager for verification suite logging
    """

    def __init__(self, suite_id: str, seed: int):
        """
        Initialize suite logger

        Args:
            suite_id: Identifier of the suite being run
            seed: Base seed of the run
        """
        self.suite_id = suite_id
        self.seed = seed
        self.logger = get_logger(f"src.verification.suite.{suite_id}")
        self.start_time = None

    def __enter__(self):
        """Start suite logging"""
        self.start_time = datetime.now()
        self.logger.info("=" * 80)
        self.logger.info(f"Starting suite: {self.suite_id}")
        self.logger.info(f"Seed: {self.seed}")
        self.logger.info(f"Start time: {self.start_time}")
        self.logger.info("=" * 80)
        return self.logger

    def __exit__(self, exc_type, exc_val, exc_tb):
        """End suite logging"""
        end_time = datetime.now()
        duration = end_time - self.start_time

        self.logger.info("=" * 80)
        if exc_type is None:
            self.logger.info(f"Suite finished: {self.suite_id}")
        else:
            self.logger.error(f"Suite aborted: {self.suite_id}")
            self.logger.error(f"Error: {exc_val}")

        self.logger.info(f"End time: {end_time}")
        self.logger.info(f"Duration: {duration}")
        self.logger.info("=" * 80)

        # Don't suppress exceptions
        return False
