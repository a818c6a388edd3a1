# In: core/logger_config.py
import logging
import sys


def setup_logger(level: int = logging.WARNING):
    """
    Set up the root logger with a timestamped format, replacing any
    existing handlers. Logs go to stderr so that command output on
    stdout stays clean.
    """
    # Get the root logger
    logger = logging.getLogger()

    # Clear any existing handlers
    if logger.hasHandlers():
        logger.handlers.clear()

    handler = logging.StreamHandler(sys.stderr)

    # Define the format: Timestamp - Log Level - Message
    log_format = "%(asctime)s - %(levelname)s - %(message)s"
    formatter = logging.Formatter(log_format, datefmt="%Y-%m-%d %H:%M:%S")
    handler.setFormatter(formatter)

    logger.addHandler(handler)
    logger.setLevel(level)

    # Silence the chatty parser and test-generation loggers
    logging.getLogger("lark").setLevel(logging.WARNING)
    logging.getLogger("hypothesis").setLevel(logging.WARNING)

    logging.debug("Logger configured successfully with timestamps.")


def level_from_verbosity(verbosity: int) -> int:
    """Map the count of -v flags to a logging level."""
    if verbosity >= 2:
        return logging.DEBUG
    if verbosity == 1:
        return logging.INFO
    return logging.WARNING
