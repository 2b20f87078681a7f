"""
Logging configuration for permknock
"""
import logging
from logging.handlers import RotatingFileHandler
from pathlib import Path

LOGGER_NAME = 'permknock'

# package loggers routed through the permknock handlers
PACKAGES = ('app', 'commands', 'changepoint', 'datagen', 'harness', 'knockoffs', 'models', 'solvers', 'utils')


def setup_logging(config, verbose=False):
    """Configure application logging"""
    logger = logging.getLogger(LOGGER_NAME)

    # Set log level from config
    log_level = getattr(logging, str(config.LOG_LEVEL).upper(), logging.INFO)
    if verbose:
        log_level = logging.DEBUG

    # Remove existing handlers
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    if config.LOG_TO_FILE:
        # Create logs directory if it doesn't exist
        log_dir = Path(config.LOG_DIR)
        log_dir.mkdir(parents=True, exist_ok=True)

        # File handler for general logs
        file_handler = RotatingFileHandler(
            log_dir / 'permknock.log',
            maxBytes=10 * 1024 * 1024,  # 10MB
            backupCount=10
        )
        file_handler.setFormatter(logging.Formatter(
            '[%(asctime)s] %(levelname)s in %(module)s: %(message)s'
        ))
        file_handler.setLevel(log_level)
        logger.addHandler(file_handler)

        # File handler for errors only
        error_handler = RotatingFileHandler(
            log_dir / 'errors.log',
            maxBytes=10 * 1024 * 1024,  # 10MB
            backupCount=5
        )
        error_handler.setFormatter(logging.Formatter(
            '[%(asctime)s] %(levelname)s in %(pathname)s:%(lineno)d: %(message)s'
        ))
        error_handler.setLevel(logging.ERROR)
        logger.addHandler(error_handler)

    # Console handler for development
    if config.DEBUG or verbose:
        console_handler = logging.StreamHandler()
        console_handler.setFormatter(logging.Formatter(
            '%(levelname)s: %(message)s'
        ))
        console_handler.setLevel(log_level)
        logger.addHandler(console_handler)

    logger.setLevel(log_level)
    # keep records flowing to the root logger when no handler is attached here
    logger.propagate = not logger.handlers

    # Module loggers are named after their package; hang them under ours
    for package in PACKAGES:
        child = logging.getLogger(package)
        child.handlers = [h for h in logger.handlers]
        child.setLevel(log_level)
        child.propagate = not logger.handlers

    logger.debug(f'logging configured: level={logging.getLevelName(log_level)} files={config.LOG_TO_FILE}')
    return logger
