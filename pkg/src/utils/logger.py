import logging
import sys
from datetime import datetime
from pathlib import Path
from typing import Optional

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'
RUN_LOGGER_NAME = 'tl_calculus'


def _stderr_handler(level: int) -> logging.Handler:
    # stdout carries the JSON/CSV/DOT artifacts
    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT))
    return handler


def setup_logger(log_path: Path, level: int = logging.INFO, run_label: Optional[str] = None) -> logging.Logger:
    """
    Attach a file handler for one CLI or API run.

    The file is ``<log_path>/<run_label or 'run'>_<timestamp>.log``.  Records
    from the algebra, suite and core loggers propagate into it through the
    root logger.
    """
    log_path.mkdir(parents=True, exist_ok=True)

    logger = logging.getLogger(RUN_LOGGER_NAME)
    logger.setLevel(level)

    if not any(isinstance(h, logging.FileHandler) for h in logging.getLogger().handlers):
        stamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        fh = logging.FileHandler(log_path / f'{run_label or "run"}_{stamp}.log', encoding='utf-8')
        fh.setLevel(level)
        fh.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT))
        logging.getLogger().addHandler(fh)

    return logger


def configure_root_logger(level: int = logging.INFO):
    """
    Route every logging.getLogger(__name__) in the algebra, suites and core
    layers to stderr at the given level.

    Safe to call more than once: an existing stderr handler is re-levelled
    instead of duplicated.
    """
    root_logger = logging.getLogger()
    root_logger.setLevel(level)

    stream_handlers = [
        h for h in root_logger.handlers
        if isinstance(h, logging.StreamHandler) and not isinstance(h, logging.FileHandler)
    ]
    if stream_handlers:
        for handler in stream_handlers:
            handler.setLevel(level)
    else:
        root_logger.addHandler(_stderr_handler(level))
