"""
Logging configuration for restricted-regression.
"""

import logging
import logging.config

import structlog

LOG_LEVELS = {
    "debug": logging.DEBUG,
    "info": logging.INFO,
    "warning": logging.WARNING,
    "error": logging.ERROR,
}


def setup_logging(default_level: int = logging.WARNING) -> None:
    """Configure structured logging for the entire package.

    Records from ``logging.getLogger(__name__)`` loggers are rendered by
    structlog as key/value lines on stderr; ``extra=`` fields are included.
    """
    level_name = logging.getLevelName(default_level)
    pre_chain = [
        structlog.stdlib.add_log_level,
        structlog.stdlib.add_logger_name,
        structlog.stdlib.ExtraAdder(),
        structlog.processors.TimeStamper(fmt="iso"),
    ]
    logging_config = {
        "version": 1,
        "disable_existing_loggers": False,
        "formatters": {
            "structured": {
                "()": structlog.stdlib.ProcessorFormatter,
                "processors": [
                    structlog.stdlib.ProcessorFormatter.remove_processors_meta,
                    structlog.processors.KeyValueRenderer(
                        key_order=["timestamp", "level", "logger", "event"],
                    ),
                ],
                "foreign_pre_chain": pre_chain,
            },
        },
        "handlers": {
            "console": {
                "class": "logging.StreamHandler",
                "formatter": "structured",
                "level": level_name,
                "stream": "ext://sys.stderr",
            },
        },
        "root": {
            "handlers": ["console"],
            "level": default_level,
        },
    }

    logging.config.dictConfig(logging_config)

    # Suppress noisy third-party loggers
    for logger_name in ("asyncio", "concurrent.futures"):
        logging.getLogger(logger_name).setLevel(logging.WARNING)


def level_from_name(name: str | None, default: int = logging.WARNING) -> int:
    """Map a CLI level name (debug, info, warning, error) to a logging level."""
    if not name:
        return default
    return LOG_LEVELS.get(name.lower(), default)
