import logging
import sys

import structlog

from ambig_miner.core.config import settings


def setup_logging(level: str | None = None):
    level_name = (level or settings.LOG).upper()
    numeric_level = getattr(logging, level_name, logging.INFO)

    renderer = (
        structlog.dev.ConsoleRenderer()
        if settings.ENV == "development"
        else structlog.processors.JSONRenderer(sort_keys=True)
    )

    processors = [  # type: ignore
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.stdlib.add_log_level,
        renderer,
    ]

    # stdout is reserved for command output, logs go to stderr
    structlog.configure(
        processors=processors,  # type: ignore
        wrapper_class=structlog.make_filtering_bound_logger(numeric_level),
        context_class=dict,
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )

    # Make standard logging follow the same setup
    logging.basicConfig(format="%(message)s", level=numeric_level, stream=sys.stderr)
