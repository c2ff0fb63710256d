"""
Console logging through rich.
"""

import logging

from rich.logging import RichHandler

from config.settings import LOG_LEVEL


def configure_logging(level: str | None = None) -> None:
    """Route library loggers to a RichHandler; idempotent."""
    root = logging.getLogger()
    if any(isinstance(h, RichHandler) for h in root.handlers):
        root.setLevel(level or LOG_LEVEL)
        return
    logging.basicConfig(
        level=level or LOG_LEVEL,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(rich_tracebacks=True, show_path=False)],
    )
