"""Logging setup shared by the HTTP app and the CLI."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Optional

SERVICE_FORMAT = "%(asctime)s  %(name)-25s  %(levelname)-7s  %(message)s"
CLI_FORMAT = "%(levelname)s: %(message)s"


def configure_logging(
    level: str = "INFO",
    log_file: Optional[str] = None,
    fmt: str = SERVICE_FORMAT,
) -> None:
    """Configure the root logger once per process."""
    handlers: list[logging.Handler] = [logging.StreamHandler()]
    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_file))

    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format=fmt,
        handlers=handlers,
        force=True,
    )
