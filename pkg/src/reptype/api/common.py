"""Helpers shared by the API routers."""

from __future__ import annotations

import logging
from typing import Any, Optional

from fastapi import HTTPException

from reptype.core.errors import ReptypeError
from reptype.services import RunFlags, classifier_service
from reptype.services.classifier import Report

logger = logging.getLogger(__name__)


def run_command(command: str, document: Any = None, flags: Optional[RunFlags] = None) -> Report:
    """Run a classifier command, turning library errors into HTTP errors."""
    try:
        return classifier_service.run(command, document, flags)
    except ReptypeError as exc:
        logger.info("%s rejected: %s", command, exc)
        raise HTTPException(status_code=exc.status_code, detail=str(exc)) from None
