"""Classification of any kind-tagged document."""

from __future__ import annotations

import logging
from typing import Any, Literal, Optional

from fastapi import APIRouter, Body, HTTPException, Query
from pydantic import BaseModel

from reptype.api.common import run_command
from reptype.core.errors import ReptypeError
from reptype.services import RunFlags
from reptype.services.documents import parse_data

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/classify", tags=["classify"])


# ---------------------------------------------------------------------------
# Schemas
# ---------------------------------------------------------------------------

class ClassifyResponse(BaseModel):
    verdict: str
    lines: list[str]
    data: dict[str, Any]
    exit_code: int


# ---------------------------------------------------------------------------
# Endpoints
# ---------------------------------------------------------------------------

@router.post("", response_model=ClassifyResponse)
def classify_document(
    document: dict[str, Any] = Body(..., description="Document with a 'kind' field"),
    mode: Literal["integral", "coxeter"] = Query("integral"),
    edge_order: Optional[Literal["containment", "literal"]] = Query(None),
    cond_a_scope: Optional[Literal["all", "long"]] = Query(None),
    witness: bool = Query(False),
):
    try:
        doc = parse_data(document)
    except ReptypeError as exc:
        raise HTTPException(status_code=exc.status_code, detail=str(exc)) from None
    flags = RunFlags(mode=mode, edge_order=edge_order, cond_a_scope=cond_a_scope, witness=witness)
    report = run_command("classify", doc, flags)
    return ClassifyResponse(
        verdict=report.data["verdict"],
        lines=report.lines,
        data=report.data,
        exit_code=report.exit_code,
    )
