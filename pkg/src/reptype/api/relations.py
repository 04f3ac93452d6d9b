"""Relation endpoints: norm, P and P-faithfulness."""

from __future__ import annotations

from typing import Optional

from fastapi import APIRouter
from pydantic import BaseModel, Field

from reptype.api.common import run_command
from reptype.services import RunFlags
from reptype.services.documents import RelationDoc

router = APIRouter(prefix="/relations", tags=["relations"])


# ---------------------------------------------------------------------------
# Schemas
# ---------------------------------------------------------------------------

class NormResponse(BaseModel):
    value: str = Field(..., description="Exact minimum of the quadratic form on the simplex")
    p: str = Field(..., description="Reciprocal of the norm, 'inf' when the norm is 0")
    witness: list[str] = Field(default_factory=list, description="Minimising vector")
    support: list[int] = Field(default_factory=list)


class PResponse(BaseModel):
    p: str


class FaithfulResponse(BaseModel):
    faithful: bool
    p: str
    witness: Optional[int] = Field(None, description="Element whose removal leaves P unchanged")


# ---------------------------------------------------------------------------
# Endpoints
# ---------------------------------------------------------------------------

@router.post("/norm", response_model=NormResponse)
def relation_norm(doc: RelationDoc):
    report = run_command("norm", doc, RunFlags(witness=True))
    return NormResponse(**report.data)


@router.post("/p", response_model=PResponse)
def relation_p(doc: RelationDoc):
    return PResponse(**run_command("p", doc).data)


@router.post("/faithful", response_model=FaithfulResponse)
def relation_faithful(doc: RelationDoc):
    return FaithfulResponse(**run_command("faithful", doc).data)
