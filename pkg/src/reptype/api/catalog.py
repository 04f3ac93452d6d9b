"""Named graphs of lists I-IV."""

from __future__ import annotations

from fastapi import APIRouter, HTTPException, Query

from reptype.api.common import run_command
from reptype.services import RunFlags, catalog_service
from reptype.services.catalog import LIST_IDS

router = APIRouter(prefix="/catalog", tags=["catalog"])


@router.get("")
async def list_catalogs():
    return {"lists": catalog_service.get_supported_lists()}


@router.get("/{list_id}")
def catalog_members(list_id: str, bound: int = Query(8, ge=1, description="Largest family index")):
    if list_id not in LIST_IDS:
        raise HTTPException(status_code=404, detail=f"No graph list '{list_id}'")
    return run_command("catalog", flags=RunFlags(args=[list_id], bound=bound)).data
