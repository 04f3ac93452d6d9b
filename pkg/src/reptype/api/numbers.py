"""Separating functions on tuples of extended naturals."""

from __future__ import annotations

from fastapi import APIRouter, Query

from reptype.api.common import run_command
from reptype.services import RunFlags

router = APIRouter(prefix="/numbers", tags=["numbers"])

_N = Query(..., description="Arguments; 'inf' stands for infinity")


@router.get("/rho")
def rho(n: list[str] = _N):
    return run_command("rho", flags=RunFlags(args=n)).data


@router.get("/mu")
def mu(n: list[str] = _N):
    return run_command("mu", flags=RunFlags(args=n)).data


@router.get("/triangle")
def triangle(n: list[str] = _N):
    """Order of the group generated by three involutions with product orders n."""
    return run_command("triangle", flags=RunFlags(args=n)).data
