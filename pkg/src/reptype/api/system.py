"""Configured caps and semantic switches."""

from __future__ import annotations

from fastapi import APIRouter

from reptype.core.config import settings

router = APIRouter(prefix="/system", tags=["system"])


@router.get("/settings")
async def effective_settings():
    return {
        "caps": {
            "relation": settings.max_relation_size,
            "poset": settings.max_poset_size,
            "enumeration": settings.max_enumeration_size,
            "dyadic": settings.max_dyadic_points,
            "graph": settings.max_graph_vertices,
            "bordering": settings.max_bordering_points,
        },
        "dyadic": {
            "edge_order": settings.edge_order,
            "condition_a_scope": settings.condition_a_scope,
            "condition_c_motif": settings.condition_c_motif,
        },
        "cos_refinement_steps": settings.cos_refinement_steps,
    }
