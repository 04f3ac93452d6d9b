"""API router initialization."""
from fastapi import APIRouter

from reptype.api.catalog import router as catalog_router
from reptype.api.classify import router as classify_router
from reptype.api.numbers import router as numbers_router
from reptype.api.relations import router as relations_router
from reptype.api.system import router as system_router

api_router = APIRouter(prefix="/api/v1")

api_router.include_router(relations_router)
api_router.include_router(numbers_router)
api_router.include_router(classify_router)
api_router.include_router(catalog_router)
api_router.include_router(system_router)
