"""Main FastAPI application for the reptype service.

Serves the exact classifiers over HTTP for batch use; the CLI in
``reptype.cli`` runs the same commands locally.
"""

from __future__ import annotations

import logging
from contextlib import asynccontextmanager
from typing import AsyncGenerator

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from reptype.core.config import settings
from reptype.core.logging import SERVICE_FORMAT, configure_logging

# ---------------------------------------------------------------------------
# Logging
# ---------------------------------------------------------------------------

configure_logging(settings.log_level, settings.log_file, SERVICE_FORMAT)
logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Lifespan
# ---------------------------------------------------------------------------

@asynccontextmanager
async def lifespan(app: FastAPI) -> AsyncGenerator[None, None]:
    logger.info("Starting %s v%s", settings.app_name, settings.app_version)

    from reptype.services import catalog_service, critical_service

    lists = catalog_service.get_supported_lists()
    logger.info("Graph lists ready: %s", ", ".join(entry["id"] for entry in lists))
    try:
        critical_service.load_config("posets")
        critical_service.load_config("dyadic_mu4")
    except FileNotFoundError as exc:
        logger.warning("Critical lists unavailable: %s", exc)

    logger.info("Startup complete")
    yield
    logger.info("Shutdown complete")


# ---------------------------------------------------------------------------
# App
# ---------------------------------------------------------------------------

app = FastAPI(
    title=settings.app_name,
    version=settings.app_version,
    description="Exact representation-type classifiers for posets, dyadic sets, graphs and quivers",
    docs_url="/docs",
    redoc_url=None,
    lifespan=lifespan,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.cors_origins,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


# ---------------------------------------------------------------------------
# Health / info  (registered before API routers)
# ---------------------------------------------------------------------------

@app.get("/health")
async def health_check():
    from reptype.services import catalog_service, critical_service

    return JSONResponse(
        content={
            "status": "healthy",
            "version": settings.app_version,
            "services": {
                "catalog": f"{len(catalog_service.get_supported_lists())} lists",
                "critical": f"{len(critical_service.mu4_cases())} mu = 4 reference cases",
            },
        }
    )


@app.get("/api/info")
async def api_info():
    return {
        "app_name": settings.app_name,
        "version": settings.app_version,
        "endpoints": {
            "norm": "/api/v1/relations/norm",
            "p": "/api/v1/relations/p",
            "faithful": "/api/v1/relations/faithful",
            "rho": "/api/v1/numbers/rho",
            "mu": "/api/v1/numbers/mu",
            "triangle": "/api/v1/numbers/triangle",
            "classify": "/api/v1/classify",
            "catalog": "/api/v1/catalog",
            "settings": "/api/v1/system/settings",
            "health": "/health",
            "docs": "/docs",
        },
    }


# ---------------------------------------------------------------------------
# API Routers
# ---------------------------------------------------------------------------

from reptype.api import api_router  # noqa: E402
app.include_router(api_router)


# ---------------------------------------------------------------------------
# Server entry point
# ---------------------------------------------------------------------------

if __name__ == "__main__":
    import uvicorn

    uvicorn.run(
        "reptype.main:app",
        host=settings.api_host,
        port=settings.api_port,
        reload=settings.api_reload,
    )
