"""
FastAPI ASGI entry point for the tl-calculus API.

Usage:
    uvicorn src.main:app --reload
    # or
    python -m src.main
"""
import logging
from contextlib import asynccontextmanager
from pathlib import Path

import uvicorn
from fastapi import FastAPI, Request, status
from fastapi.responses import JSONResponse

from src.algebra.errors import BudgetExceededError, TLError
from src.api.routers import router
from src.config import get_settings
from src.core.suite_registry import SUITE_MAP
from src.utils.logger import configure_root_logger, setup_logger

logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    configure_root_logger()
    settings = get_settings()
    if settings.log_dir:
        setup_logger(Path(settings.log_dir), run_label="api")
    logger.info(
        "Starting on %s:%s with %s suites, default domain %r, level cutoff %s",
        settings.api_host, settings.api_port, len(SUITE_MAP),
        settings.tl_default_domain, settings.tl_max_level,
    )
    yield
    logger.info("Shutting down")


app = FastAPI(
    title="tl-calculus",
    description=(
        "Exact Temperley-Lieb calculus, Jones projections, intertwiner insertions "
        "and the spectral algebra of A_o(F). Runs verification suites and returns "
        "certificates, synchronously or as background jobs with webhooks."
    ),
    version="1.0.0",
    docs_url="/docs",
    redoc_url="/redoc",
    lifespan=lifespan,
)


@app.exception_handler(TLError)
async def tl_error_handler(request: Request, exc: TLError):
    """Algebra errors (bad domain, strand mismatch, budget) are client errors."""
    if isinstance(exc, BudgetExceededError):
        logger.warning("%s %s over budget: %s", request.method, request.url.path, exc)
    return JSONResponse(
        status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
        content={"detail": f"{type(exc).__name__}: {exc}"},
    )


@app.get("/health", status_code=200)
async def health_check():
    """Liveness probe; public."""
    return {"status": "healthy", "suites": len(SUITE_MAP)}


app.include_router(router, prefix="/api/v1")


if __name__ == "__main__":
    settings = get_settings()
    uvicorn.run(
        "src.main:app",
        host=settings.api_host,
        port=settings.api_port,
        reload=True,
    )
