from collections.abc import AsyncIterator
from contextlib import asynccontextmanager

import structlog
from fastapi import FastAPI

from app.bench.routes import counts
from app.core.config import settings
from app.core.exceptions import register_exception_handlers
from app.core.log_config import RequestLoggingMiddleware, setup_logging
from app.geometry.routes import geometry
from app.geometry.services import build_doa_grid
from app.localization.routes import locate
from app.merging.routes import plans

setup_logging()
logger = structlog.get_logger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI) -> AsyncIterator[None]:
    grid = build_doa_grid(settings.GRID_LEVEL, True)
    logger.info("doa_grid_ready", level=grid.level, directions=len(grid))
    yield
    logger.info("shutdown")


app = FastAPI(
    title=settings.PROJECT_NAME,
    debug=settings.DEBUG,
    lifespan=lifespan,
    description="SRP-PHAT and SMP-PHAT direction-of-arrival estimation",
    version="1.0.0",
)

register_exception_handlers(app, debug=settings.DEBUG)
app.add_middleware(RequestLoggingMiddleware)

app.include_router(geometry.router, prefix=settings.API_V1_PREFIX, tags=["geometry"])
app.include_router(plans.router, prefix=settings.API_V1_PREFIX, tags=["plans"])
app.include_router(counts.router, prefix=settings.API_V1_PREFIX, tags=["counts"])
app.include_router(locate.router, prefix=settings.API_V1_PREFIX, tags=["localization"])


@app.get("/")
async def root() -> dict[str, str]:
    return {"message": settings.PROJECT_NAME, "version": "1.0.0", "status": "running"}


@app.get("/health")
async def health_check() -> dict[str, str]:
    return {"status": "ok"}
