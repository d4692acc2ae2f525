from fastapi import APIRouter, Query

from app.core.config import settings
from app.core.constants import MAX_GRID_LEVEL
from app.core.schemas import ApiResponse, success_response
from app.geometry.schemas import ArrayResponse, GridResponse
from app.geometry.services import (
    build_doa_grid,
    delay_bounds,
    describe_array,
    list_presets,
    load_preset,
)

router = APIRouter()


@router.get("/arrays", response_model=ApiResponse[list[str]])
def get_arrays() -> ApiResponse[list[str]]:
    presets = list_presets()
    return success_response(presets, meta={"total": len(presets)})


@router.get("/arrays/{name}", response_model=ApiResponse[ArrayResponse])
def get_array(name: str) -> ApiResponse[ArrayResponse]:
    array = load_preset(name)
    return success_response(
        describe_array(
            array, settings.SAMPLE_RATE, settings.SPEED_OF_SOUND, settings.INTERPOLATION_FACTOR
        )
    )


@router.get("/grid", response_model=ApiResponse[GridResponse])
def get_grid(
    level: int = Query(settings.GRID_LEVEL, ge=0, le=MAX_GRID_LEVEL),
    hemisphere: bool = Query(True),
    include_dirs: bool = Query(False),
    array: str | None = Query(None, description="Preset whose delay bounds to include"),
) -> ApiResponse[GridResponse]:
    grid = build_doa_grid(level, hemisphere)
    bounds = None
    if array is not None:
        bounds = delay_bounds(
            load_preset(array),
            settings.SAMPLE_RATE,
            settings.SPEED_OF_SOUND,
            settings.INTERPOLATION_FACTOR,
        )
    return success_response(
        GridResponse(
            level=grid.level,
            hemisphere=grid.hemisphere,
            count=len(grid),
            dirs=grid.dirs.tolist() if include_dirs else None,
            azimuth_elevation_deg=grid.azimuth_elevation_deg().tolist() if include_dirs else None,
            bounds=bounds,
        )
    )
