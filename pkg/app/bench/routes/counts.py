from fastapi import APIRouter, Query

from app.bench.schemas import OpCountsDocument
from app.bench.services import counts_for_array
from app.core.config import settings
from app.core.constants import MAX_GRID_LEVEL
from app.core.schemas import ApiResponse, success_response
from app.geometry.services import load_preset

router = APIRouter()


@router.get("/counts/{array_name}", response_model=ApiResponse[OpCountsDocument])
def get_counts(
    array_name: str,
    n: int = Query(settings.FRAME_SIZE, ge=2),
    grid_level: int = Query(settings.GRID_LEVEL, ge=0, le=MAX_GRID_LEVEL),
    epsilon: float = Query(settings.MERGE_EPSILON, gt=0),
) -> ApiResponse[OpCountsDocument]:
    array = load_preset(array_name)
    counts = counts_for_array(array, n, grid_level, epsilon)
    return success_response(OpCountsDocument.from_counts(counts, array.name))
