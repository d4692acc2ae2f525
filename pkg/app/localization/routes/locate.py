import io

import structlog
from fastapi import APIRouter, File, Query, UploadFile
from starlette.concurrency import run_in_threadpool

from app.core.config import settings
from app.core.constants import MAX_GRID_LEVEL
from app.core.exceptions import ValidationError
from app.core.schemas import ApiResponse, success_response
from app.geometry.services import load_preset
from app.localization.models import Method
from app.localization.schemas import LocateResponse, LocateRow
from app.localization.services import LocalizationSetup, PipelineConfig, locate_wav

router = APIRouter()
logger = structlog.get_logger(__name__)


@router.post("/locate", response_model=ApiResponse[LocateResponse])
async def locate(
    file: UploadFile = File(...),
    array: str = Query(settings.DEFAULT_ARRAY),
    method: Method = Query(Method.SMP),
    fs: int = Query(settings.SAMPLE_RATE, gt=0),
    n: int = Query(settings.FRAME_SIZE, ge=2),
    k: int = Query(settings.INTERPOLATION_FACTOR),
    block: int = Query(settings.BLOCK_FRAMES, ge=1),
    grid_level: int = Query(settings.GRID_LEVEL, ge=0, le=MAX_GRID_LEVEL),
) -> ApiResponse[LocateResponse]:
    content = await file.read()
    if len(content) > settings.MAX_UPLOAD_MB * 1024 * 1024:
        raise ValidationError(
            f"Upload exceeds {settings.MAX_UPLOAD_MB} MB", field="file"
        )

    mic_array = load_preset(array)
    config = PipelineConfig.from_settings(fs=fs, n=n, k=k, block=block, grid_level=grid_level)
    setup = await run_in_threadpool(LocalizationSetup.build, mic_array, config)
    results = await run_in_threadpool(locate_wav, io.BytesIO(content), setup, method)

    logger.info("upload_localized", filename=file.filename, blocks=len(results))
    return success_response(
        LocateResponse(
            array=mic_array.name,
            method=str(method),
            blocks=len(results),
            rows=[LocateRow.from_result(i, result) for i, result in enumerate(results)],
        )
    )
