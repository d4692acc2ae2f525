from fastapi import APIRouter, Query

from app.core.config import settings
from app.core.schemas import ApiResponse, success_response
from app.geometry.services import (
    build_doa_grid,
    build_tdoa_table,
    delay_bounds,
    enumerate_pairs,
    load_preset,
)
from app.merging.schemas import PlanResponse
from app.merging.services import MergePlanService, plan_to_document, validation_to_document

router = APIRouter()


@router.get("/plans/{array_name}", response_model=ApiResponse[PlanResponse])
def get_plan(
    array_name: str,
    epsilon: float = Query(settings.MERGE_EPSILON, gt=0),
    validate: bool = Query(True),
) -> ApiResponse[PlanResponse]:
    array = load_preset(array_name)
    pairs = enumerate_pairs(array)
    plan = MergePlanService.build_merge_plan(pairs, epsilon)

    validation = None
    if validate:
        table = build_tdoa_table(
            pairs,
            build_doa_grid(settings.GRID_LEVEL, True),
            settings.SAMPLE_RATE,
            settings.SPEED_OF_SOUND,
            settings.INTERPOLATION_FACTOR,
        )
        validation = validation_to_document(MergePlanService.validate_plan(plan, table))

    return success_response(
        PlanResponse(
            array=array.name,
            pairs=len(pairs),
            groups=plan.q,
            epsilon=plan.epsilon,
            plan=plan_to_document(plan),
            bounds=delay_bounds(
                array,
                settings.SAMPLE_RATE,
                settings.SPEED_OF_SOUND,
                settings.INTERPOLATION_FACTOR,
            ),
            validation=validation,
        )
    )
