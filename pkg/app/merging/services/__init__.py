from app.merging.services.plan_service import (
    MergePlanService,
    plan_to_document,
    validation_to_document,
)

__all__ = ["MergePlanService", "plan_to_document", "validation_to_document"]
