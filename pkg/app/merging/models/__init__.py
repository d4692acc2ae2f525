from app.merging.models.plan import (
    MergeGroup,
    MergeMember,
    MergePlan,
    PlanValidation,
    PlanViolation,
)

__all__ = ["MergeGroup", "MergeMember", "MergePlan", "PlanValidation", "PlanViolation"]
