from app.merging.schemas.plan import MergeGroupDocument, PlanResponse, PlanValidationDocument

__all__ = ["MergeGroupDocument", "PlanResponse", "PlanValidationDocument"]
