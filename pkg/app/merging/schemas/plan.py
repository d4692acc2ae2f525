"""Pydantic schemas for merge plans (1-based pair indices)."""

from pydantic import BaseModel, Field

from app.geometry.schemas import DelayBounds


class MergeGroupDocument(BaseModel):
    ref: int = Field(..., ge=1)
    members: list[tuple[int, int]]


class PlanValidationDocument(BaseModel):
    valid: bool
    checked: int
    violation: dict[str, int] | None = None


class PlanResponse(BaseModel):
    array: str
    pairs: int
    groups: int
    epsilon: float
    plan: list[MergeGroupDocument]
    bounds: DelayBounds | None = None
    validation: PlanValidationDocument | None = None
