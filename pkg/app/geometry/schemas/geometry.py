"""Pydantic schemas for geometry documents and responses."""

from typing import Annotated

from pydantic import BaseModel, Field, field_validator

Position = Annotated[list[float], Field(min_length=3, max_length=3)]


class GeometryConfig(BaseModel):
    """Geometry document: ``{"name": str, "mics": [[x, y, z], ...]}`` in meters."""

    name: str = Field(default="custom", min_length=1)
    mics: list[Position] = Field(..., min_length=2)

    @field_validator("name")
    @classmethod
    def strip_name(cls, v: str) -> str:
        return v.strip()


class PairEntry(BaseModel):
    """One pair, 1-based microphone indices."""

    index: int
    u: int
    v: int
    d: list[float]
    max_delay: int = Field(..., description="k * ceil(fs * |d| / c), interpolated samples")


class DelayBounds(BaseModel):
    """Largest TDoA table entry each pair can hold, in interpolated samples."""

    array: str
    aperture_m: float
    k: int
    max_delays: list[int]


class ArrayResponse(BaseModel):
    name: str
    mics: list[list[float]]
    aperture_m: float
    k: int
    pairs: list[PairEntry]


class GridResponse(BaseModel):
    level: int
    hemisphere: bool
    count: int
    dirs: list[list[float]] | None = None
    azimuth_elevation_deg: list[list[float]] | None = None
    bounds: DelayBounds | None = None
