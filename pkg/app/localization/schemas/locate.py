"""Per-block localization rows."""

from pydantic import BaseModel

from app.localization.models import LocalizationResult


class LocateRow(BaseModel):
    """One CSV/JSON row of the ``locate`` output."""

    block_index: int
    x: float
    y: float
    z: float
    energy: float
    azimuth_deg: float
    elevation_deg: float

    @classmethod
    def from_result(cls, block_index: int, result: LocalizationResult) -> "LocateRow":
        x, y, z = (float(value) for value in result.direction)
        return cls(
            block_index=block_index,
            x=x,
            y=y,
            z=z,
            energy=result.energy,
            azimuth_deg=result.azimuth_deg,
            elevation_deg=result.elevation_deg,
        )


class LocateResponse(BaseModel):
    array: str
    method: str
    blocks: int
    rows: list[LocateRow]
