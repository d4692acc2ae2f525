from app.geometry.schemas.geometry import (
    ArrayResponse,
    DelayBounds,
    GeometryConfig,
    GridResponse,
    PairEntry,
)

__all__ = ["ArrayResponse", "DelayBounds", "GeometryConfig", "GridResponse", "PairEntry"]
