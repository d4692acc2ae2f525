"""Direction helpers: angles of unit vectors and angular errors."""

import numpy as np
from numpy.typing import ArrayLike, NDArray

from app.core.exceptions import DimensionMismatchError


def azimuth_elevation_deg(direction: ArrayLike) -> tuple[float, float]:
    """Azimuth (from +x towards +y) and elevation (above the xy plane) in degrees."""
    x, y, z = np.asarray(direction, dtype=np.float64)
    norm = float(np.sqrt(x * x + y * y + z * z))
    elevation = np.degrees(np.arcsin(np.clip(z / norm, -1.0, 1.0))) if norm else 0.0
    return float(np.degrees(np.arctan2(y, x))), float(elevation)


def angular_error_deg(predicted: ArrayLike, truth: ArrayLike) -> NDArray[np.float64] | float:
    """``arccos(clip(predicted . truth))`` in degrees, row-wise for N x 3 inputs."""
    a = np.asarray(predicted, dtype=np.float64)
    b = np.asarray(truth, dtype=np.float64)
    if a.shape != b.shape or a.shape[-1] != 3:
        raise DimensionMismatchError(
            "Direction arrays must have matching N x 3 shapes",
            expected=list(b.shape),
            actual=list(a.shape),
        )
    dots = np.clip(np.sum(a * b, axis=-1), -1.0, 1.0)
    errors = np.degrees(np.arccos(dots))
    return float(errors) if errors.ndim == 0 else errors
