"""Discrete DoA search grid."""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from app.core.arrays import readonly


@dataclass(frozen=True)
class DoaGrid:
    """Ordered unit vectors u_i (I x 3)."""

    dirs: NDArray[np.float64]
    level: int
    hemisphere: bool

    def __post_init__(self) -> None:
        object.__setattr__(self, "dirs", readonly(self.dirs, np.float64))

    def __len__(self) -> int:
        return int(self.dirs.shape[0])

    @property
    def count(self) -> int:
        return len(self)

    def azimuth_elevation_deg(self) -> NDArray[np.float64]:
        """Azimuth/elevation pairs in degrees for every direction (I x 2)."""
        x, y, z = self.dirs[:, 0], self.dirs[:, 1], self.dirs[:, 2]
        azimuth = np.degrees(np.arctan2(y, x))
        elevation = np.degrees(np.arcsin(np.clip(z, -1.0, 1.0)))
        return np.stack([azimuth, elevation], axis=1)
