"""Offline TDoA lookup table."""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from app.core.arrays import readonly


@dataclass(frozen=True)
class TdoaTable:
    """P x I integer lookup delays ``round(k * fs/c * d_p . u_i)``.

    Entries are in interpolated samples; the correlation index for an entry
    is the entry modulo ``k * N``.
    """

    delays: NDArray[np.int64]
    k: int
    fs: float
    c: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "delays", readonly(self.delays, np.int64))

    @property
    def pair_count(self) -> int:
        return int(self.delays.shape[0])

    @property
    def direction_count(self) -> int:
        return int(self.delays.shape[1])

    def lookup_indices(self, length: int) -> NDArray[np.int64]:
        """Circular indices into correlation buffers of ``length`` samples."""
        return np.mod(self.delays, length)
