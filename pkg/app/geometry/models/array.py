"""Microphone array and pair enumeration types."""

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from app.core.arrays import readonly
from app.core.constants import MIN_MIC_SEPARATION_M
from app.core.exceptions import ValidationError


@dataclass(frozen=True)
class MicArray:
    """Ordered microphone positions (M x 3, meters)."""

    name: str
    mics: NDArray[np.float64]

    def __post_init__(self) -> None:
        mics = np.asarray(self.mics, dtype=np.float64)
        if mics.ndim != 2 or mics.shape[1] != 3:
            raise ValidationError("Microphone positions must be an M x 3 list", field="mics")
        if mics.shape[0] < 2:
            raise ValidationError(
                f"An array needs at least 2 microphones, got {mics.shape[0]}", field="mics"
            )
        if not np.all(np.isfinite(mics)):
            raise ValidationError("Microphone positions must be finite", field="mics")

        gaps = np.linalg.norm(mics[:, None, :] - mics[None, :, :], axis=-1)
        upper = np.triu_indices(mics.shape[0], k=1)
        close = np.flatnonzero(gaps[upper] <= MIN_MIC_SEPARATION_M)
        if close.size:
            u, v = upper[0][close[0]], upper[1][close[0]]
            raise ValidationError(
                f"Microphones {u + 1} and {v + 1} coincide", field="mics"
            )
        object.__setattr__(self, "mics", readonly(mics, np.float64))

    @property
    def count(self) -> int:
        return int(self.mics.shape[0])

    @property
    def aperture(self) -> float:
        """Largest distance between any two microphones (m)."""
        gaps = np.linalg.norm(self.mics[:, None, :] - self.mics[None, :, :], axis=-1)
        return float(gaps.max())

    def translated(self, offset: NDArray[np.float64]) -> NDArray[np.float64]:
        """Absolute microphone positions for an array centred at ``offset``."""
        return self.mics + np.asarray(offset, dtype=np.float64)[None, :]


@dataclass(frozen=True)
class PairSet:
    """Microphone pairs in lexicographic (u, v) order with u < v.

    ``d[p] = x_u - x_v`` is the difference vector of pair ``p``.
    """

    u: NDArray[np.int64]
    v: NDArray[np.int64]
    d: NDArray[np.float64]
    mic_count: int = field(default=0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "u", readonly(self.u, np.int64))
        object.__setattr__(self, "v", readonly(self.v, np.int64))
        object.__setattr__(self, "d", readonly(self.d, np.float64))

    def __len__(self) -> int:
        return int(self.u.shape[0])

    @property
    def norms(self) -> NDArray[np.float64]:
        return np.asarray(np.linalg.norm(self.d, axis=1))

    def subset(self, indices: list[int]) -> "PairSet":
        """Pairs at ``indices`` in the given order."""
        idx = np.asarray(indices, dtype=np.int64)
        return PairSet(u=self.u[idx], v=self.v[idx], d=self.d[idx], mic_count=self.mic_count)
