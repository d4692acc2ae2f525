"""Spectral and correlation types of the GCC pipeline."""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from app.core.arrays import readonly
from app.core.exceptions import DimensionMismatchError


@dataclass(frozen=True)
class SpectralFrame:
    """One STFT frame: M x (N/2 + 1) complex bins X_m[t, f]."""

    bins: NDArray[np.complex128]
    index: int
    frame_size: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "bins", readonly(self.bins, np.complex128))


@dataclass(frozen=True)
class CrossSpectra:
    """Per-pair accumulated cross-spectra C_p[f] (P x (N/2 + 1))."""

    values: NDArray[np.complex128]
    frames_accumulated: int
    first_frame: int
    frame_size: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", readonly(self.values, np.complex128))


@dataclass(frozen=True)
class PhatSpectra:
    """Unit-magnitude (or zero) spectra R_p[f] (P x (N/2 + 1))."""

    values: NDArray[np.complex128]
    frame_size: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", readonly(self.values, np.complex128))
        if self.values.ndim != 2 or self.values.shape[1] != self.frame_size // 2 + 1:
            raise DimensionMismatchError(
                "PHAT spectra must be P x (N/2 + 1)",
                expected=self.frame_size // 2 + 1,
                actual=list(self.values.shape),
            )

    @property
    def pair_count(self) -> int:
        return int(self.values.shape[0])

    @property
    def bin_count(self) -> int:
        return int(self.values.shape[1])


@dataclass(frozen=True)
class CorrelationVector:
    """Interpolated correlation r[tau] over k*N circular lags."""

    samples: NDArray[np.float64]
    k: int
    frame_size: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "samples", readonly(self.samples, np.float64))

    def __len__(self) -> int:
        return int(self.samples.shape[0])

    def at(self, lag: int) -> float:
        """Value at an interpolated lag (negative lags wrap)."""
        return float(self.samples[lag % len(self)])
