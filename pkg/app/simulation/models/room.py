"""Shoebox room and trial placement types."""

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from app.core.arrays import readonly
from app.core.config import settings
from app.core.constants import DEFAULT_ROOM_DIMS_M, MAX_RT60_SECONDS
from app.core.exceptions import ValidationError


@dataclass(frozen=True)
class RoomConfig:
    """Rectangular room with uniform wall absorption.

    ``absorption`` bypasses the Sabine inversion of ``rt60`` when set;
    ``rt60`` still sets the impulse response length.
    """

    dims: tuple[float, float, float] = DEFAULT_ROOM_DIMS_M
    rt60: float = 0.3
    fs: int = field(default_factory=lambda: settings.SAMPLE_RATE)
    c: float = field(default_factory=lambda: settings.SPEED_OF_SOUND)
    max_order: int = field(default_factory=lambda: settings.ROOM_MAX_ORDER)
    absorption: float | None = None

    def __post_init__(self) -> None:
        dims = tuple(float(value) for value in self.dims)
        if len(dims) != 3 or min(dims) <= 0:
            raise ValidationError(
                f"Room dimensions must be 3 positive lengths, got {dims}", field="dims"
            )
        if not 0 < self.rt60 <= MAX_RT60_SECONDS:
            raise ValidationError(
                f"RT60 must be in (0, {MAX_RT60_SECONDS}] s, got {self.rt60}", field="rt60"
            )
        if self.max_order < 0:
            raise ValidationError(
                f"Reflection order must be >= 0, got {self.max_order}", field="max_order"
            )
        if self.fs <= 0 or self.c <= 0:
            raise ValidationError("Sample rate and speed of sound must be positive", field="fs")
        if self.absorption is not None and not 0 < self.absorption <= 1:
            raise ValidationError(
                f"Absorption must be in (0, 1], got {self.absorption}", field="absorption"
            )
        object.__setattr__(self, "dims", dims)

    @property
    def volume(self) -> float:
        x, y, z = self.dims
        return x * y * z

    @property
    def surface(self) -> float:
        x, y, z = self.dims
        return 2.0 * (x * y + y * z + x * z)


@dataclass(frozen=True)
class TrialSetup:
    """Array centre, source position and the true DoA of one trial."""

    array_center: NDArray[np.float64]
    source_pos: NDArray[np.float64]
    truth: NDArray[np.float64]
    seed: int

    def __post_init__(self) -> None:
        for name in ("array_center", "source_pos", "truth"):
            object.__setattr__(self, name, readonly(getattr(self, name), np.float64))

    @classmethod
    def from_positions(
        cls, array_center: NDArray[np.float64], source_pos: NDArray[np.float64], seed: int
    ) -> "TrialSetup":
        source = np.asarray(source_pos, dtype=np.float64)
        offset = source - np.asarray(array_center, dtype=np.float64)
        return cls(
            array_center=array_center,
            source_pos=source_pos,
            truth=offset / np.linalg.norm(offset),
            seed=seed,
        )

    @property
    def distance(self) -> float:
        return float(np.linalg.norm(self.source_pos - self.array_center))


@dataclass(frozen=True)
class TrialSignal:
    """Simulated M x L microphone signal with its ground truth."""

    signal: NDArray[np.float64]
    setup: TrialSetup
    room: RoomConfig

    def __post_init__(self) -> None:
        object.__setattr__(self, "signal", readonly(self.signal, np.float64))

    @property
    def truth(self) -> NDArray[np.float64]:
        return self.setup.truth
