"""Localization result and instrumentation types."""

from dataclasses import dataclass, field
from enum import StrEnum

import numpy as np
from numpy.typing import NDArray

from app.core.arrays import readonly
from app.core.exceptions import ValidationError


class Method(StrEnum):
    SRP = "srp"
    SMP = "smp"


@dataclass(frozen=True)
class MergedSpectra:
    """Per-group merged spectra S_q[f] (Q x (N/2 + 1))."""

    values: NDArray[np.complex128]
    frame_size: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", readonly(self.values, np.complex128))

    @property
    def group_count(self) -> int:
        return int(self.values.shape[0])


@dataclass(frozen=True)
class LocalizationResult:
    """Most powerful grid direction of one block."""

    direction: NDArray[np.float64]
    index: int
    energy: float
    method: Method
    first_frame: int = 0
    frames: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "direction", readonly(self.direction, np.float64))

    @property
    def azimuth_deg(self) -> float:
        return float(np.degrees(np.arctan2(self.direction[1], self.direction[0])))

    @property
    def elevation_deg(self) -> float:
        return float(np.degrees(np.arcsin(np.clip(self.direction[2], -1.0, 1.0))))


@dataclass
class OpCounter:
    """Runtime counters of inverse transforms, lookups and real additions."""

    iffts: int = 0
    lookups: int = 0
    additions: int = 0
    blocks: int = field(default=0)

    def reset(self) -> None:
        self.iffts = self.lookups = self.additions = self.blocks = 0

    def per_block(self) -> "OpCounter":
        blocks = max(self.blocks, 1)
        return OpCounter(
            iffts=self.iffts // blocks,
            lookups=self.lookups // blocks,
            additions=self.additions // blocks,
            blocks=1,
        )


def resolve_methods(method: "str | Method") -> tuple[Method, ...]:
    """``"both"`` expands to SRP then SMP."""
    if str(method) == "both":
        return (Method.SRP, Method.SMP)
    try:
        return (Method(method),)
    except ValueError as e:
        raise ValidationError(
            f"Method must be one of srp, smp, both; got {method}", field="method"
        ) from e
