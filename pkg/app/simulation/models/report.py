"""Campaign records and reports."""

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from app.localization.models import Method


@dataclass(frozen=True)
class MethodOutcome:
    """Prediction of one method for one trial."""

    direction: NDArray[np.float64]
    index: int
    energy: float
    error_deg: float
    block: int


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    rt60: float
    array_center: NDArray[np.float64]
    source_pos: NDArray[np.float64]
    truth: NDArray[np.float64]
    outcomes: dict[Method, MethodOutcome]

    @property
    def agrees(self) -> bool:
        """True when every method picked the same grid index."""
        return len({outcome.index for outcome in self.outcomes.values()}) <= 1


@dataclass(frozen=True)
class SimReport:
    """Per-trial records and the mean angular error of each method."""

    method: str
    array: str
    seed: int
    trials: tuple[TrialRecord, ...]
    mae_deg: dict[Method, float]
    config: dict[str, object] = field(default_factory=dict)

    @property
    def agreement(self) -> float:
        """Fraction of trials on which all methods picked the same index."""
        if not self.trials:
            return 1.0
        return float(np.mean([record.agrees for record in self.trials]))

    def errors(self, method: Method) -> NDArray[np.float64]:
        return np.array([record.outcomes[method].error_deg for record in self.trials])
