"""Merge plan types."""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray


@dataclass(frozen=True)
class MergeMember:
    pair: int
    sign: int


@dataclass(frozen=True)
class MergeGroup:
    """Parallel, equidistant pairs sharing one correlation.

    ``ref`` is the lowest member pair index; its own sign is +1.
    """

    ref: int
    members: tuple[MergeMember, ...]

    def __len__(self) -> int:
        return len(self.members)

    @property
    def pairs(self) -> tuple[int, ...]:
        return tuple(member.pair for member in self.members)


@dataclass(frozen=True)
class MergePlan:
    groups: tuple[MergeGroup, ...]
    epsilon: float
    pair_count: int

    def __len__(self) -> int:
        return len(self.groups)

    @property
    def q(self) -> int:
        return len(self.groups)

    @property
    def refs(self) -> NDArray[np.int64]:
        return np.array([group.ref for group in self.groups], dtype=np.int64)

    def reordered(self, order: list[int]) -> "MergePlan":
        """Same groups in a different order (energies are order independent)."""
        return MergePlan(
            groups=tuple(self.groups[i] for i in order),
            epsilon=self.epsilon,
            pair_count=self.pair_count,
        )


@dataclass(frozen=True)
class PlanViolation:
    group: int
    pair: int
    direction: int
    expected: int
    actual: int


@dataclass(frozen=True)
class PlanValidation:
    """Outcome of checking ``delays[p][i] == sign * delays[ref][i]`` exhaustively."""

    valid: bool
    checked: int
    violation: PlanViolation | None = None
