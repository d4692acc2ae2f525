"""Operation count and benchmark report types."""

from dataclasses import dataclass, field

from app.core.constants import MIN_COMPARABLE_REPETITIONS
from app.localization.models import Method, OpCounter


@dataclass(frozen=True)
class MethodCounts:
    iffts: int
    lookups: int
    additions: int

    def matches(self, counter: OpCounter) -> bool:
        """True when a per-block runtime counter equals these counts."""
        return (
            counter.iffts == self.iffts
            and counter.lookups == self.lookups
            and counter.additions == self.additions
        )


@dataclass(frozen=True)
class OpCounts:
    """Per-block costs of both methods and SMP's reduction relative to SRP."""

    pairs: int
    groups: int
    frame_size: int
    directions: int
    srp: MethodCounts
    smp: MethodCounts

    def of(self, method: Method) -> MethodCounts:
        return self.srp if method is Method.SRP else self.smp

    @staticmethod
    def _reduction(before: int, after: int) -> float:
        return (before - after) / before if before else 0.0

    @property
    def delta_iffts(self) -> float:
        return self._reduction(self.srp.iffts, self.smp.iffts)

    @property
    def delta_lookups(self) -> float:
        return self._reduction(self.srp.lookups, self.smp.lookups)

    @property
    def delta_additions(self) -> float:
        return self._reduction(self.srp.additions, self.smp.additions)


@dataclass(frozen=True)
class MethodTiming:
    """Wall time per localization block in milliseconds."""

    method: Method
    mean_ms: float
    std_ms: float
    repetitions: int
    counters: OpCounter
    counters_match: bool


@dataclass(frozen=True)
class BenchReport:
    array: str
    machine: str
    warmup: int
    repetitions: int
    threads: int
    counts: OpCounts
    timings: dict[Method, MethodTiming]
    config: dict[str, object] = field(default_factory=dict)

    @property
    def meets_min_repetitions(self) -> bool:
        return self.repetitions >= MIN_COMPARABLE_REPETITIONS

    @property
    def time_ratio(self) -> float | None:
        """SMP mean time as a fraction of SRP mean time."""
        if Method.SRP not in self.timings or Method.SMP not in self.timings:
            return None
        return self.timings[Method.SMP].mean_ms / self.timings[Method.SRP].mean_ms
