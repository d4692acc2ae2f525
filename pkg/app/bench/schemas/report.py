"""JSON and CSV documents for operation counts and benchmark reports."""

import csv
import io
from typing import Any

from pydantic import BaseModel

from app.bench.models import BenchReport, MethodCounts, OpCounts

TIMING_CSV_COLUMNS: tuple[str, ...] = (
    "array",
    "method",
    "mean_ms",
    "std_ms",
    "repetitions",
    "iffts",
    "lookups",
    "additions",
    "counters_match",
    "machine",
)


class CountsDocument(BaseModel):
    iffts: int
    lookups: int
    additions: int

    @classmethod
    def from_counts(cls, counts: MethodCounts) -> "CountsDocument":
        return cls(iffts=counts.iffts, lookups=counts.lookups, additions=counts.additions)


class DeltaDocument(BaseModel):
    """Reductions of SMP relative to SRP, as fractions of the SRP cost."""

    iffts: float
    lookups: float
    additions: float


class OpCountsDocument(BaseModel):
    array: str | None = None
    pairs: int
    groups: int
    n: int
    directions: int
    srp: CountsDocument
    smp: CountsDocument
    delta: DeltaDocument

    @classmethod
    def from_counts(cls, counts: OpCounts, array: str | None = None) -> "OpCountsDocument":
        return cls(
            array=array,
            pairs=counts.pairs,
            groups=counts.groups,
            n=counts.frame_size,
            directions=counts.directions,
            srp=CountsDocument.from_counts(counts.srp),
            smp=CountsDocument.from_counts(counts.smp),
            delta=DeltaDocument(
                iffts=counts.delta_iffts,
                lookups=counts.delta_lookups,
                additions=counts.delta_additions,
            ),
        )

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["metric", "srp", "smp", "delta"])
        for metric in ("iffts", "lookups", "additions"):
            writer.writerow(
                [
                    metric,
                    getattr(self.srp, metric),
                    getattr(self.smp, metric),
                    f"{getattr(self.delta, metric):.4f}",
                ]
            )
        return buffer.getvalue()


class TimingDocument(BaseModel):
    method: str
    mean_ms: float
    std_ms: float
    repetitions: int
    counters: CountsDocument
    counters_match: bool


class BenchReportDocument(BaseModel):
    array: str
    machine: str
    warmup: int
    repetitions: int
    comparable: bool
    threads: int
    time_ratio: float | None
    counts: OpCountsDocument
    timings: list[TimingDocument]
    config: dict[str, Any]

    @classmethod
    def from_report(cls, report: BenchReport) -> "BenchReportDocument":
        return cls(
            array=report.array,
            machine=report.machine,
            warmup=report.warmup,
            repetitions=report.repetitions,
            comparable=report.meets_min_repetitions,
            threads=report.threads,
            time_ratio=report.time_ratio,
            counts=OpCountsDocument.from_counts(report.counts, report.array),
            timings=[
                TimingDocument(
                    method=str(method),
                    mean_ms=timing.mean_ms,
                    std_ms=timing.std_ms,
                    repetitions=timing.repetitions,
                    counters=CountsDocument(
                        iffts=timing.counters.iffts,
                        lookups=timing.counters.lookups,
                        additions=timing.counters.additions,
                    ),
                    counters_match=timing.counters_match,
                )
                for method, timing in report.timings.items()
            ],
            config=report.config,
        )

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(TIMING_CSV_COLUMNS)
        for timing in self.timings:
            writer.writerow(
                [
                    self.array,
                    timing.method,
                    f"{timing.mean_ms:.6f}",
                    f"{timing.std_ms:.6f}",
                    timing.repetitions,
                    timing.counters.iffts,
                    timing.counters.lookups,
                    timing.counters.additions,
                    timing.counters_match,
                    self.machine,
                ]
            )
        return buffer.getvalue()
