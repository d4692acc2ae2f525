from app.bench.schemas.report import (
    BenchReportDocument,
    CountsDocument,
    DeltaDocument,
    OpCountsDocument,
    TimingDocument,
)

__all__ = [
    "BenchReportDocument",
    "CountsDocument",
    "DeltaDocument",
    "OpCountsDocument",
    "TimingDocument",
]
