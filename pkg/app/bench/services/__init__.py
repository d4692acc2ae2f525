from app.bench.services.bench_service import (
    BenchService,
    counts_for_setup,
    machine_label,
)
from app.bench.services.op_counts import count_ops, counts_for_array

__all__ = [
    "BenchService",
    "count_ops",
    "counts_for_array",
    "counts_for_setup",
    "machine_label",
]
