from app.bench.models.counts import BenchReport, MethodCounts, MethodTiming, OpCounts

__all__ = ["BenchReport", "MethodCounts", "MethodTiming", "OpCounts"]
