"""Wall-clock benchmark of block localization on random PHAT spectra."""

import platform
import time

import numpy as np
import scipy
import structlog

from app.bench.models import BenchReport, MethodTiming, OpCounts
from app.bench.services.op_counts import count_ops
from app.core.config import settings
from app.core.constants import MIN_COMPARABLE_REPETITIONS
from app.core.exceptions import ValidationError
from app.gcc.services import random_phat_spectra
from app.geometry.models import MicArray
from app.localization.models import Method, OpCounter, resolve_methods
from app.localization.services import LocalizationSetup, PipelineConfig

logger = structlog.get_logger(__name__)

# Distinct random payloads cycled through the timed repetitions
_PAYLOADS = 8


def machine_label() -> str:
    return (
        f"{platform.system()} {platform.machine()} {platform.processor() or ''}".strip()
        + f" / Python {platform.python_version()}"
        + f" / numpy {np.__version__} / scipy {scipy.__version__}"
    )


def counts_for_setup(setup: LocalizationSetup) -> OpCounts:
    return count_ops(len(setup.pairs), setup.plan.q, setup.config.n, len(setup.grid))


class BenchService:
    """Times SRP and SMP block localization on a fixed array and grid."""

    def __init__(self, setup: LocalizationSetup, seed: int = 0) -> None:
        self.setup = setup
        rng = np.random.default_rng(seed)
        self.payloads = [
            random_phat_spectra(len(setup.pairs), setup.config.n, rng) for _ in range(_PAYLOADS)
        ]
        self.counts = counts_for_setup(setup)

    def measure_counters(self, method: Method) -> OpCounter:
        """Runtime counters of one instrumented block."""
        counter = OpCounter()
        self.setup.localizer.locate(self.payloads[0], method, counter)
        return counter.per_block()

    def time_method(self, method: Method, repetitions: int, warmup: int) -> MethodTiming:
        localizer = self.setup.localizer
        for i in range(warmup):
            localizer.locate(self.payloads[i % _PAYLOADS], method)

        samples = np.empty(repetitions)
        for i in range(repetitions):
            payload = self.payloads[i % _PAYLOADS]
            start = time.perf_counter()
            localizer.locate(payload, method)
            samples[i] = (time.perf_counter() - start) * 1000.0

        counters = self.measure_counters(method)
        expected = self.counts.of(method)
        matches = expected.matches(counters)
        if not matches:
            logger.error(
                "bench_counter_mismatch",
                method=str(method),
                expected=vars(expected),
                measured=vars(counters),
            )
        return MethodTiming(
            method=method,
            mean_ms=float(samples.mean()),
            std_ms=float(samples.std(ddof=1)) if repetitions > 1 else 0.0,
            repetitions=repetitions,
            counters=counters,
            counters_match=matches,
        )

    @staticmethod
    def run_bench(
        array: MicArray,
        method: str | Method = "both",
        repetitions: int | None = None,
        config: PipelineConfig | None = None,
        warmup: int | None = None,
        seed: int = 0,
    ) -> BenchReport:
        """Mean/stddev block time per method after warm-up, with counter cross-check.

        Raises:
            ValidationError: if repetitions < 1 or warmup < 0.
        """
        repetitions = settings.BENCH_REPETITIONS if repetitions is None else repetitions
        warmup = settings.BENCH_WARMUP if warmup is None else warmup
        if repetitions < 1:
            raise ValidationError(
                f"Repetitions must be at least 1, got {repetitions}", field="repetitions"
            )
        if warmup < 0:
            raise ValidationError(f"Warm-up must be >= 0, got {warmup}", field="warmup")
        if repetitions < MIN_COMPARABLE_REPETITIONS:
            logger.warning(
                "bench_few_repetitions",
                repetitions=repetitions,
                minimum=MIN_COMPARABLE_REPETITIONS,
            )

        config = config or PipelineConfig.from_settings()
        setup = LocalizationSetup.build(array, config)
        service = BenchService(setup, seed)
        timings = {
            m: service.time_method(m, repetitions, warmup) for m in resolve_methods(method)
        }

        report = BenchReport(
            array=array.name,
            machine=machine_label(),
            warmup=warmup,
            repetitions=repetitions,
            threads=config.threads,
            counts=service.counts,
            timings=timings,
            config={
                "fs": config.fs,
                "n": config.n,
                "k": config.k,
                "grid_level": config.grid_level,
                "epsilon": config.epsilon,
                "seed": seed,
            },
        )
        logger.info(
            "bench_finished",
            array=array.name,
            mean_ms={str(m): round(t.mean_ms, 4) for m, t in timings.items()},
            time_ratio=report.time_ratio,
        )
        return report
