"""Localization accuracy campaigns over random reverberant trials."""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from pathlib import Path

import numpy as np
import structlog
from numpy.typing import ArrayLike

from app.core.constants import CAMPAIGN_RT60_RANGE, DEFAULT_ROOM_DIMS_M
from app.core.exceptions import ValidationError
from app.gcc.services import write_wav
from app.geometry.models import MicArray
from app.geometry.services import angular_error_deg
from app.localization.models import LocalizationResult, Method, resolve_methods
from app.localization.services import LocalizationSetup, PipelineConfig, locate_blocks
from app.simulation.models import MethodOutcome, RoomConfig, SimReport, TrialRecord
from app.simulation.services.trials import sample_setup, simulate_trial

logger = structlog.get_logger(__name__)


def mean_angular_error(predictions: ArrayLike, truths: ArrayLike) -> float:
    """``(1/L) sum arccos(u*_l . u_l)`` in degrees."""
    errors = np.atleast_1d(angular_error_deg(predictions, truths))
    if errors.size == 0:
        raise ValidationError("No trials to average", field="trials")
    return float(np.mean(errors))


def strongest_block(results: list[LocalizationResult]) -> tuple[int, LocalizationResult]:
    """First block attaining the largest E_max."""
    if not results:
        raise ValidationError("Trial signal produced no complete block", field="duration")
    block = int(np.argmax([result.energy for result in results]))
    return block, results[block]


@dataclass(frozen=True)
class CampaignContext:
    """Everything a worker needs to run one trial."""

    setup: LocalizationSetup
    methods: tuple[Method, ...]
    seed: int
    dims: tuple[float, float, float]
    rt60_range: tuple[float, float]
    max_order: int | None
    absorption: float | None
    duration: float | None
    dump_dir: Path | None


class CampaignService:
    """Accuracy campaigns; each trial depends only on (seed, trial index)."""

    @staticmethod
    def run_trial(context: CampaignContext, index: int) -> TrialRecord:
        """One trial; its RNG stream depends only on (seed, index)."""
        rng = np.random.default_rng([context.seed, index])
        config = context.setup.config
        room_options: dict[str, object] = {}
        if context.max_order is not None:
            room_options["max_order"] = context.max_order
        room = RoomConfig(
            dims=context.dims,
            rt60=float(rng.uniform(*context.rt60_range)),
            fs=config.fs,
            c=config.c,
            absorption=context.absorption,
            **room_options,  # type: ignore[arg-type]
        )
        trial_setup = sample_setup(room, rng)
        trial = simulate_trial(
            room,
            context.setup.array,
            trial_setup,
            context.duration,
            block_samples=config.block_samples,
        )
        if context.dump_dir is not None:
            write_wav(context.dump_dir / f"trial_{index:04d}.wav", trial.signal, config.fs)

        outcomes: dict[Method, MethodOutcome] = {}
        for method in context.methods:
            block, best = strongest_block(list(locate_blocks(trial.signal, context.setup, method)))
            outcomes[method] = MethodOutcome(
                direction=best.direction,
                index=best.index,
                energy=best.energy,
                error_deg=float(angular_error_deg(best.direction, trial_setup.truth)),
                block=block,
            )

        logger.debug(
            "trial_localized",
            trial=index,
            rt60=round(room.rt60, 3),
            errors={str(m): round(o.error_deg, 2) for m, o in outcomes.items()},
        )
        return TrialRecord(
            trial=index,
            rt60=room.rt60,
            array_center=trial_setup.array_center,
            source_pos=trial_setup.source_pos,
            truth=trial_setup.truth,
            outcomes=outcomes,
        )

    @staticmethod
    def run_campaign(
        array: MicArray,
        method: str | Method,
        trials: int,
        seed: int,
        config: PipelineConfig | None = None,
        dims: tuple[float, float, float] = DEFAULT_ROOM_DIMS_M,
        rt60_range: tuple[float, float] = CAMPAIGN_RT60_RANGE,
        max_order: int | None = None,
        absorption: float | None = None,
        duration: float | None = None,
        workers: int = 1,
        dump_dir: Path | None = None,
    ) -> SimReport:
        """Simulate ``trials`` random rooms and placements and report the MAE per method.

        RT60 is drawn uniformly from ``rt60_range`` for each trial. Serial and
        parallel runs produce identical reports.
        """
        if trials < 1:
            raise ValidationError(f"Trial count must be at least 1, got {trials}", field="trials")
        low, high = rt60_range
        if not 0 < low <= high:
            raise ValidationError(f"Invalid RT60 range {rt60_range}", field="rt60_range")

        methods = resolve_methods(method)
        config = config or PipelineConfig.from_settings()
        context = CampaignContext(
            setup=LocalizationSetup.build(array, config),
            methods=methods,
            seed=seed,
            dims=dims,
            rt60_range=(low, high),
            max_order=max_order,
            absorption=absorption,
            duration=duration,
            dump_dir=dump_dir,
        )
        if dump_dir is not None:
            dump_dir.mkdir(parents=True, exist_ok=True)

        logger.info(
            "campaign_started",
            array=array.name,
            methods=[str(m) for m in methods],
            trials=trials,
            seed=seed,
            workers=workers,
        )
        run = partial(CampaignService.run_trial, context)
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                records = tuple(pool.map(run, range(trials)))
        else:
            records = tuple(run(index) for index in range(trials))

        truths = np.array([record.truth for record in records])
        mae = {
            m: mean_angular_error(
                np.array([record.outcomes[m].direction for record in records]), truths
            )
            for m in methods
        }
        report = SimReport(
            method=str(method),
            array=array.name,
            seed=seed,
            trials=records,
            mae_deg=mae,
            config={
                "fs": config.fs,
                "c": config.c,
                "n": config.n,
                "hop": config.hop,
                "k": config.k,
                "block": config.block,
                "grid_level": config.grid_level,
                "dims": list(dims),
                "rt60_range": [low, high],
                "max_order": max_order,
                "absorption": absorption,
                "duration": duration,
            },
        )
        logger.info(
            "campaign_finished",
            array=array.name,
            mae_deg={str(m): round(v, 3) for m, v in mae.items()},
            agreement=report.agreement,
        )
        return report
