"""Block localization of multichannel signals and WAV files."""

from collections.abc import Iterator
from dataclasses import dataclass
from pathlib import Path
from typing import BinaryIO

import numpy as np
import structlog
from numpy.typing import NDArray

from app.core.config import settings
from app.gcc.services import iter_cross_spectra, phat, read_wav, stft
from app.geometry.models import DoaGrid, MicArray, PairSet, TdoaTable
from app.geometry.services import build_doa_grid, build_tdoa_table, enumerate_pairs
from app.localization.models import LocalizationResult, Method, OpCounter
from app.localization.services.localizer import Localizer
from app.merging.models import MergePlan
from app.merging.services import MergePlanService

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class PipelineConfig:
    """STFT, block and search parameters of one localization run."""

    fs: int
    c: float
    n: int
    hop: int
    k: int
    block: int
    grid_level: int
    window: str
    epsilon: float
    floor: float
    threads: int = 1

    @classmethod
    def from_settings(cls, **overrides: object) -> "PipelineConfig":
        values: dict[str, object] = {
            "fs": settings.SAMPLE_RATE,
            "c": settings.SPEED_OF_SOUND,
            "n": settings.FRAME_SIZE,
            "hop": None,
            "k": settings.INTERPOLATION_FACTOR,
            "block": settings.BLOCK_FRAMES,
            "grid_level": settings.GRID_LEVEL,
            "window": settings.WINDOW,
            "epsilon": settings.MERGE_EPSILON,
            "floor": settings.PHAT_FLOOR,
            "threads": 1,
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        if values["hop"] is None:
            n = int(values["n"])  # type: ignore[call-overload]
            values["hop"] = settings.HOP_SIZE or n // 2
        return cls(**values)  # type: ignore[arg-type]

    @property
    def block_samples(self) -> int:
        """Samples spanned by one accumulation block."""
        return self.n + (self.block - 1) * self.hop


@dataclass(frozen=True)
class LocalizationSetup:
    """Offline state shared by every block: pairs, grid, table, plan, localizer."""

    array: MicArray
    pairs: PairSet
    grid: DoaGrid
    table: TdoaTable
    plan: MergePlan
    localizer: Localizer
    config: PipelineConfig

    @classmethod
    def build(cls, array: MicArray, config: PipelineConfig) -> "LocalizationSetup":
        pairs = enumerate_pairs(array)
        grid = build_doa_grid(config.grid_level, True)
        table = build_tdoa_table(pairs, grid, config.fs, config.c, config.k)
        plan = MergePlanService.build_merge_plan(pairs, config.epsilon)
        localizer = Localizer(grid, table, plan, frame_size=config.n, threads=config.threads)
        logger.info(
            "localization_setup_built",
            array=array.name,
            pairs=len(pairs),
            groups=plan.q,
            directions=len(grid),
        )
        return cls(array, pairs, grid, table, plan, localizer, config)


def locate_blocks(
    signal: NDArray[np.float64],
    setup: LocalizationSetup,
    method: Method | str,
    counter: OpCounter | None = None,
) -> Iterator[LocalizationResult]:
    """One result per complete block of ``config.block`` STFT frames."""
    config = setup.config
    frames = stft(signal, config.n, config.hop, config.window)
    for cross in iter_cross_spectra(frames, setup.pairs, config.block):
        spectra = phat(cross, config.floor)
        yield setup.localizer.locate(
            spectra,
            method,
            counter,
            first_frame=cross.first_frame,
            frames=cross.frames_accumulated,
        )


def locate_wav(
    source: str | Path | BinaryIO,
    setup: LocalizationSetup,
    method: Method | str,
) -> list[LocalizationResult]:
    signal = read_wav(source, setup.array.count, setup.config.fs)
    results = list(locate_blocks(signal, setup, method))
    logger.info("wav_localized", method=str(method), blocks=len(results))
    return results
