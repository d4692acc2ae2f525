"""Trial placement and multichannel signal synthesis."""

import numpy as np
import scipy.signal
import structlog

from app.core.config import settings
from app.core.constants import (
    ARRAY_HEIGHT_M,
    MAX_PLACEMENT_ATTEMPTS,
    MIN_SOURCE_DISTANCE_M,
    SOURCE_HEIGHT_M,
    WALL_MARGIN_M,
)
from app.core.exceptions import ValidationError
from app.geometry.models import MicArray
from app.simulation.models import RoomConfig, TrialSetup, TrialSignal
from app.simulation.services.image_source import check_inside, compute_rir, rir_length

logger = structlog.get_logger(__name__)


def default_block_samples() -> int:
    """Samples covered by one accumulation block under the current settings."""
    return settings.FRAME_SIZE + (settings.BLOCK_FRAMES - 1) * settings.hop_size


def validate_setup(room: RoomConfig, setup: TrialSetup) -> None:
    """Both positions inside the room with the wall margin, at least 1 m apart."""
    check_inside(room, setup.array_center, WALL_MARGIN_M, name="array_center")
    check_inside(room, setup.source_pos, WALL_MARGIN_M, name="source_pos")
    if setup.distance < MIN_SOURCE_DISTANCE_M:
        raise ValidationError(
            f"Source is {setup.distance:.3f} m from the array, "
            f"closer than {MIN_SOURCE_DISTANCE_M} m",
            field="source_pos",
        )


def sample_setup(room: RoomConfig, rng: np.random.Generator) -> TrialSetup:
    """Random array (1 m high) and source (2 m high) positions.

    The noise seed of the trial is drawn from ``rng`` after the placement.
    """
    low = WALL_MARGIN_M
    high_x, high_y = room.dims[0] - WALL_MARGIN_M, room.dims[1] - WALL_MARGIN_M

    for _ in range(MAX_PLACEMENT_ATTEMPTS):
        center = np.array([rng.uniform(low, high_x), rng.uniform(low, high_y), ARRAY_HEIGHT_M])
        source = np.array([rng.uniform(low, high_x), rng.uniform(low, high_y), SOURCE_HEIGHT_M])
        if np.linalg.norm(source - center) >= MIN_SOURCE_DISTANCE_M:
            seed = int(rng.integers(0, 2**63 - 1))
            setup = TrialSetup.from_positions(center, source, seed)
            validate_setup(room, setup)
            return setup

    raise ValidationError(
        f"Could not place a source {MIN_SOURCE_DISTANCE_M} m from the array "
        f"in a {room.dims} m room",
        field="dims",
    )


def simulate_trial(
    room: RoomConfig,
    array: MicArray,
    setup: TrialSetup,
    duration: float | None = None,
    block_samples: int | None = None,
) -> TrialSignal:
    """White Gaussian noise at the source, convolved with one RIR per microphone.

    Args:
        room: Room configuration.
        array: Array geometry relative to its centre.
        setup: Placement and noise seed.
        duration: Signal length in seconds. Defaults to settings.SIM_DURATION_SECONDS.
        block_samples: Shortest acceptable signal. Defaults to one accumulation block.

    Returns:
        TrialSignal with an M x L signal, deterministic given ``setup.seed``.
    """
    duration = settings.SIM_DURATION_SECONDS if duration is None else duration
    block_samples = default_block_samples() if block_samples is None else block_samples
    samples = int(round(duration * room.fs))
    if samples < block_samples:
        raise ValidationError(
            f"Duration of {duration} s ({samples} samples) is shorter than one "
            f"accumulation block ({block_samples} samples)",
            field="duration",
        )

    validate_setup(room, setup)
    mics = array.translated(setup.array_center)
    for position in mics:
        check_inside(room, position, name="microphone")

    farthest = float(np.max(np.linalg.norm(mics - setup.source_pos[None, :], axis=1)))
    length = rir_length(room, farthest)

    noise = np.random.default_rng(setup.seed).standard_normal(samples)
    signal = np.empty((array.count, samples))
    for m, position in enumerate(mics):
        rir = compute_rir(room, setup.source_pos, position, length)
        signal[m] = scipy.signal.fftconvolve(noise, rir)[:samples]

    logger.debug(
        "trial_simulated",
        mics=array.count,
        samples=samples,
        rt60=room.rt60,
        distance=round(setup.distance, 3),
    )
    return TrialSignal(signal=signal, setup=setup, room=room)
