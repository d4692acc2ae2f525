"""Shoebox room impulse responses by the image-source method.

Image positions along each axis are ``(1 - 2p) * (s + 2 r L)`` for
``p in {0, 1}`` and integer ``r``; such an image has undergone ``|r + p| + |r|``
reflections on that axis. Every wall reflects with ``beta = sqrt(1 - alpha)``
and every image adds a Hann-windowed sinc centred on its fractional delay,
scaled by ``beta ** reflections / (4 pi d)``.
"""

from itertools import product

import numpy as np
import structlog
from numpy.typing import ArrayLike, NDArray
from scipy import stats

from app.core.constants import FRACTIONAL_DELAY_TAPS, SABINE_CONSTANT
from app.core.exceptions import PhysicalRangeError, ValidationError
from app.simulation.models import RoomConfig

logger = structlog.get_logger(__name__)

# Images are accumulated in chunks to bound the tap matrix size
_IMAGE_CHUNK = 4096


def sabine_absorption(room: RoomConfig) -> float:
    """Uniform wall absorption ``alpha = 0.161 V / (rt60 S)``, or the override.

    Raises:
        PhysicalRangeError: if the requested RT60 is too short for the room (alpha > 1).
    """
    if room.absorption is not None:
        return room.absorption
    alpha = SABINE_CONSTANT * room.volume / (room.rt60 * room.surface)
    if alpha > 1.0:
        raise PhysicalRangeError(
            f"RT60 of {room.rt60} s is unrealizable in a {room.dims} m room "
            f"(Sabine absorption {alpha:.3f} > 1)",
            quantity="absorption",
            value=alpha,
        )
    return alpha


def reflection_coefficient(room: RoomConfig) -> float:
    return float(np.sqrt(1.0 - sabine_absorption(room)))


def rir_length(room: RoomConfig, distance: float) -> int:
    """Samples up to ``rt60`` past the direct path, plus the filter half-width."""
    direct = distance * room.fs / room.c
    return int(np.ceil(direct + room.rt60 * room.fs)) + FRACTIONAL_DELAY_TAPS // 2 + 1


def check_inside(
    room: RoomConfig, position: ArrayLike, margin: float = 0.0, name: str = "position"
) -> None:
    point = np.asarray(position, dtype=np.float64)
    dims = np.asarray(room.dims)
    if point.shape != (3,) or np.any(point < margin) or np.any(point > dims - margin):
        raise ValidationError(
            f"{name} {point.tolist()} is not inside the room with a {margin} m wall margin",
            field=name,
        )


def _axis_images(
    source: float, length: float, max_order: int
) -> tuple[NDArray[np.float64], NDArray[np.int64]]:
    """Image coordinates and reflection counts along one axis."""
    coords: list[float] = []
    orders: list[int] = []
    for p, r in product((0, 1), range(-max_order, max_order + 1)):
        order = abs(r + p) + abs(r)
        if order <= max_order:
            coords.append((1 - 2 * p) * (source + 2 * r * length))
            orders.append(order)
    return np.array(coords), np.array(orders, dtype=np.int64)


def image_sources(
    room: RoomConfig, src: ArrayLike
) -> tuple[NDArray[np.float64], NDArray[np.int64]]:
    """All image positions (K x 3) and their total reflection counts (K)."""
    source = np.asarray(src, dtype=np.float64)
    per_axis = [_axis_images(source[a], room.dims[a], room.max_order) for a in range(3)]
    grids = np.meshgrid(*(coords for coords, _ in per_axis), indexing="ij")
    order_grids = np.meshgrid(*(orders for _, orders in per_axis), indexing="ij")
    positions = np.stack([g.ravel() for g in grids], axis=1)
    orders = sum(g.ravel() for g in order_grids)
    return positions, np.asarray(orders, dtype=np.int64)


def compute_rir(
    room: RoomConfig, src: ArrayLike, mic: ArrayLike, length: int | None = None
) -> NDArray[np.float64]:
    """Impulse response from ``src`` to ``mic`` (both inside the room).

    Args:
        room: Room geometry, RT60 and reflection order cap.
        src: Source position (m).
        mic: Microphone position (m).
        length: Output length in samples; defaults to ``rir_length``.

    Returns:
        Real impulse response of ``length`` samples.
    """
    check_inside(room, src, name="source")
    check_inside(room, mic, name="microphone")
    beta = reflection_coefficient(room)
    receiver = np.asarray(mic, dtype=np.float64)

    if length is None:
        length = rir_length(room, float(np.linalg.norm(np.asarray(src) - receiver)))

    positions, orders = image_sources(room, src)
    distances = np.linalg.norm(positions - receiver[None, :], axis=1)
    gains = np.power(beta, orders) / (4.0 * np.pi * distances)
    delays = distances * room.fs / room.c

    live = (gains != 0.0) & (delays < length + FRACTIONAL_DELAY_TAPS // 2)
    gains, delays = gains[live], delays[live]

    half = FRACTIONAL_DELAY_TAPS // 2
    offsets = np.arange(-half, half + 1)
    rir = np.zeros(length)
    for start in range(0, delays.shape[0], _IMAGE_CHUNK):
        chunk_delays = delays[start : start + _IMAGE_CHUNK]
        chunk_gains = gains[start : start + _IMAGE_CHUNK]
        taps = np.round(chunk_delays)[:, None].astype(np.int64) + offsets[None, :]
        t = taps - chunk_delays[:, None]
        window = 0.5 * (1.0 + np.cos(2.0 * np.pi * t / (FRACTIONAL_DELAY_TAPS + 1)))
        weights = chunk_gains[:, None] * window * np.sinc(t)
        inside = (taps >= 0) & (taps < length)
        rir += np.bincount(taps[inside], weights=weights[inside], minlength=length)

    logger.debug(
        "rir_computed",
        images=int(live.sum()),
        length=length,
        absorption=round(1.0 - beta**2, 4),
    )
    return rir


def energy_decay_curve(rir: ArrayLike) -> NDArray[np.float64]:
    """Schroeder backward-integrated energy in dB relative to the total."""
    energy = np.asarray(rir, dtype=np.float64) ** 2
    remaining = np.cumsum(energy[::-1])[::-1]
    with np.errstate(divide="ignore"):
        return np.asarray(10.0 * np.log10(remaining / remaining[0]))


def schroeder_rt60(
    rir: ArrayLike, fs: int, start_db: float = -5.0, stop_db: float = -25.0
) -> float:
    """RT60 extrapolated from a linear fit of the decay curve between two levels."""
    curve = energy_decay_curve(rir)
    span = np.flatnonzero((curve <= start_db) & (curve >= stop_db))
    if span.size < 2:
        raise ValidationError("Impulse response decays too little for an RT60 fit", field="rir")
    fit = stats.linregress(span / fs, curve[span])
    if fit.slope >= 0:
        raise ValidationError("Impulse response energy does not decay", field="rir")
    return float(-60.0 / fit.slope)
