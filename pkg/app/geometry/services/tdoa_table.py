"""Offline TDoA lookup table and its export."""

import json
from pathlib import Path

import numpy as np
import structlog
from numpy.typing import NDArray

from app.core.constants import ALLOWED_INTERPOLATION_FACTORS
from app.core.exceptions import PhysicalRangeError, ValidationError
from app.geometry.models import DoaGrid, PairSet, TdoaTable

logger = structlog.get_logger(__name__)


def round_half_away(values: NDArray[np.float64]) -> NDArray[np.int64]:
    """Round to the nearest integer, ties away from zero (odd symmetric)."""
    return (np.sign(values) * np.floor(np.abs(values) + 0.5)).astype(np.int64)


def validate_interpolation_factor(k: int) -> None:
    if k not in ALLOWED_INTERPOLATION_FACTORS:
        raise ValidationError(
            f"Interpolation factor must be one of {ALLOWED_INTERPOLATION_FACTORS}, got {k}",
            field="k",
        )


def build_tdoa_table(pairs: PairSet, grid: DoaGrid, fs: float, c: float, k: int) -> TdoaTable:
    """Integer lookup delays ``round(k * (fs/c) * (d_p . u_i))`` for every pair/direction."""
    if fs <= 0:
        raise ValidationError(f"Sample rate must be positive, got {fs}", field="fs")
    if c <= 0:
        raise ValidationError(f"Speed of sound must be positive, got {c}", field="c")
    validate_interpolation_factor(k)

    d, u = pairs.d, grid.dirs
    # Element-wise products keep d.u exactly odd in d, so antiparallel pairs
    # get exactly negated entries.
    dots = (
        d[:, 0, None] * u[None, :, 0]
        + d[:, 1, None] * u[None, :, 1]
        + d[:, 2, None] * u[None, :, 2]
    )
    delays = round_half_away(k * (fs / c) * dots)
    bound = max_delay_bound(pairs, fs, c, k)
    over = np.flatnonzero(np.any(np.abs(delays) > bound[:, None], axis=1))
    if over.size:
        p = int(over[0])
        raise PhysicalRangeError(
            f"Pair {p + 1} has a delay beyond its bound of {bound[p]} samples;"
            " grid directions must be unit vectors",
            quantity="tdoa",
            value=float(np.abs(delays[p]).max()),
        )

    table = TdoaTable(delays=delays, k=k, fs=float(fs), c=float(c))
    logger.debug(
        "tdoa_table_built",
        pairs=table.pair_count,
        directions=table.direction_count,
        k=k,
        max_delay=int(np.abs(delays).max(initial=0)),
    )
    return table


def max_delay_bound(pairs: PairSet, fs: float, c: float, k: int) -> NDArray[np.int64]:
    """Per-pair bound ``k * ceil(fs * |d_p| / c)`` on table entries."""
    validate_interpolation_factor(k)
    return (k * np.ceil(fs * pairs.norms / c)).astype(np.int64)


def dump_tdoa(table: TdoaTable, pairs: PairSet, path: Path) -> Path:
    """Write a table for offline inspection (.json, .npy or .npz)."""
    suffix = path.suffix.lower()
    if suffix == ".json":
        document = {
            "k": table.k,
            "fs": table.fs,
            "c": table.c,
            "pairs": [[int(a) + 1, int(b) + 1] for a, b in zip(pairs.u, pairs.v, strict=True)],
            "delays": table.delays.tolist(),
        }
        path.write_text(json.dumps(document))
    elif suffix == ".npy":
        np.save(path, table.delays)
    elif suffix == ".npz":
        np.savez(path, delays=table.delays, k=table.k, fs=table.fs, c=table.c)
    else:
        raise ValidationError(
            f"Unsupported TDoA dump format '{suffix}' (use .json, .npy or .npz)", field="path"
        )
    logger.info("tdoa_table_dumped", path=str(path), shape=list(table.delays.shape))
    return path
