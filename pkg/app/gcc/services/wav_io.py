"""Multichannel WAV ingestion and export."""

from pathlib import Path
from typing import BinaryIO

import numpy as np
import soundfile as sf
import structlog
from numpy.typing import NDArray

from app.core.exceptions import NotFoundError, SignalFormatError

logger = structlog.get_logger(__name__)

SUPPORTED_SUBTYPES: tuple[str, ...] = ("PCM_16", "PCM_24", "PCM_32", "FLOAT")


def read_wav(
    source: str | Path | BinaryIO, channels: int, fs: int
) -> NDArray[np.float64]:
    """Read a WAV file as an M x L float array.

    Raises:
        SignalFormatError: unsupported encoding, channel count other than
            ``channels`` or a sample rate other than ``fs`` (no resampling).
    """
    label = str(source) if isinstance(source, str | Path) else "upload"
    if isinstance(source, str | Path) and not Path(source).is_file():
        raise NotFoundError(f"WAV file not found: {source}", resource="wav")

    try:
        info = sf.info(source)
        if not isinstance(source, str | Path):
            source.seek(0)
        data, rate = sf.read(source, dtype="float64", always_2d=True)
    except sf.SoundFileError as e:
        raise SignalFormatError(f"Cannot decode WAV input: {e}", source=label) from e

    if info.subtype not in SUPPORTED_SUBTYPES:
        raise SignalFormatError(
            f"Unsupported WAV encoding {info.subtype} (expected one of {SUPPORTED_SUBTYPES})",
            source=label,
        )
    if data.shape[1] != channels:
        raise SignalFormatError(
            f"WAV has {data.shape[1]} channels, array has {channels} microphones",
            source=label,
        )
    if rate != fs:
        raise SignalFormatError(
            f"WAV sample rate {rate} Hz does not match configured {fs} Hz", source=label
        )

    logger.info("wav_loaded", source=label, channels=channels, samples=data.shape[0], fs=rate)
    return np.ascontiguousarray(data.T)


def write_wav(path: Path, signal: NDArray[np.float64], fs: int) -> Path:
    """Write an M x L signal as 32-bit float WAV."""
    path.parent.mkdir(parents=True, exist_ok=True)
    sf.write(str(path), np.asarray(signal).T, fs, subtype="FLOAT")
    return path
