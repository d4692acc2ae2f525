"""Short-time Fourier transform of multichannel frames."""

from collections.abc import Iterator

import numpy as np
import scipy.fft
import scipy.signal
from numpy.lib.stride_tricks import sliding_window_view
from numpy.typing import ArrayLike, NDArray

from app.core.config import settings
from app.core.exceptions import ValidationError
from app.gcc.models import SpectralFrame


def validate_frame_size(n: int) -> None:
    if n < 2 or n & (n - 1):
        raise ValidationError(f"Frame size must be a power of two >= 2, got {n}", field="n")


def frame_count(length: int, n: int, hop: int) -> int:
    """Number of complete frames ``[t*hop, t*hop + n)`` in ``length`` samples."""
    if length < n:
        return 0
    return 1 + (length - n) // hop


def stft(
    signal: ArrayLike,
    n: int,
    hop: int | None = None,
    window: str | None = None,
) -> Iterator[SpectralFrame]:
    """Windowed real-FFT frames of an M x L signal.

    Args:
        signal: M x L real samples (a 1-D signal is treated as one channel).
        n: Frame size, a power of two.
        hop: Frame advance in samples. Defaults to n // 2.
        window: Any scipy window name ("hann", "boxcar", ...).
            Defaults to settings.WINDOW.

    Returns:
        Iterator of SpectralFrame with bins 0..n/2 for every complete frame.
        Arguments are checked before the first frame is requested.
    """
    samples = np.atleast_2d(np.asarray(signal, dtype=np.float64))
    validate_frame_size(n)
    hop = n // 2 if hop is None else hop
    if hop < 1:
        raise ValidationError(f"Hop must be at least 1 sample, got {hop}", field="hop")
    if samples.shape[1] < n:
        raise ValidationError(
            f"Signal of {samples.shape[1]} samples is shorter than one frame ({n})",
            field="signal",
        )

    taper = scipy.signal.get_window(window or settings.WINDOW, n, fftbins=True)
    return _iter_frames(samples, taper, hop)


def _iter_frames(
    samples: NDArray[np.float64], taper: NDArray[np.float64], hop: int
) -> Iterator[SpectralFrame]:
    n = taper.shape[0]
    frames = sliding_window_view(samples, n, axis=1)[:, ::hop, :]
    for t in range(frames.shape[1]):
        spectrum: NDArray[np.complex128] = scipy.fft.rfft(frames[:, t, :] * taper, axis=-1)
        yield SpectralFrame(bins=spectrum, index=t, frame_size=n)
