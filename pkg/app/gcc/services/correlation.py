"""Cross-spectra, PHAT weighting and interpolated GCC.

Cross-spectra are formed as ``C_p[f] = sum_t conj(X_u[t, f]) * X_v[t, f]``.
With the ``exp(+j 2 pi f tau / N)`` synthesis kernel this places the
correlation peak of a plane wave at ``+tau_p[i]``, the lag read by the
TDoA table.
"""

from collections.abc import Iterable, Iterator
from functools import lru_cache
from itertools import islice

import numpy as np
import scipy.fft
from numpy.typing import ArrayLike, NDArray

from app.core.config import settings
from app.core.exceptions import DimensionMismatchError, ValidationError
from app.gcc.models import CorrelationVector, CrossSpectra, PhatSpectra, SpectralFrame
from app.geometry.models import PairSet
from app.geometry.services.tdoa_table import validate_interpolation_factor


def cross_spectrum(
    frames: Iterable[SpectralFrame], pairs: PairSet, block: int | None = None
) -> CrossSpectra:
    """Accumulate ``block`` consecutive frames of per-pair cross-spectra.

    Raises:
        ValidationError: if block < 1 or the stream ends before the block completes.
    """
    block = settings.BLOCK_FRAMES if block is None else block
    if block < 1:
        raise ValidationError(f"Block must hold at least 1 frame, got {block}", field="block")

    accumulator: NDArray[np.complex128] | None = None
    first_frame = 0
    frame_size = 0
    consumed = 0
    for frame in islice(frames, block):
        if pairs.mic_count and frame.bins.shape[0] != pairs.mic_count:
            raise DimensionMismatchError(
                "Frame channel count does not match the array",
                expected=pairs.mic_count,
                actual=frame.bins.shape[0],
            )
        if accumulator is None:
            accumulator = np.zeros((len(pairs), frame.bins.shape[1]), dtype=np.complex128)
            first_frame = frame.index
            frame_size = frame.frame_size
        accumulator += np.conj(frame.bins[pairs.u]) * frame.bins[pairs.v]
        consumed += 1

    if accumulator is None or consumed < block:
        raise ValidationError(
            f"Frame stream ended after {consumed} of {block} frames", field="frames"
        )
    return CrossSpectra(
        values=accumulator,
        frames_accumulated=consumed,
        first_frame=first_frame,
        frame_size=frame_size,
    )


def iter_cross_spectra(
    frames: Iterable[SpectralFrame], pairs: PairSet, block: int | None = None
) -> Iterator[CrossSpectra]:
    """Successive non-overlapping blocks; a trailing partial block is dropped."""
    stream = iter(frames)
    while True:
        try:
            yield cross_spectrum(stream, pairs, block)
        except ValidationError as e:
            if e.details.get("field") == "frames":
                return
            raise


def phat(cross: CrossSpectra | ArrayLike, floor: float | None = None) -> PhatSpectra:
    """``R = C / |C|`` where ``|C| > floor``, else 0."""
    floor = settings.PHAT_FLOOR if floor is None else floor
    if floor < 0:
        raise ValidationError(f"PHAT floor must be non-negative, got {floor}", field="floor")

    if isinstance(cross, CrossSpectra):
        values = cross.values
    else:
        values = np.atleast_2d(np.asarray(cross, dtype=np.complex128))
    magnitude = np.abs(values)
    keep = magnitude > floor
    normalized = np.zeros_like(values)
    np.divide(values, magnitude, out=normalized, where=keep)
    return PhatSpectra(values=normalized, frame_size=2 * (values.shape[1] - 1))


@lru_cache(maxsize=32)
def _bin_weights(n: int, k: int) -> NDArray[np.float64]:
    """Weights turning a forward-normalized irfft into the half-spectrum sum."""
    length = k * n
    weights = np.full(length // 2 + 1, 0.5)
    weights[0] = 1.0
    weights[-1] = 1.0
    weights.setflags(write=False)
    return weights


def gcc_batch(spectra: NDArray[np.complex128], k: int) -> NDArray[np.float64]:
    """Interpolated correlations for every row of an R x (N/2 + 1) spectrum block.

    Row r of the result holds ``Re sum_{f=0}^{N/2} S_r[f] exp(j 2 pi f tau / (k N))``
    for ``tau = 0..kN-1``: one inverse real FFT per row.
    """
    validate_interpolation_factor(k)
    bins = spectra.shape[-1]
    n = 2 * (bins - 1)
    length = k * n
    padded = np.zeros(spectra.shape[:-1] + (length // 2 + 1,), dtype=np.complex128)
    padded[..., :bins] = spectra
    padded *= _bin_weights(n, k)
    return np.asarray(scipy.fft.irfft(padded, n=length, axis=-1, norm="forward"))


def gcc(spectrum: ArrayLike, k: int | None = None) -> CorrelationVector:
    """GCC of one PHAT spectrum row, zero-padded to k*N lags."""
    k = settings.INTERPOLATION_FACTOR if k is None else k
    row = np.asarray(spectrum, dtype=np.complex128)
    if row.ndim != 1:
        raise DimensionMismatchError("gcc expects a single spectrum row", actual=list(row.shape))
    samples = gcc_batch(row[None, :], k)[0]
    return CorrelationVector(samples=samples, k=k, frame_size=2 * (row.shape[0] - 1))
