"""Synthetic PHAT spectra for benchmarks and oracles."""

import numpy as np

from app.gcc.models import PhatSpectra
from app.geometry.models import TdoaTable


def random_phat_spectra(pair_count: int, n: int, rng: np.random.Generator) -> PhatSpectra:
    """Unit-magnitude spectra with uniform random phase.

    DC and Nyquist bins are real (+1 or -1), as for cross-spectra of real signals.
    """
    bins = n // 2 + 1
    phases = rng.uniform(-np.pi, np.pi, size=(pair_count, bins))
    values = np.exp(1j * phases)
    values[:, 0] = np.where(rng.random(pair_count) < 0.5, -1.0, 1.0)
    values[:, -1] = np.where(rng.random(pair_count) < 0.5, -1.0, 1.0)
    return PhatSpectra(values=values, frame_size=n)


def plane_wave_spectra(table: TdoaTable, direction: int, n: int) -> PhatSpectra:
    """Noiseless PHAT spectra of a far-field source at grid ``direction``.

    Each pair carries the linear phase of its table delay, so its correlation
    peaks exactly at ``delays[p][direction]`` (in interpolated samples).
    """
    bins = np.arange(n // 2 + 1)
    lags = table.delays[:, direction].astype(np.float64)
    values = np.exp(-2j * np.pi * np.outer(lags, bins) / (table.k * n))
    return PhatSpectra(values=values, frame_size=n)
