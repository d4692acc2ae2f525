"""Unit tests for the interpolated GCC."""

import numpy as np
import pytest

from app.core.exceptions import DimensionMismatchError, ValidationError
from app.gcc.services import gcc, gcc_batch, plane_wave_spectra, random_phat_spectra

N = 64


def _reversed(samples: np.ndarray) -> np.ndarray:
    """``x[-tau mod L]`` for every tau."""
    return np.roll(samples[::-1], 1)


class TestGcc:
    """Tests for gcc and gcc_batch."""

    @pytest.mark.parametrize("k", [1, 2, 4, 8])
    def test_all_ones_spectrum_peaks_at_zero_lag(self, k):
        """An all-ones spectrum peaks at lag 0 for every k."""
        correlation = gcc(np.ones(N // 2 + 1), k=k)
        assert len(correlation) == k * N
        assert int(np.argmax(correlation.samples)) == 0
        assert correlation.samples[0] == pytest.approx(N / 2 + 1)

    def test_linear_phase_peaks_at_its_delay(self):
        """A linear phase peaks at its delay."""
        bins = np.arange(N // 2 + 1)
        spectrum = np.exp(-2j * np.pi * bins * 2 / N)
        correlation = gcc(spectrum, k=1)
        assert int(np.argmax(correlation.samples)) == 2
        assert correlation.at(2) == pytest.approx(N / 2 + 1)

    def test_negative_lag_wraps(self):
        """Negative lags land at the end of the buffer."""
        bins = np.arange(N // 2 + 1)
        correlation = gcc(np.exp(2j * np.pi * bins * 3 / N), k=1)
        assert int(np.argmax(correlation.samples)) == N - 3
        assert correlation.at(-3) == correlation.samples[N - 3]

    def test_conjugation_reverses_lags(self, rng):
        """Conjugating a spectrum reverses the correlation lags."""
        spectra = random_phat_spectra(1000, N, rng).values
        forward = gcc_batch(spectra, 4)
        backward = gcc_batch(np.conj(spectra), 4)
        np.testing.assert_allclose(backward, np.apply_along_axis(_reversed, 1, forward), atol=1e-9)

    def test_interpolation_refines_the_coarse_lags(self, rng):
        """Every k-th sample of the k-fold correlation is the plain one."""
        spectra = random_phat_spectra(20, N, rng).values
        coarse = gcc_batch(spectra, 1)
        for k in (2, 4, 8):
            np.testing.assert_allclose(gcc_batch(spectra, k)[:, ::k], coarse, atol=1e-9)

    def test_mean_power_is_independent_of_k(self, rng):
        """Mean correlation power follows the spectrum energy for k >= 2."""
        spectra = random_phat_spectra(5, N, rng).values
        # DC contributes 1, each of the N/2 remaining unit bins contributes 1/2
        expected = 1.0 + 0.5 * (N // 2)
        for k in (2, 4, 8):
            power = np.mean(gcc_batch(spectra, k) ** 2, axis=1)
            np.testing.assert_allclose(power, expected, rtol=1e-9)

    def test_plane_wave_spectra_peak_at_table_delay(self, tables):
        """Plane-wave spectra peak at the table delay of their direction."""
        table = tables["respeaker-usb"]
        direction = 700
        correlations = gcc_batch(plane_wave_spectra(table, direction, 512).values, table.k)
        peaks = np.argmax(correlations, axis=1)
        np.testing.assert_array_equal(peaks, table.delays[:, direction] % (table.k * 512))

    def test_rejects_unsupported_factor(self):
        """k = 3 is rejected."""
        with pytest.raises(ValidationError):
            gcc(np.ones(N // 2 + 1), k=3)

    def test_rejects_block_input(self):
        """gcc takes one spectrum row."""
        with pytest.raises(DimensionMismatchError):
            gcc(np.ones((2, N // 2 + 1)), k=1)


class TestRandomPhatSpectra:
    """Tests for the synthetic benchmark payload."""

    def test_unit_magnitude_and_real_edges(self, rng):
        """Random payloads have unit magnitude and real DC and Nyquist bins."""
        spectra = random_phat_spectra(6, N, rng)
        np.testing.assert_allclose(np.abs(spectra.values), 1.0)
        assert not spectra.values[:, 0].imag.any()
        assert not spectra.values[:, -1].imag.any()

    def test_seeded_payloads_repeat(self):
        """The same generator seed gives the same payload."""
        first = random_phat_spectra(6, N, np.random.default_rng(7))
        second = random_phat_spectra(6, N, np.random.default_rng(7))
        np.testing.assert_array_equal(first.values, second.values)
