"""Unit tests for STFT framing, cross-spectra and PHAT weighting."""

import numpy as np
import pytest

from app.core.exceptions import DimensionMismatchError, ValidationError
from app.gcc.models import SpectralFrame
from app.gcc.services import (
    cross_spectrum,
    frame_count,
    gcc,
    iter_cross_spectra,
    phat,
    stft,
)
from app.geometry.models import PairSet

N = 64


@pytest.fixture
def one_pair() -> PairSet:
    return PairSet(u=np.array([0]), v=np.array([1]), d=np.array([[0.05, 0.0, 0.0]]), mic_count=2)


def _frames(signal: np.ndarray, count: int) -> list[SpectralFrame]:
    bins = np.fft.rfft(signal, axis=-1)
    return [SpectralFrame(bins=bins, index=t, frame_size=signal.shape[-1]) for t in range(count)]


class TestStft:
    """Tests for stft and frame_count."""

    def test_constant_signal_fills_dc(self):
        """A constant frame only fills the DC bin."""
        frames = list(stft(np.ones((1, 8)), n=8, hop=8, window="boxcar"))
        assert len(frames) == 1
        np.testing.assert_allclose(frames[0].bins[0], [8, 0, 0, 0, 0], atol=1e-12)

    def test_cosine_lands_in_its_bin(self):
        """A cosine lands in its own bin."""
        t = np.arange(16)
        frames = list(stft(np.cos(2 * np.pi * 2 * t / 16), n=16, hop=16, window="boxcar"))
        magnitude = np.abs(frames[0].bins[0])
        assert int(np.argmax(magnitude)) == 2
        assert magnitude[2] == pytest.approx(8.0)

    def test_frame_count_and_indices(self):
        """Frames are complete, counted and indexed in order."""
        frames = list(stft(np.zeros((2, 100)), n=32, hop=16))
        assert len(frames) == frame_count(100, 32, 16) == 5
        assert [frame.index for frame in frames] == [0, 1, 2, 3, 4]
        assert frames[0].bins.shape == (2, 17)

    def test_signal_shorter_than_frame(self):
        """Signals shorter than a frame are rejected on call."""
        with pytest.raises(ValidationError):
            stft(np.zeros((2, N - 1)), n=N)

    @pytest.mark.parametrize("n", [0, 1, 48])
    def test_frame_size_must_be_power_of_two(self, n):
        """Frame sizes must be powers of two."""
        with pytest.raises(ValidationError):
            stft(np.zeros((1, 128)), n=n)

    def test_zero_hop_is_rejected_on_call(self):
        """A zero hop fails before any frame is requested."""
        with pytest.raises(ValidationError) as exc_info:
            stft(np.zeros((1, 128)), n=32, hop=0)
        assert exc_info.value.details["field"] == "hop"

    def test_hann_is_the_default_window(self):
        """The default taper is a periodic Hann window."""
        frames = list(stft(np.ones((1, 8)), n=8, hop=8))
        # Periodic Hann sums to n / 2
        assert frames[0].bins[0, 0].real == pytest.approx(4.0)


class TestCrossSpectrum:
    """Tests for cross_spectrum and iter_cross_spectra."""

    def test_identical_channels_give_real_non_negative_spectra(self, one_pair, rng):
        """Identical channels give real non-negative cross-spectra."""
        x = rng.normal(size=N)
        cross = cross_spectrum(_frames(np.stack([x, x]), 4), one_pair, block=4)
        assert cross.frames_accumulated == 4
        np.testing.assert_allclose(cross.values.imag, 0.0, atol=1e-9)
        assert cross.values.real.min() >= 0.0

    def test_delayed_channel_peaks_at_positive_lag(self, one_pair, rng):
        """A channel lagging by 3 samples peaks at lag +3."""
        x = rng.normal(size=N)
        cross = cross_spectrum(_frames(np.stack([x, np.roll(x, 3)]), 1), one_pair, block=1)
        correlation = gcc(phat(cross).values[0], k=1)
        assert int(np.argmax(correlation.samples)) == 3

    def test_zero_signal_gives_zero_spectra(self, one_pair):
        """Silence gives zero cross-spectra."""
        cross = cross_spectrum(_frames(np.zeros((2, N)), 2), one_pair, block=2)
        assert not cross.values.any()

    def test_stream_ending_early(self, one_pair):
        """A stream shorter than one block is reported."""
        with pytest.raises(ValidationError, match="ended after 3 of 4"):
            cross_spectrum(_frames(np.zeros((2, N)), 3), one_pair, block=4)

    def test_block_must_be_positive(self, one_pair):
        """Block length must be positive."""
        with pytest.raises(ValidationError):
            cross_spectrum(_frames(np.zeros((2, N)), 1), one_pair, block=0)

    def test_channel_count_mismatch(self, one_pair):
        """Frames must have one channel per microphone."""
        with pytest.raises(DimensionMismatchError):
            cross_spectrum(_frames(np.zeros((3, N)), 1), one_pair, block=1)

    def test_partial_trailing_block_is_dropped(self, one_pair, rng):
        """Only complete blocks are yielded."""
        blocks = list(iter_cross_spectra(_frames(rng.normal(size=(2, N)), 10), one_pair, 4))
        assert len(blocks) == 2
        assert [block.first_frame for block in blocks] == [0, 4]


class TestPhat:
    """Tests for PHAT normalization."""

    def test_unit_magnitude(self):
        """PHAT leaves unit magnitudes."""
        spectra = phat([[3 + 4j, 0.0, -2.0]])
        np.testing.assert_allclose(spectra.values[0], [0.6 + 0.8j, 0.0, -1.0])

    def test_bins_below_floor_are_zeroed(self):
        """Bins under the floor become zero instead of NaN."""
        spectra = phat([[1e-14, 1.0, 1e-3]], floor=1e-2)
        np.testing.assert_array_equal(spectra.values[0], [0.0, 1.0, 0.0])

    def test_frame_size_is_inferred(self):
        """Frame size follows from the bin count."""
        assert phat(np.ones((2, N // 2 + 1))).frame_size == N

    def test_negative_floor(self):
        """A negative floor is rejected."""
        with pytest.raises(ValidationError):
            phat([[1.0, 1.0]], floor=-1.0)
