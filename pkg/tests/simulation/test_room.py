"""Unit tests for the shoebox room model and image-source RIRs."""

import numpy as np
import pytest

from app.core.exceptions import PhysicalRangeError, ValidationError
from app.simulation.models import RoomConfig
from app.simulation.services import (
    check_inside,
    compute_rir,
    energy_decay_curve,
    image_sources,
    reflection_coefficient,
    rir_length,
    sabine_absorption,
    schroeder_rt60,
)

FS = 16000


class TestRoomConfig:
    """Tests for RoomConfig validation and Sabine absorption."""

    def test_default_room(self):
        """Default room is 10 x 10 x 3 m with order 6."""
        room = RoomConfig()
        assert room.dims == (10.0, 10.0, 3.0)
        assert room.volume == pytest.approx(300.0)
        assert room.surface == pytest.approx(320.0)

    def test_sabine_absorption(self):
        """Sabine absorption for a 0.3 s room."""
        room = RoomConfig(rt60=0.3)
        assert sabine_absorption(room) == pytest.approx(0.161 * 300.0 / (0.3 * 320.0))
        assert reflection_coefficient(room) == pytest.approx(np.sqrt(1 - 0.503125))

    def test_unrealizable_rt60(self):
        """An RT60 too short for the room is physically out of range."""
        room = RoomConfig(dims=(10.0, 10.0, 3.0), rt60=0.1)
        with pytest.raises(PhysicalRangeError) as exc_info:
            sabine_absorption(room)
        assert exc_info.value.details["quantity"] == "absorption"

    def test_absorption_override_bypasses_sabine(self):
        """An explicit absorption skips the Sabine inversion."""
        room = RoomConfig(rt60=0.1, absorption=0.9)
        assert sabine_absorption(room) == 0.9

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"dims": (0.0, 4.0, 3.0)},
            {"dims": (4.0, 3.0)},
            {"rt60": 0.0},
            {"rt60": 5.0},
            {"max_order": -1},
            {"fs": 0},
            {"absorption": 0.0},
            {"absorption": 1.5},
        ],
    )
    def test_invalid_configuration(self, kwargs):
        """Invalid room parameters are rejected."""
        with pytest.raises(ValidationError):
            RoomConfig(**kwargs)

    def test_check_inside_with_margin(self):
        """Points must keep the margin from every wall."""
        room = RoomConfig()
        check_inside(room, [5.0, 5.0, 1.0], margin=0.5)
        with pytest.raises(ValidationError, match="source"):
            check_inside(room, [0.2, 5.0, 1.0], margin=0.5, name="source")


class TestImageSources:
    """Tests for image enumeration."""

    def test_order_zero_is_the_source(self):
        """Order 0 is the source alone."""
        room = RoomConfig(max_order=0)
        positions, orders = image_sources(room, [1.0, 2.0, 1.5])
        np.testing.assert_array_equal(positions, [[1.0, 2.0, 1.5]])
        np.testing.assert_array_equal(orders, [0])

    def test_first_order_images(self):
        """Order 1 gives 27 images, mirrored in each wall."""
        room = RoomConfig(dims=(4.0, 5.0, 3.0), max_order=1)
        positions, orders = image_sources(room, [1.0, 2.0, 1.5])
        assert positions.shape == (27, 3)
        # Mirror images across the x = 0 and x = 4 walls
        x_only = positions[(positions[:, 1] == 2.0) & (positions[:, 2] == 1.5)]
        assert sorted(x_only[:, 0].tolist()) == [-1.0, 1.0, 7.0]
        assert orders.max() == 3

    def test_reflection_counts_per_axis(self):
        """Order 2 gives 125 images."""
        room = RoomConfig(dims=(4.0, 5.0, 3.0), max_order=2)
        positions, orders = image_sources(room, [1.0, 2.0, 1.5])
        # 5 images per axis for a per-axis cap of 2
        assert positions.shape == (125, 3)
        assert int(np.sum(orders == 0)) == 1


class TestComputeRir:
    """Tests for compute_rir and decay analysis."""

    def test_direct_path_in_anechoic_room(self):
        """Anechoic response is one tap at the direct delay."""
        room = RoomConfig(rt60=0.3, absorption=1.0)
        rir = compute_rir(room, [2.0, 5.0, 1.5], [5.43, 5.0, 1.5])
        # 3.43 m at 343 m/s and 16 kHz is exactly 160 samples
        assert abs(rir.shape[0] - rir_length(room, 3.43)) <= 1
        assert rir[160] == pytest.approx(1.0 / (4 * np.pi * 3.43), rel=1e-9)
        others = np.delete(rir, 160)
        assert np.abs(others).max() < 1e-12

    def test_fractional_delay_spreads_energy(self):
        """A fractional delay spreads over neighbouring taps."""
        room = RoomConfig(rt60=0.3, absorption=1.0)
        rir = compute_rir(room, [2.0, 5.0, 1.5], [5.44, 5.0, 1.5])
        # 3.44 m is 160.47 samples
        assert int(np.argmax(np.abs(rir))) == 160
        assert np.count_nonzero(np.abs(rir) > 1e-6) > 2

    def test_energy_decreases_with_absorption(self):
        """More absorption gives less energy."""
        energies = []
        for absorption in (0.3, 0.6, 1.0):
            room = RoomConfig(dims=(6.0, 5.0, 3.0), absorption=absorption, max_order=4)
            rir = compute_rir(room, [1.0, 1.0, 1.5], [4.0, 3.0, 1.2])
            energies.append(float(np.sum(rir**2)))
        assert energies[0] > energies[1] > energies[2]

    def test_sources_outside_the_room(self):
        """Positions outside the room are rejected."""
        room = RoomConfig()
        with pytest.raises(ValidationError):
            compute_rir(room, [11.0, 5.0, 1.5], [5.0, 5.0, 1.5])

    @pytest.mark.parametrize("rt60", [0.2, 0.35, 0.5])
    def test_schroeder_estimate_tracks_rt60(self, rt60):
        """Measured decay of the default room stays within 20% of the requested RT60."""
        room = RoomConfig(rt60=rt60)
        assert (room.dims, room.max_order) == ((10.0, 10.0, 3.0), 6)
        rir = compute_rir(room, [6.5, 4.0, 2.0], [5.0, 5.0, 1.0])
        assert schroeder_rt60(rir, FS) == pytest.approx(rt60, rel=0.2)

    def test_decay_curve_starts_at_zero_db(self):
        """Energy decay curve starts at 0 dB and never rises."""
        curve = energy_decay_curve(np.exp(-np.arange(1000) / 100.0))
        assert curve[0] == pytest.approx(0.0)
        assert np.all(np.diff(curve) <= 1e-12)

    def test_schroeder_needs_a_decay(self):
        """A response without a decay range is rejected."""
        with pytest.raises(ValidationError):
            schroeder_rt60(np.r_[1.0, np.zeros(9)], FS)
