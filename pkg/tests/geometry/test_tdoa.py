"""Unit tests for the TDoA lookup table."""

import json

import numpy as np
import pytest

from app.core.exceptions import PhysicalRangeError, ValidationError
from app.geometry.models import DoaGrid, PairSet
from app.geometry.services import (
    build_tdoa_table,
    dump_tdoa,
    max_delay_bound,
    round_half_away,
)

FS = 16000
C = 343.0


def _swapped(pairs: PairSet) -> PairSet:
    return PairSet(u=pairs.v, v=pairs.u, d=-pairs.d, mic_count=pairs.mic_count)


class TestRoundHalfAway:
    """Tests for half-away-from-zero rounding."""

    def test_ties_round_away_from_zero(self):
        """Halves round away from zero."""
        values = np.array([0.5, -0.5, 1.5, -2.5, 0.49, -0.49])
        np.testing.assert_array_equal(round_half_away(values), [1, -1, 2, -3, 0, 0])

    def test_odd_symmetry(self, rng):
        """Rounding is odd symmetric."""
        values = rng.uniform(-20, 20, size=1000)
        np.testing.assert_array_equal(round_half_away(-values), -round_half_away(values))


class TestBuildTdoaTable:
    """Tests for build_tdoa_table."""

    @pytest.fixture
    def axis_grid(self):
        dirs = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
        return DoaGrid(dirs=dirs, level=0, hemisphere=False)

    def test_arithmetic_example(self, axis_grid):
        """Entries follow round(k * fs / c * d . u) on axis directions."""
        pairs = PairSet(
            u=np.array([0]), v=np.array([1]), d=np.array([[-0.064, 0.0, 0.0]]), mic_count=2
        )
        table = build_tdoa_table(pairs, axis_grid, FS, C, 4)
        # 4 * (16000 / 343) * -0.064 = -11.94
        np.testing.assert_array_equal(table.delays[0], [-12, 0, 0])

    def test_planar_array_zenith_is_zero(self, tables, grid):
        """Planar arrays have zero delay at the zenith."""
        assert np.all(grid.dirs[0] == [0.0, 0.0, 1.0])
        for table in tables.values():
            assert not table.delays[:, 0].any()

    def test_shape_and_metadata(self, tables):
        """Table is P x I and keeps k, fs and c."""
        table = tables["matrix-creator"]
        assert table.delays.shape == (28, 1321)
        assert (table.k, table.fs, table.c) == (4, 16000.0, 343.0)

    def test_entries_within_physical_bound(self, pair_sets, tables):
        """No entry exceeds its pair's physical bound."""
        for name, table in tables.items():
            pairs = pair_sets[name]
            physical = FS * pairs.norms / C
            assert np.all(np.abs(table.delays) / table.k <= physical[:, None] + 0.5)
            assert np.all(
                np.abs(table.delays) <= max_delay_bound(pairs, FS, C, table.k)[:, None]
            )

    def test_bound_scales_with_interpolation_factor(self, usb_pairs):
        """Bounds scale with k; the 6.4 cm USB diagonal allows 12 samples at k = 4."""
        np.testing.assert_array_equal(
            max_delay_bound(usb_pairs, FS, C, 4), 4 * max_delay_bound(usb_pairs, FS, C, 1)
        )
        assert max_delay_bound(usb_pairs, FS, C, 4)[1] == 12

    def test_non_unit_directions_exceed_the_bound(self, usb_pairs):
        """A stretched direction vector pushes delays past the physical bound."""
        dirs = np.array([[0.0, 0.0, 1.0], [3.0, 0.0, 0.0]])
        stretched = DoaGrid(dirs=dirs, level=0, hemisphere=True)
        with pytest.raises(PhysicalRangeError) as exc_info:
            build_tdoa_table(usb_pairs, stretched, FS, C, 4)
        assert exc_info.value.details["quantity"] == "tdoa"

    def test_swapping_pairs_negates_entries(self, pair_sets, grid):
        """Swapping u and v negates every entry."""
        for pairs in pair_sets.values():
            forward = build_tdoa_table(pairs, grid, FS, C, 4)
            backward = build_tdoa_table(_swapped(pairs), grid, FS, C, 4)
            np.testing.assert_array_equal(backward.delays, -forward.delays)

    def test_deterministic(self, usb_pairs, grid):
        """Identical inputs give identical tables."""
        first = build_tdoa_table(usb_pairs, grid, FS, C, 4)
        second = build_tdoa_table(usb_pairs, grid, FS, C, 4)
        assert first.delays.tobytes() == second.delays.tobytes()

    def test_interpolation_factor_scales_delays(self, usb_pairs, grid):
        """Doubling k roughly doubles the delays."""
        coarse = build_tdoa_table(usb_pairs, grid, FS, C, 1)
        fine = build_tdoa_table(usb_pairs, grid, FS, C, 8)
        assert np.abs(fine.delays).max() > np.abs(coarse.delays).max()

    @pytest.mark.parametrize("k", [0, 3, 16])
    def test_rejects_unsupported_factor(self, usb_pairs, grid, k):
        """Unsupported k values are rejected."""
        with pytest.raises(ValidationError):
            build_tdoa_table(usb_pairs, grid, FS, C, k)

    def test_rejects_non_positive_rate(self, usb_pairs, grid):
        """Sample rate must be positive."""
        with pytest.raises(ValidationError):
            build_tdoa_table(usb_pairs, grid, 0, C, 4)

    def test_lookup_indices_wrap(self, tables):
        """Negative delays wrap to the end of the correlation buffer."""
        table = tables["respeaker-usb"]
        indices = table.lookup_indices(2048)
        assert indices.min() >= 0
        assert indices.max() < 2048
        negative = table.delays < 0
        np.testing.assert_array_equal(indices[negative], table.delays[negative] + 2048)


class TestDumpTdoa:
    """Tests for dump_tdoa."""

    def test_json_dump_uses_one_based_pairs(self, tmp_path, tables, usb_pairs):
        """JSON export lists 1-based pairs."""
        path = dump_tdoa(tables["respeaker-usb"], usb_pairs, tmp_path / "usb.json")
        document = json.loads(path.read_text())
        assert document["pairs"][0] == [1, 2]
        assert document["k"] == 4
        assert len(document["delays"]) == 6
        assert len(document["delays"][0]) == 1321

    def test_npy_dump(self, tmp_path, tables, usb_pairs):
        """NumPy export holds the delays."""
        path = dump_tdoa(tables["respeaker-usb"], usb_pairs, tmp_path / "usb.npy")
        np.testing.assert_array_equal(np.load(path), tables["respeaker-usb"].delays)

    def test_npz_dump(self, tmp_path, tables, usb_pairs):
        """Archive export holds the delays and metadata."""
        path = dump_tdoa(tables["respeaker-usb"], usb_pairs, tmp_path / "usb.npz")
        with np.load(path) as archive:
            assert int(archive["k"]) == 4
            np.testing.assert_array_equal(archive["delays"], tables["respeaker-usb"].delays)

    def test_unsupported_suffix(self, tmp_path, tables, usb_pairs):
        """Unknown export suffixes are rejected."""
        with pytest.raises(ValidationError):
            dump_tdoa(tables["respeaker-usb"], usb_pairs, tmp_path / "usb.csv")
