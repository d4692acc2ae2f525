"""Application-wide constants.

This module centralizes physical constants, preset geometries and fixed
algorithm parameters that are used across multiple modules. For
user-configurable defaults, see config.py.
"""

# =============================================================================
# Built-in Microphone Arrays (positions in meters)
# =============================================================================

ARRAY_PRESETS: dict[str, tuple[tuple[float, float, float], ...]] = {
    "respeaker-usb": (
        (-0.0320, +0.0000, +0.0000),
        (+0.0000, -0.0320, +0.0000),
        (+0.0320, +0.0000, +0.0000),
        (+0.0000, +0.0320, +0.0000),
    ),
    "respeaker-core": (
        (-0.0232, +0.0401, +0.0000),
        (-0.0463, +0.0000, +0.0000),
        (-0.0232, -0.0401, +0.0000),
        (+0.0232, -0.0401, +0.0000),
        (+0.0463, +0.0000, +0.0000),
        (+0.0232, +0.0401, +0.0000),
    ),
    "minidsp-uma": (
        (+0.0000, +0.0000, +0.0000),
        (+0.0000, +0.0430, +0.0000),
        (+0.0370, +0.0210, +0.0000),
        (+0.0370, -0.0210, +0.0000),
        (+0.0000, -0.0430, +0.0000),
        (-0.0370, -0.0210, +0.0000),
        (-0.0370, +0.0210, +0.0000),
    ),
    "matrix-creator": (
        (+0.0201, -0.0485, +0.0000),
        (-0.0201, -0.0485, +0.0000),
        (-0.0485, -0.0201, +0.0000),
        (-0.0485, +0.0201, +0.0000),
        (-0.0201, +0.0485, +0.0000),
        (+0.0201, +0.0485, +0.0000),
        (+0.0485, +0.0201, +0.0000),
        (+0.0485, -0.0201, +0.0000),
    ),
    # Square corners plus centre, the worked example with P=10 and Q=6
    "square-5": (
        (-0.0500, -0.0500, +0.0000),
        (+0.0500, -0.0500, +0.0000),
        (+0.0500, +0.0500, +0.0000),
        (-0.0500, +0.0500, +0.0000),
        (+0.0000, +0.0000, +0.0000),
    ),
}

# =============================================================================
# Geometry Tolerances
# =============================================================================

# Two microphones closer than this are considered coincident (m)
MIN_MIC_SEPARATION_M: float = 1e-6

# Unit-norm tolerance for grid directions
UNIT_NORM_TOLERANCE: float = 1e-9

# Hemisphere grids keep directions with z above this bound (retains equator)
HEMISPHERE_Z_FLOOR: float = -1e-6

MAX_GRID_LEVEL: int = 6

ALLOWED_INTERPOLATION_FACTORS: tuple[int, ...] = (1, 2, 4, 8)

# =============================================================================
# Room Simulation
# =============================================================================

DEFAULT_ROOM_DIMS_M: tuple[float, float, float] = (10.0, 10.0, 3.0)

# Sabine constant (s/m)
SABINE_CONSTANT: float = 0.161

MAX_RT60_SECONDS: float = 2.0

# Campaign RT60 is drawn uniformly from this range (s)
CAMPAIGN_RT60_RANGE: tuple[float, float] = (0.2, 0.5)

ARRAY_HEIGHT_M: float = 1.0
SOURCE_HEIGHT_M: float = 2.0
WALL_MARGIN_M: float = 0.5
MIN_SOURCE_DISTANCE_M: float = 1.0

# Hann-windowed sinc fractional delay filter length (odd)
FRACTIONAL_DELAY_TAPS: int = 81

# Attempts before random placement gives up
MAX_PLACEMENT_ATTEMPTS: int = 1000

# =============================================================================
# Benchmarks
# =============================================================================

# Reports with fewer timed repetitions are flagged as not comparable
MIN_COMPARABLE_REPETITIONS: int = 30
