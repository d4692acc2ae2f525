from app.geometry.services.arrays import (
    delay_bounds,
    describe_array,
    enumerate_pairs,
    list_presets,
    load_array,
    load_preset,
)
from app.geometry.services.directions import (
    angular_error_deg,
    azimuth_elevation_deg,
)
from app.geometry.services.icosphere import build_doa_grid
from app.geometry.services.tdoa_table import (
    build_tdoa_table,
    dump_tdoa,
    max_delay_bound,
    round_half_away,
)

__all__ = [
    "angular_error_deg",
    "azimuth_elevation_deg",
    "build_doa_grid",
    "build_tdoa_table",
    "delay_bounds",
    "describe_array",
    "dump_tdoa",
    "enumerate_pairs",
    "list_presets",
    "load_array",
    "load_preset",
    "max_delay_bound",
    "round_half_away",
]
