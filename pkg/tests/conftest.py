"""Shared fixtures: presets, pair sets, grids, tables and plans."""

from collections.abc import Callable, Iterator

import numpy as np
import pytest
from fastapi.testclient import TestClient

from app.core.constants import ARRAY_PRESETS
from app.geometry.models import DoaGrid, MicArray, PairSet, TdoaTable
from app.geometry.services import build_doa_grid, build_tdoa_table, enumerate_pairs, load_array
from app.localization.services import LocalizationSetup, PipelineConfig
from app.merging.models import MergePlan
from app.merging.services import MergePlanService

FS = 16000
C = 343.0
N = 512
K = 4


@pytest.fixture(scope="session")
def arrays() -> dict[str, MicArray]:
    return {name: load_array(name) for name in ARRAY_PRESETS}


@pytest.fixture(scope="session")
def usb_array(arrays) -> MicArray:
    return arrays["respeaker-usb"]


@pytest.fixture(scope="session")
def pair_sets(arrays) -> dict[str, PairSet]:
    return {name: enumerate_pairs(array) for name, array in arrays.items()}


@pytest.fixture(scope="session")
def usb_pairs(pair_sets) -> PairSet:
    return pair_sets["respeaker-usb"]


@pytest.fixture(scope="session")
def grid() -> DoaGrid:
    """Level-4 hemisphere grid (1321 directions)."""
    return build_doa_grid(4, True)


@pytest.fixture(scope="session")
def tables(pair_sets, grid) -> dict[str, TdoaTable]:
    return {name: build_tdoa_table(pairs, grid, FS, C, K) for name, pairs in pair_sets.items()}


@pytest.fixture(scope="session")
def plans(pair_sets) -> dict[str, MergePlan]:
    return {name: MergePlanService.build_merge_plan(pairs) for name, pairs in pair_sets.items()}


@pytest.fixture(scope="session")
def pipeline_config() -> PipelineConfig:
    return PipelineConfig.from_settings(fs=FS, c=C, n=N, k=K, block=8, grid_level=4)


@pytest.fixture(scope="session")
def setups(arrays, pipeline_config) -> Callable[[str], LocalizationSetup]:
    """Factory of cached localization setups keyed by preset name."""
    cache: dict[str, LocalizationSetup] = {}

    def get(name: str) -> LocalizationSetup:
        if name not in cache:
            cache[name] = LocalizationSetup.build(arrays[name], pipeline_config)
        return cache[name]

    return get


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def client() -> Iterator[TestClient]:
    from app.main import app

    with TestClient(app) as test_client:
        yield test_client
