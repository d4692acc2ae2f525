"""Array loading and pair enumeration."""

import json
from itertools import combinations
from pathlib import Path
from typing import Any

import numpy as np
import pydantic
import structlog

from app.core.config import settings
from app.core.constants import ARRAY_PRESETS
from app.core.exceptions import NotFoundError, ValidationError
from app.geometry.models import MicArray, PairSet
from app.geometry.schemas.geometry import ArrayResponse, DelayBounds, GeometryConfig, PairEntry
from app.geometry.services.tdoa_table import max_delay_bound

logger = structlog.get_logger(__name__)


def list_presets() -> list[str]:
    """Built-in preset names followed by names found in ARRAY_PRESET_DIR."""
    names = list(ARRAY_PRESETS)
    if settings.ARRAY_PRESET_DIR:
        preset_dir = Path(settings.ARRAY_PRESET_DIR)
        if preset_dir.is_dir():
            names.extend(sorted(p.stem for p in preset_dir.glob("*.json") if p.stem not in names))
    return names


def _from_document(document: Any, source: str) -> MicArray:
    try:
        config = GeometryConfig.model_validate(document)
    except pydantic.ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        raise ValidationError(
            f"Malformed geometry config {source}: {first['msg']} at '{location}'",
            field=location or None,
        ) from e
    return MicArray(name=config.name, mics=np.asarray(config.mics, dtype=np.float64))


def _read_document(path: Path) -> Any:
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise ValidationError(f"Geometry file {path} is not valid JSON: {e}") from e


def load_array(config: GeometryConfig | dict[str, Any] | str | Path) -> MicArray:
    """Build a MicArray from a preset name, a geometry file or a geometry document.

    Lookup order for strings: built-in presets, ``ARRAY_PRESET_DIR/<name>.json``,
    then a filesystem path.
    """
    if isinstance(config, GeometryConfig):
        return MicArray(name=config.name, mics=np.asarray(config.mics, dtype=np.float64))
    if isinstance(config, dict):
        return _from_document(config, "document")

    if isinstance(config, str) and config in ARRAY_PRESETS:
        array = MicArray(name=config, mics=np.asarray(ARRAY_PRESETS[config], dtype=np.float64))
        logger.debug("array_loaded", source="preset", name=config, mics=array.count)
        return array

    candidates: list[Path] = []
    if isinstance(config, str) and settings.ARRAY_PRESET_DIR:
        candidates.append(Path(settings.ARRAY_PRESET_DIR) / f"{config}.json")
    candidates.append(Path(config))

    for path in candidates:
        if path.is_file():
            document = _read_document(path)
            if isinstance(document, dict):
                document.setdefault("name", path.stem)
            array = _from_document(document, str(path))
            logger.debug("array_loaded", source=str(path), name=array.name, mics=array.count)
            return array

    raise NotFoundError(f"Unknown array preset or geometry file: {config}", resource="array")


def enumerate_pairs(array: MicArray) -> PairSet:
    """All pairs (u, v) with u < v in lexicographic order, d = x_u - x_v."""
    index_pairs = list(combinations(range(array.count), 2))
    u = np.array([a for a, _ in index_pairs], dtype=np.int64)
    v = np.array([b for _, b in index_pairs], dtype=np.int64)
    d = array.mics[u] - array.mics[v]
    return PairSet(u=u, v=v, d=d, mic_count=array.count)


def delay_bounds(array: MicArray, fs: float, c: float, k: int) -> DelayBounds:
    """Aperture and per-pair table bounds, in pair order."""
    bound = max_delay_bound(enumerate_pairs(array), fs, c, k)
    return DelayBounds(
        array=array.name, aperture_m=array.aperture, k=k, max_delays=bound.tolist()
    )


def describe_array(array: MicArray, fs: float, c: float, k: int) -> ArrayResponse:
    """JSON-ready description of an array and its pairs (1-based indices)."""
    pairs = enumerate_pairs(array)
    bound = max_delay_bound(pairs, fs, c, k)
    return ArrayResponse(
        name=array.name,
        mics=array.mics.tolist(),
        aperture_m=array.aperture,
        k=k,
        pairs=[
            PairEntry(
                index=p + 1,
                u=int(pairs.u[p]) + 1,
                v=int(pairs.v[p]) + 1,
                d=pairs.d[p].tolist(),
                max_delay=int(bound[p]),
            )
            for p in range(len(pairs))
        ],
    )


def load_preset(name: str) -> MicArray:
    """Like load_array, restricted to named presets (no filesystem paths)."""
    if name not in list_presets():
        raise NotFoundError(f"Unknown array preset: {name}", resource="array")
    return load_array(name)
