"""Icosahedral DoA grid construction.

The base icosahedron has its poles on the z axis, an upper ring of five
vertices at z = +1/sqrt(5) and a lower ring rotated by 36 degrees at
z = -1/sqrt(5). Each level splits every triangle in four and projects the
edge midpoints onto the unit sphere. Edge midpoints between the two rings
fall exactly on the equator, so a hemisphere grid that keeps z >= -1e-6
contains the equator ring (80 directions at level 4, 1321 in total).
"""

from functools import lru_cache

import numpy as np
import structlog
from numpy.typing import NDArray
from scipy.spatial import cKDTree

from app.core.constants import HEMISPHERE_Z_FLOOR, MAX_GRID_LEVEL, UNIT_NORM_TOLERANCE
from app.core.exceptions import ValidationError
from app.geometry.models import DoaGrid

logger = structlog.get_logger(__name__)


def _icosahedron() -> tuple[list[NDArray[np.float64]], list[tuple[int, int, int]]]:
    ring_z = 1.0 / np.sqrt(5.0)
    ring_r = 2.0 / np.sqrt(5.0)

    vertices: list[NDArray[np.float64]] = [np.array([0.0, 0.0, 1.0])]
    for k in range(5):
        angle = np.radians(72.0 * k)
        vertices.append(np.array([ring_r * np.cos(angle), ring_r * np.sin(angle), ring_z]))
    for k in range(5):
        angle = np.radians(36.0 + 72.0 * k)
        vertices.append(np.array([ring_r * np.cos(angle), ring_r * np.sin(angle), -ring_z]))
    vertices.append(np.array([0.0, 0.0, -1.0]))

    north, south = 0, 11
    faces: list[tuple[int, int, int]] = []
    for k in range(5):
        upper, upper_next = 1 + k, 1 + (k + 1) % 5
        lower, lower_next = 6 + k, 6 + (k + 1) % 5
        faces.append((north, upper, upper_next))
        faces.append((upper, lower, upper_next))
        faces.append((lower, lower_next, upper_next))
        faces.append((south, lower_next, lower))
    return vertices, faces


def _subdivide(
    vertices: list[NDArray[np.float64]], faces: list[tuple[int, int, int]]
) -> list[tuple[int, int, int]]:
    midpoints: dict[tuple[int, int], int] = {}

    def midpoint(a: int, b: int) -> int:
        key = (a, b) if a < b else (b, a)
        if key not in midpoints:
            point = (vertices[a] + vertices[b]) / 2.0
            vertices.append(point / np.linalg.norm(point))
            midpoints[key] = len(vertices) - 1
        return midpoints[key]

    refined: list[tuple[int, int, int]] = []
    for a, b, c in faces:
        ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
        refined.extend([(a, ab, ca), (ab, b, bc), (ca, bc, c), (ab, bc, ca)])
    return refined


def _deduplicate(points: NDArray[np.float64]) -> NDArray[np.float64]:
    """Drop later copies of points closer than the unit-norm tolerance."""
    duplicates = {j for _, j in cKDTree(points).query_pairs(r=UNIT_NORM_TOLERANCE)}
    if not duplicates:
        return points
    keep = [i for i in range(points.shape[0]) if i not in duplicates]
    return points[keep]


@lru_cache(maxsize=16)
def build_doa_grid(subdivision_level: int, hemisphere: bool = True) -> DoaGrid:
    """Recursively subdivided icosahedron projected on the unit sphere.

    Args:
        subdivision_level: Number of 4-way subdivisions, 0..6.
        hemisphere: Keep only directions with z >= -1e-6.

    Returns:
        DoaGrid with ``10 * 4**level + 2`` directions for the full sphere.
    """
    if not 0 <= subdivision_level <= MAX_GRID_LEVEL:
        raise ValidationError(
            f"Grid subdivision level must be in 0..{MAX_GRID_LEVEL}, got {subdivision_level}",
            field="subdivision_level",
        )

    vertices, faces = _icosahedron()
    for _ in range(subdivision_level):
        faces = _subdivide(vertices, faces)

    points = _deduplicate(np.vstack(vertices))
    if hemisphere:
        points = points[points[:, 2] >= HEMISPHERE_Z_FLOOR]

    grid = DoaGrid(dirs=points, level=subdivision_level, hemisphere=hemisphere)
    logger.debug(
        "doa_grid_built", level=subdivision_level, hemisphere=hemisphere, directions=len(grid)
    )
    return grid
