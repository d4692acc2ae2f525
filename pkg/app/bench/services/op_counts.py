"""Analytic per-block operation counts of SRP-PHAT and SMP-PHAT."""

from app.bench.models import MethodCounts, OpCounts
from app.core.config import settings
from app.core.exceptions import ValidationError
from app.geometry.models import MicArray
from app.geometry.services import build_doa_grid, enumerate_pairs
from app.merging.services import MergePlanService


def count_ops(pairs: int, groups: int, frame_size: int, directions: int) -> OpCounts:
    """Inverse transforms, lookups and real additions per localization block.

    SRP: P transforms, P*I lookups, P*I additions.
    SMP: Q transforms, Q*I lookups, Q*I + (N + 2)(P - Q) additions.
    """
    if not 1 <= groups <= pairs:
        raise ValidationError(
            f"Group count must satisfy 1 <= Q <= P, got P={pairs}, Q={groups}", field="groups"
        )
    if frame_size < 2:
        raise ValidationError(f"Frame size must be >= 2, got {frame_size}", field="n")
    if directions < 1:
        raise ValidationError(f"Direction count must be >= 1, got {directions}", field="directions")

    srp = MethodCounts(
        iffts=pairs,
        lookups=pairs * directions,
        additions=pairs * directions,
    )
    smp = MethodCounts(
        iffts=groups,
        lookups=groups * directions,
        additions=groups * directions + (frame_size + 2) * (pairs - groups),
    )
    return OpCounts(
        pairs=pairs,
        groups=groups,
        frame_size=frame_size,
        directions=directions,
        srp=srp,
        smp=smp,
    )


def counts_for_array(
    array: MicArray,
    n: int | None = None,
    grid_level: int | None = None,
    epsilon: float | None = None,
) -> OpCounts:
    """Counts for an array's pairs, its merge plan and a hemisphere grid."""
    n = settings.FRAME_SIZE if n is None else n
    grid_level = settings.GRID_LEVEL if grid_level is None else grid_level
    pairs = enumerate_pairs(array)
    plan = MergePlanService.build_merge_plan(pairs, epsilon)
    grid = build_doa_grid(grid_level, True)
    return count_ops(len(pairs), plan.q, n, len(grid))
