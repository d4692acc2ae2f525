"""Offline merge planning and its exhaustive TDoA check."""

from dataclasses import asdict

import numpy as np
import structlog

from app.core.config import settings
from app.core.exceptions import DimensionMismatchError, ValidationError
from app.geometry.models import PairSet, TdoaTable
from app.merging.models import (
    MergeGroup,
    MergeMember,
    MergePlan,
    PlanValidation,
    PlanViolation,
)
from app.merging.schemas.plan import MergeGroupDocument, PlanValidationDocument

logger = structlog.get_logger(__name__)


class MergePlanService:
    """Builds and checks pair-merging plans."""

    @staticmethod
    def build_merge_plan(pairs: PairSet, epsilon: float | None = None) -> MergePlan:
        """Partition pairs into groups of parallel, equidistant pairs.

        Sweeps pairs in ascending index; the lowest unassigned pair seeds a new
        group and every later unassigned pair that passes both the parallelism
        test and the equal-norm test joins it.

        Args:
            pairs: Enumerated microphone pairs.
            epsilon: Absolute merge tolerance (m^2 for the parallel test, m for
                the norm test). Defaults to settings.MERGE_EPSILON.

        Returns:
            MergePlan with groups ordered by seed index.
        """
        if epsilon is None:
            epsilon = settings.MERGE_EPSILON
        if epsilon <= 0:
            raise ValidationError(f"Merge epsilon must be positive, got {epsilon}", field="epsilon")

        d = pairs.d
        norms = pairs.norms
        if np.any(norms == 0.0):
            zero = int(np.flatnonzero(norms == 0.0)[0])
            raise ValidationError(f"Pair {zero + 1} has a zero-length difference vector")

        count = len(pairs)
        assigned = np.zeros(count, dtype=bool)
        groups: list[MergeGroup] = []

        for seed in range(count):
            if assigned[seed]:
                continue
            assigned[seed] = True
            members = [MergeMember(pair=seed, sign=1)]

            for other in range(seed + 1, count):
                if assigned[other]:
                    continue
                dot = float(np.dot(d[seed], d[other]))
                parallel = abs(abs(dot) - norms[seed] * norms[other]) < epsilon
                equidistant = abs(norms[seed] - norms[other]) < epsilon
                if parallel and equidistant:
                    sign = int(np.sign(dot))
                    assert sign != 0, "parallel pairs cannot be orthogonal"
                    members.append(MergeMember(pair=other, sign=sign))
                    assigned[other] = True

            groups.append(MergeGroup(ref=seed, members=tuple(members)))

        plan = MergePlan(groups=tuple(groups), epsilon=epsilon, pair_count=count)
        logger.info("merge_plan_built", pairs=count, groups=plan.q, epsilon=epsilon)
        return plan

    @staticmethod
    def validate_plan(plan: MergePlan, table: TdoaTable) -> PlanValidation:
        """Check ``delays[p][i] == sign * delays[ref][i]`` for every member and direction.

        Returns:
            PlanValidation with the first offending (group, pair, direction)
            in group/member/direction order, or success.
        """
        if table.pair_count != plan.pair_count:
            raise DimensionMismatchError(
                "Plan and TDoA table were built from different pair sets",
                expected=plan.pair_count,
                actual=table.pair_count,
            )

        delays = table.delays
        checked = 0
        for g, group in enumerate(plan.groups):
            reference = delays[group.ref]
            for member in group.members:
                expected = member.sign * reference
                actual = delays[member.pair]
                mismatched = np.flatnonzero(actual != expected)
                if mismatched.size:
                    i = int(mismatched[0])
                    violation = PlanViolation(
                        group=g,
                        pair=member.pair,
                        direction=i,
                        expected=int(expected[i]),
                        actual=int(actual[i]),
                    )
                    logger.warning("merge_plan_violation", **asdict(violation))
                    return PlanValidation(
                        valid=False, checked=checked + i + 1, violation=violation
                    )
                checked += actual.shape[0]

        return PlanValidation(valid=True, checked=checked)

    @staticmethod
    def representative_pairs(plan: MergePlan, pairs: PairSet) -> PairSet:
        """PairSet holding only each group's reference pair, in group order."""
        return pairs.subset([group.ref for group in plan.groups])


def plan_to_document(plan: MergePlan) -> list[MergeGroupDocument]:
    """``[{"ref": p, "members": [[p, sign], ...]}, ...]`` with 1-based pair indices."""
    return [
        MergeGroupDocument(
            ref=group.ref + 1,
            members=[(member.pair + 1, member.sign) for member in group.members],
        )
        for group in plan.groups
    ]


def validation_to_document(validation: PlanValidation) -> PlanValidationDocument:
    violation = None
    if validation.violation is not None:
        violation = asdict(validation.violation)
        violation["pair"] += 1
    return PlanValidationDocument(
        valid=validation.valid, checked=validation.checked, violation=violation
    )
