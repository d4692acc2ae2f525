"""Unit tests for merge planning and plan validation."""

from dataclasses import replace

import numpy as np
import pytest

from app.core.exceptions import DimensionMismatchError, ValidationError
from app.geometry.models import MicArray
from app.geometry.services import enumerate_pairs
from app.merging.models import MergeGroup, MergeMember, MergePlan
from app.merging.services import MergePlanService, plan_to_document, validation_to_document


def _structure(plan: MergePlan) -> list[tuple[int, tuple[tuple[int, int], ...]]]:
    return [
        (group.ref, tuple((m.pair, m.sign) for m in group.members)) for group in plan.groups
    ]


class TestBuildMergePlan:
    """Tests for MergePlanService.build_merge_plan."""

    @pytest.mark.parametrize(
        ("name", "expected_q"),
        [
            ("respeaker-usb", 4),
            ("respeaker-core", 9),
            ("minidsp-uma", 12),
            ("matrix-creator", 16),
            ("square-5", 6),
        ],
    )
    def test_group_counts(self, plans, name, expected_q):
        """Group count per preset."""
        assert plans[name].q == expected_q

    def test_respeaker_usb_groups(self, plans):
        """USB groups, references and signs."""
        assert _structure(plans["respeaker-usb"]) == [
            (0, ((0, 1), (5, -1))),
            (1, ((1, 1),)),
            (2, ((2, 1), (3, 1))),
            (4, ((4, 1),)),
        ]

    def test_square_group_sizes(self, plans):
        """Square-plus-centre groups have sizes 1, 1, 2, 2, 2, 2."""
        sizes = sorted(len(group) for group in plans["square-5"].groups)
        assert sizes == [1, 1, 2, 2, 2, 2]

    def test_groups_partition_pairs(self, plans, pair_sets):
        """Every pair is in exactly one group."""
        for name, plan in plans.items():
            members = sorted(pair for group in plan.groups for pair in group.pairs)
            assert members == list(range(len(pair_sets[name])))
            assert plan.q <= plan.pair_count

    def test_reference_is_lowest_member_with_positive_sign(self, plans):
        """The reference is the lowest member and carries sign +1."""
        for plan in plans.values():
            for group in plan.groups:
                assert group.ref == min(group.pairs)
                assert group.members[0] == MergeMember(pair=group.ref, sign=1)

    def test_groups_ordered_by_seed(self, plans):
        """Groups are ordered by their reference pair."""
        for plan in plans.values():
            refs = plan.refs.tolist()
            assert refs == sorted(refs)

    def test_members_are_parallel_and_equidistant(self, plans, pair_sets):
        """Members equal their reference vector up to sign."""
        for name, plan in plans.items():
            d = pair_sets[name].d
            for group in plan.groups:
                ref = d[group.ref]
                for member in group.members:
                    dot = float(np.dot(d[member.pair], ref))
                    norms = np.linalg.norm(d[member.pair]) * np.linalg.norm(ref)
                    assert abs(abs(dot) - norms) < plan.epsilon
                    assert member.sign == int(np.sign(dot))

    def test_parallel_pairs_of_different_lengths_never_merge(self):
        """Collinear pairs of different lengths stay apart."""
        line = MicArray(
            name="line", mics=np.array([[0.0, 0.0, 0.0], [0.05, 0.0, 0.0], [0.15, 0.0, 0.0]])
        )
        plan = MergePlanService.build_merge_plan(enumerate_pairs(line))
        assert plan.q == 3

    def test_scaling_positions_keeps_structure(self, arrays, plans):
        """Scaling the array keeps the plan."""
        for name, array in arrays.items():
            scaled = MicArray(name=name, mics=array.mics * 2.0)
            plan = MergePlanService.build_merge_plan(enumerate_pairs(scaled))
            assert _structure(plan) == _structure(plans[name])

    def test_replanning_representatives_gives_singletons(self, plans, pair_sets):
        """Representatives of a plan do not merge again."""
        for name, plan in plans.items():
            representatives = MergePlanService.representative_pairs(plan, pair_sets[name])
            replanned = MergePlanService.build_merge_plan(representatives)
            assert replanned.q == plan.q
            assert all(len(group) == 1 for group in replanned.groups)

    @pytest.mark.parametrize("epsilon", [0.0, -1e-4])
    def test_rejects_non_positive_epsilon(self, usb_pairs, epsilon):
        """Tolerance must be positive."""
        with pytest.raises(ValidationError):
            MergePlanService.build_merge_plan(usb_pairs, epsilon)

    def test_epsilon_override(self, usb_pairs):
        """An explicit tolerance is kept on the plan."""
        plan = MergePlanService.build_merge_plan(usb_pairs, epsilon=1e-6)
        assert plan.epsilon == 1e-6
        assert plan.q == 4


class TestValidatePlan:
    """Tests for the exhaustive merged-TDoA check."""

    @pytest.mark.parametrize(
        "name", ["respeaker-usb", "respeaker-core", "minidsp-uma", "matrix-creator", "square-5"]
    )
    def test_preset_plans_pass(self, plans, tables, name):
        """Preset plans hold on every pair and direction."""
        validation = MergePlanService.validate_plan(plans[name], tables[name])
        assert validation.valid
        assert validation.violation is None
        assert validation.checked == plans[name].pair_count * 1321

    def test_singleton_plan_is_valid(self, tables):
        """A plan without merges is valid."""
        plan = MergePlan(
            groups=tuple(
                MergeGroup(ref=p, members=(MergeMember(pair=p, sign=1),)) for p in range(6)
            ),
            epsilon=1e-4,
            pair_count=6,
        )
        assert MergePlanService.validate_plan(plan, tables["respeaker-usb"]).valid

    def test_corrupted_sign_reports_first_violation(self, plans, tables):
        """A flipped sign is reported at its first failing direction."""
        plan = plans["respeaker-usb"]
        table = tables["respeaker-usb"]
        first = plan.groups[0]
        corrupted_group = replace(
            first, members=(first.members[0], MergeMember(pair=5, sign=1))
        )
        corrupted = replace(plan, groups=(corrupted_group, *plan.groups[1:]))

        validation = MergePlanService.validate_plan(corrupted, table)

        expected_direction = int(np.flatnonzero(table.delays[0] != 0)[0])
        assert not validation.valid
        assert validation.violation is not None
        assert validation.violation.group == 0
        assert validation.violation.pair == 5
        assert validation.violation.direction == expected_direction
        assert validation.violation.actual == -validation.violation.expected

    def test_mismatched_dimensions(self, plans, tables):
        """Plan and table must cover the same pairs."""
        with pytest.raises(DimensionMismatchError):
            MergePlanService.validate_plan(plans["respeaker-usb"], tables["respeaker-core"])


class TestPlanDocuments:
    """Tests for the 1-based JSON rendering of plans."""

    def test_plan_document(self, plans):
        """Plan documents use 1-based references."""
        document = plan_to_document(plans["respeaker-usb"])
        assert document[0].model_dump() == {"ref": 1, "members": [(1, 1), (6, -1)]}
        assert [group.ref for group in document] == [1, 2, 3, 5]

    def test_matrix_creator_document_has_sixteen_groups(self, plans):
        """Matrix Creator document has 16 groups."""
        assert len(plan_to_document(plans["matrix-creator"])) == 16

    def test_violation_document_is_one_based(self, plans, tables):
        """Violations report 1-based pairs."""
        plan = plans["respeaker-usb"]
        first = plan.groups[0]
        corrupted = replace(
            plan,
            groups=(
                replace(first, members=(first.members[0], MergeMember(pair=5, sign=1))),
                *plan.groups[1:],
            ),
        )
        document = validation_to_document(
            MergePlanService.validate_plan(corrupted, tables["respeaker-usb"])
        )
        assert document.valid is False
        assert document.violation["pair"] == 6
