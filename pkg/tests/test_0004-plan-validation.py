# BSD 3-Clause License; see LICENSE

from __future__ import absolute_import

import pytest

import cup48
import cup48.formats
from cup48.formats import (
    BestThird,
    DrawSlot,
    Fixture,
    FormatPlan,
    GroupRank,
    LoserOf,
    PlanError,
    Tier,
    WinnerOf,
)


def mini_fixtures():
    return [
        Fixture("M01", "R1", "main", DrawSlot(0), DrawSlot(1)),
        Fixture("M02", "R1", "main", DrawSlot(2), DrawSlot(3)),
        Fixture("M03", "R2", "main", WinnerOf("M01"), WinnerOf("M02")),
        Fixture("M04", "R2", "repechage", LoserOf("M01"), LoserOf("M02")),
        Fixture("M05", "R3", "repechage", LoserOf("M03"), WinnerOf("M04")),
        Fixture("M06", "final", "final-stage", WinnerOf("M03"), WinnerOf("M05")),
    ]


def mini_tiers():
    return [Tier(3, 1, ["M05"]), Tier(4, 1, ["M04"])]


def test_valid_custom_plan():
    plan = FormatPlan(
        "mini", mini_fixtures(), "double-elimination", final="M06", tiers=mini_tiers()
    )
    assert plan.num_slots == 4
    assert plan.lives == 2
    assert plan.topological_order() == ["M01", "M02", "M03", "M04", "M05", "M06"]
    assert plan.predecessors("M05") == ("M03", "M04")
    assert "M04" in plan
    assert "M07" not in plan


def test_topological_order_is_not_plan_order():
    fixtures = mini_fixtures()
    fixtures = fixtures[2:3] + fixtures[:2] + fixtures[3:]
    plan = FormatPlan(
        "mini", fixtures, "double-elimination", final="M06", tiers=mini_tiers()
    )
    assert [f.id for f in plan.fixtures][0] == "M03"
    assert plan.topological_order() == ["M01", "M02", "M03", "M04", "M05", "M06"]


def test_cycle():
    fixtures = [
        Fixture("M01", "R1", "main", DrawSlot(0), DrawSlot(1)),
        Fixture("M02", "R2", "main", WinnerOf("M03"), DrawSlot(2)),
        Fixture("M03", "R2", "main", WinnerOf("M02"), DrawSlot(3)),
    ]
    with pytest.raises(PlanError) as err:
        FormatPlan("cyclic", fixtures, "double-elimination", final="M03")
    assert "cycle" in str(err.value)


def test_dangling_reference():
    fixtures = mini_fixtures()
    fixtures[4] = Fixture("M05", "R3", "repechage", LoserOf("M03"), WinnerOf("M99"))
    with pytest.raises(PlanError) as err:
        FormatPlan("mini", fixtures, "double-elimination", final="M06", tiers=mini_tiers())
    assert "M99" in str(err.value)


def test_self_reference():
    fixtures = mini_fixtures()
    fixtures[4] = Fixture("M05", "R3", "repechage", LoserOf("M03"), WinnerOf("M05"))
    with pytest.raises(PlanError):
        FormatPlan("mini", fixtures, "double-elimination", final="M06", tiers=mini_tiers())


def test_standard_names_fix_the_count():
    with pytest.raises(PlanError) as err:
        FormatPlan(
            "double-elim-48",
            mini_fixtures(),
            "double-elimination",
            final="M06",
            tiers=mini_tiers(),
        )
    assert "96" in str(err.value)


def test_duplicate_ids():
    fixtures = mini_fixtures()
    fixtures[1] = Fixture("M01", "R1", "main", DrawSlot(2), DrawSlot(3))
    with pytest.raises(PlanError):
        FormatPlan("mini", fixtures, "double-elimination", final="M06", tiers=mini_tiers())


def test_draw_slots():
    fixtures = mini_fixtures()
    fixtures[1] = Fixture("M02", "R1", "main", DrawSlot(1), DrawSlot(3))
    with pytest.raises(PlanError):
        FormatPlan("mini", fixtures, "double-elimination", final="M06", tiers=mini_tiers())

    fixtures = mini_fixtures()
    fixtures[1] = Fixture("M02", "R1", "main", DrawSlot(4), DrawSlot(3))
    with pytest.raises(PlanError):
        FormatPlan("mini", fixtures, "double-elimination", final="M06", tiers=mini_tiers())

    with pytest.raises(ValueError):
        DrawSlot(-1)


def test_modes():
    fixtures = mini_fixtures()
    fixtures[0] = Fixture("M01", "R1", "main", DrawSlot(0), DrawSlot(1), mode="draw-allowed")
    with pytest.raises(PlanError):
        FormatPlan("mini", fixtures, "double-elimination", final="M06", tiers=mini_tiers())

    fixtures = [
        Fixture("M01", "G1", "group", DrawSlot(0), DrawSlot(1), mode="must-decide", group="A"),
    ]
    with pytest.raises(PlanError):
        FormatPlan("groups", fixtures, "group-knockout", final="M01", groups={"A": (0, 1)})


def test_fixture_arguments():
    with pytest.raises(ValueError):
        Fixture("M01", "R1", "consolation", DrawSlot(0), DrawSlot(1))
    with pytest.raises(TypeError):
        Fixture("M01", "R1", "main", 0, DrawSlot(1))
    with pytest.raises(ValueError):
        Fixture("M01", "R1", "main", DrawSlot(0), DrawSlot(1), mode="sudden-death")
    assert Fixture("M01", "G1", "group", DrawSlot(0), DrawSlot(1), group="A").mode == "draw-allowed"
    assert Fixture("M01", "R1", "repechage", DrawSlot(0), DrawSlot(1)).is_repechage
    assert not Fixture("M01", "R1", "main", DrawSlot(0), DrawSlot(1)).is_repechage


def test_positions():
    with pytest.raises(PlanError):
        FormatPlan(
            "mini",
            mini_fixtures(),
            "double-elimination",
            final="M06",
            tiers=mini_tiers()[:1],
        )
    with pytest.raises(PlanError):
        FormatPlan(
            "mini",
            mini_fixtures(),
            "double-elimination",
            final="M06",
            tiers=[Tier(3, 2, ["M05"]), Tier(4, 1, ["M04"])],
        )
    with pytest.raises(PlanError):
        FormatPlan("mini", mini_fixtures(), "double-elimination", final="M07", tiers=mini_tiers())
    with pytest.raises(PlanError):
        FormatPlan(
            "mini",
            mini_fixtures(),
            "double-elimination",
            final="M06",
            tiers=[Tier(3, 1, ["M05"]), Tier(4, 1, ["M99"])],
        )


def test_classification_rule():
    with pytest.raises(PlanError):
        FormatPlan("mini", mini_fixtures(), "swiss", final="M06", tiers=mini_tiers())


def group_plan(extra=(), groups=None, best_thirds=0):
    fixtures = [
        Fixture("M01", "G1", "group", DrawSlot(0), DrawSlot(1), group="A"),
        Fixture("M02", "G1", "group", DrawSlot(3), DrawSlot(4), group="B"),
        Fixture("M03", "G2", "group", DrawSlot(0), DrawSlot(2), group="A"),
        Fixture("M04", "G2", "group", DrawSlot(3), DrawSlot(5), group="B"),
        Fixture("M05", "G3", "group", DrawSlot(1), DrawSlot(2), group="A"),
        Fixture("M06", "G3", "group", DrawSlot(4), DrawSlot(5), group="B"),
        Fixture("M07", "final", "final-stage", GroupRank("A", 1), GroupRank("B", 1)),
    ] + list(extra)
    return FormatPlan(
        "two-groups",
        fixtures,
        "group-knockout",
        final="M07",
        tiers=[Tier(3, 4, None)],
        groups=groups if groups is not None else {"A": (0, 1, 2), "B": (3, 4, 5)},
        best_thirds=best_thirds,
    )


def test_group_plans():
    plan = group_plan()
    assert plan.num_slots == 6
    assert plan.group_fixtures("A") == ("M01", "M03", "M05")
    assert plan.predecessors("M07") == ("M01", "M02", "M03", "M04", "M05", "M06")
    with pytest.raises(PlanError):
        plan.group_fixtures("Z")


def test_group_plan_errors():
    # slot 2 placed in group B but played in group A
    with pytest.raises(PlanError):
        group_plan(groups={"A": (0, 1), "B": (2, 3, 4, 5)})

    # a best-third slot without best_thirds
    with pytest.raises(PlanError):
        group_plan(
            extra=[Fixture("M08", "X", "knockout", BestThird(1), GroupRank("A", 2))]
        )

    # a place beyond the size of the group
    with pytest.raises(PlanError):
        group_plan(
            extra=[Fixture("M08", "X", "knockout", GroupRank("A", 4), GroupRank("B", 2))]
        )

    with pytest.raises(PlanError):
        group_plan(
            extra=[Fixture("M08", "X", "knockout", GroupRank("C", 1), GroupRank("B", 2))]
        )
