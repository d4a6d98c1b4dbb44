# BSD 3-Clause License; see LICENSE

"""
Builds the two group-stage formats for 48 teams.

* :doc:`cup48.formats.groups.build_group3_plan`: 16 groups of 3; the first
  two of each group go to a Round of 32. 80 fixtures.
* :doc:`cup48.formats.groups.build_group4_plan`: 12 groups of 4; the first
  two of each group and the 8 best third-placed teams go to a Round of 32.
  104 fixtures.

Group fixtures allow draws. In both formats group winners meet runners-up
in the Round of 32, and teams from the same group start in opposite halves
of the knockout bracket.
"""

from __future__ import absolute_import

import string

import cup48._util
import cup48.const
from cup48.formats import (
    BestThird,
    DrawSlot,
    Fixture,
    FormatPlan,
    GroupRank,
    Tier,
    WinnerOf,
    LoserOf,
    group_knockout,
)

_group = cup48.const.group
_knockout = cup48.const.knockout
_final_stage = cup48.const.final_stage

# round-robin pairings by round, as positions within a group
_rounds_of_3 = [[(0, 1)], [(0, 2)], [(1, 2)]]
_rounds_of_4 = [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]]


class _Builder(object):
    def __init__(self):
        self.fixtures = []

    def next_id(self):
        return cup48._util.fixture_label(len(self.fixtures) + 1)

    def add(self, round_tag, bracket, home, away, group=None):
        fixture_id = self.next_id()
        self.fixtures.append(Fixture(fixture_id, round_tag, bracket, home, away, group=group))
        return fixture_id

    def group_stage(self, num_groups, group_size, rounds):
        groups = {}
        for g in range(num_groups):
            groups[string.ascii_uppercase[g]] = tuple(
                group_size * g + i for i in range(group_size)
            )
        for r, pairings in enumerate(rounds):
            for g in range(num_groups):
                label = string.ascii_uppercase[g]
                slots = groups[label]
                for home, away in pairings:
                    self.add(
                        "G{0}".format(r + 1),
                        _group,
                        DrawSlot(slots[home]),
                        DrawSlot(slots[away]),
                        group=label,
                    )
        return groups

    def knockout(self, round_tag, pairs):
        return [
            self.add(round_tag, _knockout, WinnerOf(home), WinnerOf(away))
            for home, away in pairs
        ]

    def final_stage(self, quarterfinals):
        semifinals = [
            self.add("SF", _final_stage, WinnerOf(quarterfinals[0]), WinnerOf(quarterfinals[1])),
            self.add("SF", _final_stage, WinnerOf(quarterfinals[2]), WinnerOf(quarterfinals[3])),
        ]
        third_place = self.add(
            "third-place", _final_stage, LoserOf(semifinals[0]), LoserOf(semifinals[1])
        )
        final = self.add(
            "final", _final_stage, WinnerOf(semifinals[0]), WinnerOf(semifinals[1])
        )
        return third_place, final


def _knockout_tiers(r32, r16, qf):
    return [
        Tier(5, 4, qf, "quarterfinals"),
        Tier(9, 8, r16, "Round of 16"),
        Tier(17, 16, r32, "Round of 32"),
        Tier(33, 16, None, "group stage"),
    ]


def build_group3_plan():
    """
    Returns the standard ``"group-of-3"`` :doc:`cup48.formats.FormatPlan`.

    Groups ``A`` through ``P`` play ``A-B``, ``A-C``, ``B-C`` (by position in
    the group), one round at a time across all groups. In the Round of 32,
    groups are paired in draw order (``A`` with ``B``, ``C`` with ``D``, ...)
    and each winner meets the runner-up of the paired group.
    """
    builder = _Builder()
    groups = builder.group_stage(16, 3, _rounds_of_3)
    labels = sorted(groups)

    r32 = []
    for p in range(8):
        x, y = labels[2 * p], labels[2 * p + 1]
        r32.append(builder.add("R32", _knockout, GroupRank(x, 1), GroupRank(y, 2)))
        r32.append(builder.add("R32", _knockout, GroupRank(y, 1), GroupRank(x, 2)))

    top, bottom = r32[0::2], r32[1::2]
    r16 = builder.knockout(
        "R16",
        [(top[2 * i], top[2 * i + 1]) for i in range(4)]
        + [(bottom[2 * i], bottom[2 * i + 1]) for i in range(4)],
    )
    qf = builder.knockout("QF", [(r16[2 * i], r16[2 * i + 1]) for i in range(4)])
    third_place, final = builder.final_stage(qf)

    return FormatPlan(
        cup48.const.group_of_3,
        builder.fixtures,
        group_knockout,
        final=final,
        third_place=third_place,
        tiers=_knockout_tiers(r32, r16, qf),
        groups=groups,
    )


def build_group4_plan():
    """
    Returns the standard ``"group-of-4"`` :doc:`cup48.formats.FormatPlan`.

    Groups ``A`` through ``L`` play three rounds of two fixtures each. The
    Round of 32 takes the 12 winners, the 12 runners-up and the 8 best
    third-placed teams; the thirds fill the slots facing the winners of
    groups ``G`` to ``L`` and the runners-up of groups ``K`` and ``L``.
    """
    builder = _Builder()
    groups = builder.group_stage(12, 4, _rounds_of_4)
    labels = sorted(groups)

    def W(g):
        return GroupRank(labels[g], 1)

    def R(g):
        return GroupRank(labels[g], 2)

    pairs = [
        (W(6), BestThird(1)),
        (W(7), BestThird(2)),
        (W(8), BestThird(3)),
        (W(9), BestThird(4)),
        (W(10), BestThird(5)),
        (W(11), BestThird(6)),
        (R(10), BestThird(7)),
        (R(11), BestThird(8)),
        (W(0), R(1)),
        (W(1), R(0)),
        (W(2), R(3)),
        (W(3), R(2)),
        (W(4), R(5)),
        (W(5), R(4)),
        (R(6), R(9)),
        (R(7), R(8)),
    ]
    r32 = [builder.add("R32", _knockout, home, away) for home, away in pairs]

    # M73 ... M88 by index; halves keep group mates apart
    r16 = builder.knockout(
        "R16",
        [
            (r32[4], r32[8]),
            (r32[5], r32[10]),
            (r32[1], r32[12]),
            (r32[2], r32[14]),
            (r32[6], r32[9]),
            (r32[7], r32[11]),
            (r32[0], r32[13]),
            (r32[3], r32[15]),
        ],
    )
    qf = builder.knockout(
        "QF", [(r16[0], r16[2]), (r16[1], r16[3]), (r16[4], r16[6]), (r16[5], r16[7])]
    )
    third_place, final = builder.final_stage(qf)

    return FormatPlan(
        cup48.const.group_of_4,
        builder.fixtures,
        group_knockout,
        final=final,
        third_place=third_place,
        tiers=_knockout_tiers(r32, r16, qf),
        groups=groups,
        best_thirds=8,
    )
