# BSD 3-Clause License; see LICENSE

"""
Builds the 96-fixture double-elimination plan for 48 teams.

A team goes out after its second defeat; its first defeat sends it from the
main bracket into the repechage. Fixtures ``M01`` to ``M96`` are wired as:

* ``R1`` (M01-M24): the draw, slots ``2i`` and ``2i+1``.
* ``R2`` main (M25-M36) and repechage (M37-M48): winners and losers of
  neighboring ``R1`` matches. Repechage ``R2`` losers are eliminated.
* ``R3`` main (M49-M54) and repechage (M55-M66): repechage winner ``i``
  meets the loser of main ``R2`` match ``i ^ 1``, so each half of the draw
  stays together without rematches.
* The returnee step promotes two of the 18 one-loss teams back into the
  main bracket; their first defeat no longer counts toward elimination.
* ``R4`` main (M67-M70): two pairings of undefeated teams and two of an
  undefeated team against a returnee, one per half. ``R4`` repechage
  (M71-M78) pairs the 16 teams left in the pool.
* ``R5`` main (M79-M80) produces the main-route semifinalists; ``R5``
  repechage (M81-M86) sets the ``R4`` main losers against ``R4`` repechage
  winners.
* The knockout of eight (M87-M92) turns the ``R5`` main losers and the six
  ``R5`` repechage winners into the two repechage-route semifinalists.
* Semifinals (M93-M94) cross the routes and halves; M95 is the third-place
  match and M96 the final.

An undefeated champion plays 7 matches and a champion from the repechage
route plays 9.
"""

from __future__ import absolute_import

import cup48._util
import cup48.const
from cup48.formats import (
    DrawSlot,
    Fixture,
    FormatPlan,
    LoserOf,
    Remaining,
    Returnee,
    Tier,
    WinnerOf,
    double_elimination,
)

_main = cup48.const.main
_repechage = cup48.const.repechage
_final_stage = cup48.const.final_stage


def _ids(first, count):
    return [cup48._util.fixture_label(first + i) for i in range(count)]


def build_double_elim_plan():
    """
    Returns the standard ``"double-elim-48"``
    :doc:`cup48.formats.FormatPlan`.
    """
    fixtures = []

    def add(ids, round_tag, bracket, sources):
        for fixture_id, (home, away) in zip(ids, sources):
            fixtures.append(Fixture(fixture_id, round_tag, bracket, home, away))

    r1 = _ids(1, 24)
    add(r1, "R1", _main, [(DrawSlot(2 * i), DrawSlot(2 * i + 1)) for i in range(24)])

    r2_main = _ids(25, 12)
    add(
        r2_main,
        "R2",
        _main,
        [(WinnerOf(r1[2 * k]), WinnerOf(r1[2 * k + 1])) for k in range(12)],
    )
    r2_rep = _ids(37, 12)
    add(
        r2_rep,
        "R2",
        _repechage,
        [(LoserOf(r1[2 * k]), LoserOf(r1[2 * k + 1])) for k in range(12)],
    )

    r3_main = _ids(49, 6)
    add(
        r3_main,
        "R3",
        _main,
        [(WinnerOf(r2_main[2 * j]), WinnerOf(r2_main[2 * j + 1])) for j in range(6)],
    )
    r3_rep = _ids(55, 12)
    add(
        r3_rep,
        "R3",
        _repechage,
        [(WinnerOf(r2_rep[i]), LoserOf(r2_main[i ^ 1])) for i in range(12)],
    )

    r4_main = _ids(67, 4)
    add(
        r4_main,
        "R4",
        _main,
        [
            (WinnerOf(r3_main[0]), WinnerOf(r3_main[1])),
            (WinnerOf(r3_main[2]), Returnee(1)),
            (WinnerOf(r3_main[3]), WinnerOf(r3_main[4])),
            (WinnerOf(r3_main[5]), Returnee(2)),
        ],
    )
    r4_rep = _ids(71, 8)
    add(
        r4_rep,
        "R4",
        _repechage,
        [(Remaining(2 * i + 1), Remaining(2 * i + 2)) for i in range(8)],
    )

    r5_main = _ids(79, 2)
    add(
        r5_main,
        "R5",
        _main,
        [
            (WinnerOf(r4_main[0]), WinnerOf(r4_main[1])),
            (WinnerOf(r4_main[2]), WinnerOf(r4_main[3])),
        ],
    )
    r5_rep = _ids(81, 6)
    add(
        r5_rep,
        "R5",
        _repechage,
        [(LoserOf(r4_main[i]), WinnerOf(r4_rep[i])) for i in range(4)]
        + [
            (WinnerOf(r4_rep[4]), WinnerOf(r4_rep[5])),
            (WinnerOf(r4_rep[6]), WinnerOf(r4_rep[7])),
        ],
    )

    # L(M79) stays on the path that meets W(M80) in the semifinal, and the
    # other way around
    ko8_first = _ids(87, 4)
    add(
        ko8_first,
        "KO8-1",
        _repechage,
        [
            (LoserOf(r5_main[0]), WinnerOf(r5_rep[3])),
            (WinnerOf(r5_rep[1]), WinnerOf(r5_rep[4])),
            (LoserOf(r5_main[1]), WinnerOf(r5_rep[0])),
            (WinnerOf(r5_rep[2]), WinnerOf(r5_rep[5])),
        ],
    )
    ko8_second = _ids(91, 2)
    add(
        ko8_second,
        "KO8-2",
        _repechage,
        [
            (WinnerOf(ko8_first[0]), WinnerOf(ko8_first[1])),
            (WinnerOf(ko8_first[2]), WinnerOf(ko8_first[3])),
        ],
    )

    semifinals = _ids(93, 2)
    add(
        semifinals,
        "SF",
        _final_stage,
        [
            (WinnerOf(r5_main[0]), WinnerOf(ko8_second[1])),
            (WinnerOf(r5_main[1]), WinnerOf(ko8_second[0])),
        ],
    )
    third_place, final = _ids(95, 2)
    add(
        [third_place],
        "third-place",
        _final_stage,
        [(LoserOf(semifinals[0]), LoserOf(semifinals[1]))],
    )
    add([final], "final", _final_stage, [(WinnerOf(semifinals[0]), WinnerOf(semifinals[1]))])

    tiers = [
        Tier(5, 2, ko8_second, "knockout-of-8 second round"),
        Tier(7, 4, ko8_first, "knockout-of-8 first round"),
        Tier(11, 6, r5_rep, "R5 repechage"),
        Tier(17, 8, r4_rep, "R4 repechage"),
        Tier(25, 12, r3_rep, "R3 repechage"),
        Tier(37, 12, r2_rep, "R2 repechage"),
    ]

    return FormatPlan(
        cup48.const.double_elim,
        fixtures,
        double_elimination,
        final=final,
        third_place=third_place,
        tiers=tiers,
        pool_rounds=("R3",),
    )


def semifinal_feeders(plan):
    """
    Ids of the fixtures whose winners reach the semifinals through the main
    bracket (``R5`` main) and through the repechage (knockout of eight).
    """
    main = [f.id for f in plan.fixtures if f.round_tag == "R5" and f.bracket == _main]
    repechage = [f.id for f in plan.fixtures if f.round_tag == "KO8-2"]
    return main, repechage
