# BSD 3-Clause License; see LICENSE

from __future__ import absolute_import

import collections
import itertools

import pytest

import cup48
import cup48.const
import cup48.formats
import cup48.model
import cup48.tournament
from cup48.formats import DrawSlot, Fixture, FormatPlan, LoserOf, Tier, WinnerOf
from cup48.model import MatchScore, Roster, Team
from cup48.rng import RngStream


@pytest.fixture(scope="module")
def plan():
    return cup48.formats.build_plan("double-elim-48")


def test_invariants_over_seeds(plan):
    roster = Roster.default()
    for seed in range(20):
        result = cup48.run_tournament(plan, roster, RngStream(seed))
        assert cup48.tournament.check_double_elim_invariants(result, plan) == []

        assert len(result.match_log) == 96
        assert [m.fixture_id for m in result.match_log] == plan.topological_order()
        assert sorted(result.classification) == sorted(roster.ids)
        assert len(result.returnees) == 2
        assert len(result.eliminated_in) == 44
        assert len(result.semifinal_routes) == 4
        assert set(result.semifinal_routes.values()) <= set(["main", "repechage"])


def test_returnee_pool_closes_after_round_three(plan):
    # M67 needs no returnee, so it is played before the pool is used in M68
    order = plan.topological_order()
    assert order.index("M67") < order.index("M68")

    roster = Roster.default()
    for seed in range(100, 300):
        result = cup48.run_tournament(plan, roster, RngStream(seed))
        m67 = [m for m in result.match_log if m.fixture_id == "M67"][0]
        loser = m67.away if m67.score.winner == "home" else m67.home
        assert loser not in result.returnees
        for team_id in result.returnees:
            assert result.record(team_id).defeats >= 1
        assert cup48.tournament.check_double_elim_invariants(result, plan) == []


@pytest.mark.slow
def test_invariants_over_a_thousand_runs(plan):
    roster = Roster.default()
    champion_paths = collections.Counter()
    for seed in range(1000):
        result = cup48.run_tournament(plan, roster, RngStream(seed))
        assert cup48.tournament.check_double_elim_invariants(result, plan) == []
        assert len(result.eliminated_in) == 44
        champion_paths[len(result.matches_of(result.champion))] += 1
    assert set(champion_paths) == set([7, 9])


def test_eliminated_teams_and_strikes(plan):
    result = cup48.run_tournament(plan, Roster.default(), RngStream(7))
    returnees = set(result.returnees)
    for team_id, fixture_id in result.eliminated_in.items():
        assert plan[fixture_id].bracket in ("main", "repechage")
        expected = 3 if team_id in returnees else 2
        assert result.record(team_id).defeats == expected

    finalists = set(result.classification[:4])
    assert finalists.isdisjoint(result.eliminated_in)
    # a returnee re-enters the main bracket in the fourth round
    for team_id in result.returnees:
        rounds = [plan[m.fixture_id].round_tag for m in result.matches_of(team_id)]
        assert rounds[:3] == ["R1", "R2", "R3"]
        assert rounds[3] == "R4"


def test_classification_follows_tiers(plan):
    result = cup48.run_tournament(plan, Roster.default(), RngStream(11))
    final = [m for m in result.match_log if m.fixture_id == plan.final][0]
    winner = final.home if final.score.winner == "home" else final.away
    assert result.champion == winner
    assert result.position_of(winner) == 1

    eliminated_in = result.eliminated_in
    for tier in plan.tiers:
        members = result.classification[tier.first_position - 1 : tier.last_position]
        assert all(eliminated_in[team_id] in tier.fixtures for team_id in members)


def test_reproducible(plan):
    roster = Roster.default()
    one = cup48.run_tournament(plan, roster, RngStream(2024))
    two = cup48.run_tournament(plan, roster, RngStream(2024))
    three = cup48.run_tournament(plan, roster, RngStream(2025))
    assert one.match_log == two.match_log
    assert one.classification == two.classification
    assert one.draw == two.draw
    assert one.match_log != three.match_log


def test_roster_size(plan):
    teams = list(Roster.default())[:47]
    with pytest.raises(cup48.formats.PlanError):
        cup48.run_tournament(plan, teams, RngStream(1))


def test_undecided_knockout(plan):
    def always_level(home, away, mode, rng):
        return MatchScore(1, 1)

    with pytest.raises(cup48.tournament.TournamentError):
        cup48.run_tournament(plan, Roster.default(), RngStream(1), play=always_level)


def test_match_log_csv(plan, tmpdir):
    result = cup48.run_tournament(plan, Roster.default(), RngStream(3))
    path = str(tmpdir.join("log.csv"))
    result.write_match_log(path)
    with open(path) as file:
        lines = file.read().splitlines()
    assert lines[0] == "fixture_id,home,away,home_goals,away_goals,shootout_winner"
    assert len(lines) == 97
    assert lines[1].startswith("M01,")


def mini_plan():
    fixtures = [
        Fixture("M01", "R1", "main", DrawSlot(0), DrawSlot(1)),
        Fixture("M02", "R1", "main", DrawSlot(2), DrawSlot(3)),
        Fixture("M03", "R2", "main", WinnerOf("M01"), WinnerOf("M02")),
        Fixture("M04", "R2", "repechage", LoserOf("M01"), LoserOf("M02")),
        Fixture("M05", "R3", "repechage", LoserOf("M03"), WinnerOf("M04")),
        Fixture("M06", "final", "final-stage", WinnerOf("M03"), WinnerOf("M05")),
    ]
    return FormatPlan(
        "mini-double-elim",
        fixtures,
        "double-elimination",
        final="M06",
        tiers=[Tier(3, 1, ["M05"]), Tier(4, 1, ["M04"])],
    )


def scripted(bits):
    outcomes = iter(bits)

    def play(home, away, mode, rng):
        if next(outcomes):
            return MatchScore(1, 0)
        else:
            return MatchScore(0, 1)

    return play


def test_miniature_exhaustive():
    plan = mini_plan()
    roster = [Team("T{0}".format(i), i + 1) for i in range(4)]
    champions = collections.Counter()

    for bits in itertools.product([True, False], repeat=6):
        result = cup48.run_tournament(plan, roster, RngStream(5), play=scripted(bits))
        assert len(result.match_log) == 6

        # replay the bracket by hand from the draw
        draw = result.draw
        winners, losers = {}, {}

        def settle(fixture_id, home, away, home_wins):
            winners[fixture_id] = home if home_wins else away
            losers[fixture_id] = away if home_wins else home

        settle("M01", draw[0], draw[1], bits[0])
        settle("M02", draw[2], draw[3], bits[1])
        settle("M03", winners["M01"], winners["M02"], bits[2])
        settle("M04", losers["M01"], losers["M02"], bits[3])
        settle("M05", losers["M03"], winners["M04"], bits[4])
        settle("M06", winners["M03"], winners["M05"], bits[5])

        expected = [winners["M06"], losers["M06"], losers["M05"], losers["M04"]]
        assert list(result.classification) == expected
        assert result.eliminated_in == {losers["M05"]: "M05", losers["M04"]: "M04"}
        for team_id in result.eliminated_in:
            assert result.record(team_id).defeats == 2
        champions[result.champion] += 1

    # every team can win, whichever slot it was drawn into
    assert len(champions) == 4
    assert sum(champions.values()) == 64


def test_miniature_final_stage_defeats_do_not_eliminate():
    plan = mini_plan()
    roster = [Team("T{0}".format(i), i + 1) for i in range(4)]
    result = cup48.run_tournament(
        plan, roster, RngStream(5), play=scripted([True, True, True, True, True, True])
    )
    # the runner-up lost in the second round and in the final
    runner_up = result.classification[1]
    assert runner_up not in result.eliminated_in
    assert result.record(runner_up).defeats == 2


def test_draw_assignment(plan):
    roster = Roster.default()
    draw = cup48.tournament.draw_assignment(roster, plan, RngStream(3))
    assert sorted(draw) == list(range(48))
    assert sorted(team.id for team in draw.values()) == sorted(roster.ids)
    assert draw != cup48.tournament.draw_assignment(roster, plan, RngStream(4))

    result = cup48.run_tournament(plan, roster, RngStream(3))
    assert result.draw == dict((slot, team.id) for slot, team in draw.items())
