# BSD 3-Clause License; see LICENSE

"""
Plays a :doc:`cup48.formats.FormatPlan` against a roster.

:doc:`cup48.tournament.run_tournament` draws the teams into the plan's slots,
resolves every fixture in topological order with
:doc:`cup48.model.play_match`, and returns an immutable
:doc:`cup48.tournament.TournamentResult` holding the match log, each team's
record and the classification of all teams.

Standings (in groups, in the returnee step and inside classification tiers)
order teams by points, goal difference and goals scored; remaining ties are
broken by a lot drawn from the run's :doc:`cup48.rng.RngStream`, never by
FIFA rank.
"""

from __future__ import absolute_import

import collections
import csv

import cup48._util
import cup48.const
import cup48.formats
import cup48.model
from cup48.formats import (
    BestThird,
    DrawSlot,
    GroupRank,
    LoserOf,
    PlanError,
    Remaining,
    Returnee,
    WinnerOf,
)


class TournamentError(RuntimeError):
    """
    Exception raised when a tournament cannot be completed or classified: a
    returnee pool of the wrong size, a team scheduled after its elimination,
    an undecided knockout match, or a final classification that does not fit
    the plan's tiers.
    """

    pass


Match = collections.namedtuple("Match", ["fixture_id", "home", "away", "score"])


class TeamRecord(object):
    """
    Args:
        wins (int): Regulation wins.
        draws (int): Regulation draws, including those settled by a shootout.
        losses (int): Regulation losses.
        shootout_wins (int): Drawn matches won on penalties.
        shootout_losses (int): Drawn matches lost on penalties.
        goals_for (int): Regulation goals scored.
        goals_against (int): Regulation goals conceded.

    Accumulated results of one team. A regulation win is worth 3 points and
    any regulation draw 1 point, on both sides of a shootout; a regulation
    loss is worth nothing. So a team that lost on penalties ranks above one
    that lost in regulation, all else being equal.
    """

    __slots__ = (
        "_wins",
        "_draws",
        "_losses",
        "_shootout_wins",
        "_shootout_losses",
        "_goals_for",
        "_goals_against",
    )

    def __init__(
        self,
        wins=0,
        draws=0,
        losses=0,
        shootout_wins=0,
        shootout_losses=0,
        goals_for=0,
        goals_against=0,
    ):
        self._wins = wins
        self._draws = draws
        self._losses = losses
        self._shootout_wins = shootout_wins
        self._shootout_losses = shootout_losses
        self._goals_for = goals_for
        self._goals_against = goals_against
        if shootout_wins + shootout_losses > draws:
            raise ValueError("more shootouts than draws in a TeamRecord")

    def __repr__(self):
        return (
            "TeamRecord(wins={0}, draws={1}, losses={2}, shootout_wins={3}, "
            "shootout_losses={4}, goals_for={5}, goals_against={6})".format(
                self._wins,
                self._draws,
                self._losses,
                self._shootout_wins,
                self._shootout_losses,
                self._goals_for,
                self._goals_against,
            )
        )

    def __eq__(self, other):
        return isinstance(other, TeamRecord) and all(
            getattr(self, x) == getattr(other, x) for x in TeamRecord.__slots__
        )

    def __ne__(self, other):
        return not self == other

    def copy(self):
        return TeamRecord(
            self._wins,
            self._draws,
            self._losses,
            self._shootout_wins,
            self._shootout_losses,
            self._goals_for,
            self._goals_against,
        )

    def add(self, goals_for, goals_against, shootout=None):
        """
        Args:
            goals_for (int): Regulation goals of this team.
            goals_against (int): Regulation goals of the opponent.
            shootout (None, True, or False): Whether this team won the
                shootout that followed a draw, if there was one.

        Adds one match to the record.
        """
        self._goals_for += goals_for
        self._goals_against += goals_against
        if goals_for > goals_against:
            self._wins += 1
        elif goals_for < goals_against:
            self._losses += 1
        else:
            self._draws += 1
            if shootout is True:
                self._shootout_wins += 1
            elif shootout is False:
                self._shootout_losses += 1

    @property
    def played(self):
        return self._wins + self._draws + self._losses

    @property
    def wins(self):
        return self._wins

    @property
    def draws(self):
        return self._draws

    @property
    def losses(self):
        return self._losses

    @property
    def shootout_wins(self):
        return self._shootout_wins

    @property
    def shootout_losses(self):
        return self._shootout_losses

    @property
    def goals_for(self):
        return self._goals_for

    @property
    def goals_against(self):
        return self._goals_against

    @property
    def goal_difference(self):
        return self._goals_for - self._goals_against

    @property
    def points(self):
        return (
            cup48.const.points_win * self._wins
            + cup48.const.points_draw * self._draws
            + cup48.const.points_loss * self._losses
        )

    @property
    def defeats(self):
        """
        Matches this team did not advance from: regulation losses and
        shootout losses.
        """
        return self._losses + self._shootout_losses

    def to_dict(self):
        return {
            "played": self.played,
            "wins": self._wins,
            "draws": self._draws,
            "losses": self._losses,
            "shootout_wins": self._shootout_wins,
            "shootout_losses": self._shootout_losses,
            "goals_for": self._goals_for,
            "goals_against": self._goals_against,
            "points": self.points,
        }


def _standings_key(record):
    return (-record.points, -record.goal_difference, -record.goals_for)


def group_standings(records, rng):
    """
    Args:
        records (dict of str to :doc:`cup48.tournament.TeamRecord`): Records
            of the teams to order.
        rng (:doc:`cup48.rng.RngStream`): Source of the lot.

    Returns the team ids ordered by points, goal difference and goals
    scored; ties that survive go to a lot drawn from ``rng``. The lot is
    drawn even without ties, so the stream advances the same way for any
    records.
    """
    ids = list(records)
    lot = rng.lot(len(ids))
    order = sorted(
        range(len(ids)), key=lambda i: (_standings_key(records[ids[i]]), lot[i])
    )
    return [ids[i] for i in order]


def select_returnees(candidates, rng, count=cup48.const.num_returnees):
    """
    Args:
        candidates (dict of str to :doc:`cup48.tournament.TeamRecord`): The
            18 teams with exactly one defeat after the third round.
        rng (:doc:`cup48.rng.RngStream`): Source of the lot.
        count (int): Number of teams to promote.

    Returns the ids of the ``count`` best candidates by
    :doc:`cup48.tournament.group_standings`, best first.
    """
    if len(candidates) != cup48.const.returnee_candidates:
        raise TournamentError(
            "the returnee step needs {0} one-loss candidates, not {1}".format(
                cup48.const.returnee_candidates, len(candidates)
            )
        )
    for team_id, record in candidates.items():
        if record.defeats != 1:
            raise TournamentError(
                "returnee candidate {0} has {1} defeats, not 1".format(
                    repr(team_id), record.defeats
                )
            )
    return group_standings(candidates, rng)[:count]


def allocate_best_thirds(thirds, opponent_groups):
    """
    Args:
        thirds (list of (str, str)): ``(team id, group label)`` of the
            qualified third-placed teams, best first.
        opponent_groups (list of None or str): For each third-place slot, in
            slot order, the group of the team it faces.

    Returns the team id for each slot. Slots are filled in order, each with
    the best remaining third that did not play in the opponent's group;
    backtracking guarantees a full assignment whenever one exists. If none
    exists, the thirds fill the slots in rank order.
    """
    if len(thirds) != len(opponent_groups):
        raise ValueError(
            "{0} thirds for {1} slots".format(len(thirds), len(opponent_groups))
        )

    chosen = [None] * len(opponent_groups)
    used = [False] * len(thirds)

    def fill(slot):
        if slot == len(opponent_groups):
            return True
        for i, (team_id, group) in enumerate(thirds):
            if not used[i] and group != opponent_groups[slot]:
                used[i] = True
                chosen[slot] = team_id
                if fill(slot + 1):
                    return True
                used[i] = False
        return False

    if fill(0):
        return chosen
    else:
        return [team_id for team_id, group in thirds]


def draw_assignment(roster, plan, rng):
    """
    Args:
        roster (:doc:`cup48.model.Roster` or iterable of
            :doc:`cup48.model.Team`): The field.
        plan (:doc:`cup48.formats.FormatPlan`): Plan whose draw slots to fill.
        rng (:doc:`cup48.rng.RngStream`): Source of randomness.

    Returns a dict from draw slot index to :doc:`cup48.model.Team`, a
    uniformly random bijection.
    """
    teams = list(roster)
    if len(teams) != plan.num_slots:
        raise PlanError(
            "plan {0} draws {1} teams, not {2}".format(
                repr(plan.name), plan.num_slots, len(teams)
            )
        )
    permutation = rng.permutation(len(teams))
    return dict((slot, teams[permutation[slot]]) for slot in range(len(teams)))


class TournamentResult(object):
    """
    Outcome of one :doc:`cup48.tournament.run_tournament`.

    Args:
        plan_name (str): Name of the plan that was played.
        match_log (list of :doc:`cup48.tournament.Match`): Matches in the
            order they were played.
        classification (list of str): Team ids, position 1 first.
        records (dict of str to :doc:`cup48.tournament.TeamRecord`):
            Full-tournament records.
        eliminated_in (dict of str to str): Fixture id in which each team
            went out, or ``"group-stage"``. The four teams of the final and
            third-place matches are absent.
        returnees (list of str): Teams promoted by the returnee step.
        semifinal_routes (dict of str to str): Bracket through which each
            semifinalist arrived.
        draw (dict of int to str): Team id in each draw slot.
    """

    def __init__(
        self,
        plan_name,
        match_log,
        classification,
        records,
        eliminated_in,
        returnees=(),
        semifinal_routes=None,
        draw=None,
    ):
        self._plan_name = plan_name
        self._match_log = tuple(match_log)
        self._classification = tuple(classification)
        self._records = dict((k, v.copy()) for k, v in records.items())
        self._eliminated_in = dict(eliminated_in)
        self._returnees = tuple(returnees)
        self._semifinal_routes = dict(semifinal_routes or {})
        self._draw = dict(draw or {})
        self._positions = dict(
            (team_id, i + 1) for i, team_id in enumerate(self._classification)
        )

    def __repr__(self):
        return "<TournamentResult of {0} won by {1} at 0x{2:012x}>".format(
            repr(self._plan_name), repr(self.champion), id(self)
        )

    @property
    def plan_name(self):
        return self._plan_name

    @property
    def match_log(self):
        return self._match_log

    @property
    def classification(self):
        """
        Team ids ordered by final position; position 1 (index 0) is the
        champion.
        """
        return self._classification

    @property
    def champion(self):
        return self._classification[0]

    @property
    def records(self):
        return dict((k, v.copy()) for k, v in self._records.items())

    def record(self, team_id):
        return self._records[team_id].copy()

    @property
    def eliminated_in(self):
        return dict(self._eliminated_in)

    @property
    def returnees(self):
        return self._returnees

    @property
    def semifinal_routes(self):
        return dict(self._semifinal_routes)

    @property
    def draw(self):
        return dict(self._draw)

    def position_of(self, team_id):
        """
        Final position of ``team_id``, starting at 1.
        """
        return self._positions[team_id]

    def matches_of(self, team_id):
        """
        The :doc:`cup48.tournament.Match` entries in which ``team_id`` played.
        """
        return [m for m in self._match_log if team_id in (m.home, m.away)]

    def write_match_log(self, where):
        """
        Writes the match log as CSV with the header
        ``fixture_id,home,away,home_goals,away_goals,shootout_winner``.
        """
        file, should_close = cup48._util.open_for_writing(where)
        try:
            writer = csv.writer(file, lineterminator="\n")
            writer.writerow(
                ["fixture_id", "home", "away", "home_goals", "away_goals", "shootout_winner"]
            )
            for match in self._match_log:
                writer.writerow(
                    [
                        match.fixture_id,
                        match.home,
                        match.away,
                        match.score.home_goals,
                        match.score.away_goals,
                        match.score.shootout_winner or "",
                    ]
                )
        finally:
            if should_close:
                file.close()

    def to_dict(self):
        return {
            "plan": self._plan_name,
            "classification": list(self._classification),
            "returnees": list(self._returnees),
            "semifinal_routes": self._semifinal_routes,
            "records": dict((k, v.to_dict()) for k, v in self._records.items()),
        }


def classify_final(plan, match_log, records, eliminated_in, rng):
    """
    Args:
        plan (:doc:`cup48.formats.FormatPlan`): The plan that was played.
        match_log (list of :doc:`cup48.tournament.Match`): Every match.
        records (dict of str to :doc:`cup48.tournament.TeamRecord`):
            Full-tournament records.
        eliminated_in (dict of str to str): Elimination fixture (or
            ``"group-stage"``) of every team outside the final four.
        rng (:doc:`cup48.rng.RngStream`): Source of the lot inside tiers.

    Returns all team ids ordered by final position. The final decides
    positions 1 and 2 and the third-place match positions 3 and 4; every
    other team falls in the tier of the stage at which it went out, and
    teams inside a tier are ordered by :doc:`cup48.tournament.group_standings`
    over their full-tournament records.
    """
    outcomes = {}
    for match in match_log:
        outcomes[match.fixture_id] = match

    def decided(fixture_id):
        if fixture_id not in outcomes:
            raise TournamentError(
                "fixture {0} was not played; the tournament is incomplete".format(
                    fixture_id
                )
            )
        match = outcomes[fixture_id]
        side = match.score.winner
        if side is None:
            raise TournamentError("fixture {0} has no winner".format(fixture_id))
        if side == cup48.const.home:
            return match.home, match.away
        else:
            return match.away, match.home

    positions = [None] * plan.num_slots
    positions[0], positions[1] = decided(plan.final)
    if plan.third_place is not None:
        positions[2], positions[3] = decided(plan.third_place)

    for tier in plan.tiers:
        if tier.fixtures is None:
            members = [k for k, v in eliminated_in.items() if v == cup48.const.group_stage]
        else:
            fixtures = set(tier.fixtures)
            members = [k for k, v in eliminated_in.items() if v in fixtures]
        if len(members) != tier.size:
            raise TournamentError(
                "tier {0} (positions {1}-{2}) has {3} teams, not {4}".format(
                    repr(tier.label),
                    tier.first_position,
                    tier.last_position,
                    len(members),
                    tier.size,
                )
            )
        ordered = group_standings(dict((k, records[k]) for k in members), rng)
        positions[tier.first_position - 1 : tier.last_position] = ordered

    if any(x is None for x in positions) or len(set(positions)) != len(positions):
        raise TournamentError("classification is not a permutation of the teams")
    return positions


class _Run(object):
    def __init__(self, plan, roster, rng, play):
        self.plan = plan
        self.rng = rng
        self.play = play
        self.draw = draw_assignment(roster, plan, rng)
        self.teams = dict((team.id, team) for team in self.draw.values())
        if len(self.teams) != len(self.draw):
            raise PlanError("team ids in the draw are not unique")

        self.match_log = []
        self.outcomes = {}
        self.records = dict((k, TeamRecord()) for k in self.teams)
        self.group_records = {}
        self.strikes = dict((k, 0) for k in self.teams)
        self.eliminated_in = {}
        self.opponents = dict((k, set()) for k in self.teams)
        self.standings = None
        self.thirds = None
        self.returnees = None
        self.remaining = None
        self.semifinal_routes = {}
        self.pool_pending = set(plan.pool_fixtures())
        self.takes_returnees = any(
            isinstance(source, (Returnee, Remaining))
            for fixture in plan.fixtures
            for source in fixture.sources
        )

    def resolve(self, source):
        if isinstance(source, DrawSlot):
            return self.draw[source.index].id
        elif isinstance(source, LoserOf):
            return self.outcomes[source.fixture_id][1]
        elif isinstance(source, WinnerOf):
            return self.outcomes[source.fixture_id][0]
        elif isinstance(source, GroupRank):
            return self.group_table()[source.group][source.place - 1]
        elif isinstance(source, BestThird):
            return self.best_thirds()[source.ordinal - 1]
        elif isinstance(source, Returnee):
            self.returnee_step()
            return self.returnees[source.ordinal - 1]
        elif isinstance(source, Remaining):
            self.returnee_step()
            return self.remaining[source.ordinal - 1]
        else:
            raise AssertionError(source)

    def group_table(self):
        if self.standings is None:
            self.standings = {}
            for label in sorted(self.plan.groups):
                slots = self.plan.groups[label]
                records = self.group_records.setdefault(label, {})
                for slot in slots:
                    records.setdefault(self.draw[slot].id, TeamRecord())
                ordered_records = dict(
                    (self.draw[slot].id, records[self.draw[slot].id]) for slot in slots
                )
                self.standings[label] = group_standings(ordered_records, self.rng)
        return self.standings

    def best_thirds(self):
        if self.thirds is None:
            table = self.group_table()
            candidates = dict(
                (ids[2], self.group_records[label][ids[2]])
                for label, ids in sorted(table.items())
                if len(ids) >= 3
            )
            group_of = dict(
                (ids[2], label) for label, ids in table.items() if len(ids) >= 3
            )
            ranked = group_standings(candidates, self.rng)[: self.plan.best_thirds]

            opponent_groups = [None] * self.plan.best_thirds
            for fixture in self.plan.fixtures:
                sources = fixture.sources
                for this, other in (sources, sources[::-1]):
                    if isinstance(this, BestThird):
                        if isinstance(other, GroupRank):
                            opponent_groups[this.ordinal - 1] = other.group

            self.thirds = allocate_best_thirds(
                [(team_id, group_of[team_id]) for team_id in ranked], opponent_groups
            )
        return self.thirds

    def returnee_step(self):
        if self.returnees is not None:
            return

        pool = []
        for fixture_id in self.plan.pool_fixtures():
            match = self.outcomes[fixture_id]
            for team_id in match[:2]:
                if (
                    team_id not in self.eliminated_in
                    and self.strikes[team_id] == 1
                    and team_id not in pool
                ):
                    pool.append(team_id)

        count = sum(
            1
            for fixture in self.plan.fixtures
            for source in fixture.sources
            if isinstance(source, Returnee)
        )
        self.returnees = select_returnees(
            dict((k, self.records[k]) for k in pool), self.rng, count
        )
        for team_id in self.returnees:
            self.strikes[team_id] = 0

        rest = [k for k in pool if k not in self.returnees]
        self.remaining = []
        while len(rest) != 0:
            first = rest.pop(0)
            if len(rest) == 0:
                raise TournamentError("the repechage pool has an odd number of teams")
            partner = 0
            for i, other in enumerate(rest):
                if other not in self.opponents[first]:
                    partner = i
                    break
            self.remaining.extend([first, rest.pop(partner)])

    def play_fixture(self, fixture):
        home_id = self.resolve(fixture.home_source)
        away_id = self.resolve(fixture.away_source)
        for team_id in (home_id, away_id):
            if team_id in self.eliminated_in:
                raise TournamentError(
                    "team {0} is scheduled in {1} after going out in {2}".format(
                        repr(team_id), fixture.id, self.eliminated_in[team_id]
                    )
                )
        if home_id == away_id:
            raise TournamentError(
                "team {0} is on both sides of {1}".format(repr(home_id), fixture.id)
            )

        score = self.play(self.teams[home_id], self.teams[away_id], fixture.mode, self.rng)
        if fixture.mode == cup48.const.must_decide and score.winner is None:
            raise TournamentError("fixture {0} must be decided".format(fixture.id))

        shootout_home = shootout_away = None
        if score.shootout_winner is not None:
            shootout_home = score.shootout_winner == cup48.const.home
            shootout_away = not shootout_home

        targets = [self.records]
        if fixture.group is not None:
            targets.append(self.group_records.setdefault(fixture.group, {}))
        for records in targets:
            records.setdefault(home_id, TeamRecord()).add(
                score.home_goals, score.away_goals, shootout_home
            )
            records.setdefault(away_id, TeamRecord()).add(
                score.away_goals, score.home_goals, shootout_away
            )
        self.opponents[home_id].add(away_id)
        self.opponents[away_id].add(home_id)

        if score.winner == cup48.const.home:
            winner, loser = home_id, away_id
        elif score.winner == cup48.const.away:
            winner, loser = away_id, home_id
        else:
            winner = loser = None
        self.outcomes[fixture.id] = (winner, loser, home_id, away_id)
        self.match_log.append(Match(fixture.id, home_id, away_id, score))

        if fixture.round_tag == "SF":
            for source, team_id in ((fixture.home_source, home_id), (fixture.away_source, away_id)):
                if isinstance(source, WinnerOf):
                    self.semifinal_routes[team_id] = self.plan[source.fixture_id].bracket

        if loser is not None and fixture.bracket not in (
            cup48.const.group,
            cup48.const.final_stage,
        ):
            self.strikes[loser] += 1
            if self.strikes[loser] >= self.plan.lives:
                self.eliminated_in[loser] = fixture.id

        # the pool closes with the last pool fixture
        if fixture.id in self.pool_pending:
            self.pool_pending.discard(fixture.id)
            if len(self.pool_pending) == 0 and self.takes_returnees:
                self.returnee_step()

    def run(self):
        for fixture_id in self.plan.topological_order():
            self.play_fixture(self.plan[fixture_id])

        finalists = set()
        for fixture_id in (self.plan.final, self.plan.third_place):
            if fixture_id is not None:
                finalists.update(self.outcomes[fixture_id][2:])
        for team_id in self.teams:
            if team_id not in self.eliminated_in and team_id not in finalists:
                if len(self.plan.groups) == 0:
                    raise TournamentError(
                        "team {0} was neither eliminated nor in the final "
                        "four".format(repr(team_id))
                    )
                self.eliminated_in[team_id] = cup48.const.group_stage

        classification = classify_final(
            self.plan, self.match_log, self.records, self.eliminated_in, self.rng
        )
        return TournamentResult(
            self.plan.name,
            self.match_log,
            classification,
            self.records,
            self.eliminated_in,
            returnees=self.returnees or (),
            semifinal_routes=self.semifinal_routes,
            draw=dict((slot, team.id) for slot, team in self.draw.items()),
        )


def run_tournament(plan, roster, rng, play=None):
    """
    Args:
        plan (:doc:`cup48.formats.FormatPlan`): The format to play.
        roster (:doc:`cup48.model.Roster` or iterable of
            :doc:`cup48.model.Team`): As many teams as the plan has draw
            slots.
        rng (:doc:`cup48.rng.RngStream`): Source of all randomness of this
            tournament (draw, matches and lots).
        play (None or callable): Replaces :doc:`cup48.model.play_match`;
            called as ``play(home, away, mode, rng)`` and must return a
            :doc:`cup48.model.MatchScore`.

    Plays a complete tournament and returns its
    :doc:`cup48.tournament.TournamentResult`.

    A team goes out when its defeats outside group and final-stage fixtures
    reach the plan's :doc:`cup48.formats.FormatPlan.lives`. In the
    double-elimination format the returnee step erases the first defeat of
    the two promoted teams, so they again need two more defeats to go out.
    """
    if play is None:
        play = cup48.model.play_match
    return _Run(plan, roster, rng, play).run()


def check_double_elim_invariants(result, plan=None):
    """
    Args:
        result (:doc:`cup48.tournament.TournamentResult`): A played
            ``"double-elim-48"`` tournament.
        plan (None or :doc:`cup48.formats.FormatPlan`): The plan it was
            played with; the standard plan if None.

    Returns a list of violation messages (empty if none):

    * the classification is a permutation of the teams in the match log;
    * no team plays after the fixture in which it went out;
    * no team goes out in a match it won;
    * teams that went out have exactly two defeats (three for returnees);
    * main-route semifinalists played 5 matches before the semifinal and
      repechage-route semifinalists 7;
    * the champion played 7 or 9 matches.
    """
    if plan is None:
        plan = cup48.formats.build_plan(cup48.const.double_elim)

    violations = []
    log = result.match_log
    teams = set()
    for match in log:
        teams.update((match.home, match.away))
    if sorted(result.classification) != sorted(teams):
        violations.append("classification is not a permutation of the teams")

    eliminated_in = result.eliminated_in
    records = result.records
    returnees = set(result.returnees)

    index_of = dict((match.fixture_id, i) for i, match in enumerate(log))
    for team_id, fixture_id in eliminated_in.items():
        matches = result.matches_of(team_id)
        if len(matches) == 0 or matches[-1].fixture_id != fixture_id:
            violations.append(
                "{0} plays after going out in {1}".format(team_id, fixture_id)
            )
        match = log[index_of[fixture_id]]
        side = cup48.const.home if match.home == team_id else cup48.const.away
        if match.score.winner == side:
            violations.append("{0} went out in {1}, which it won".format(team_id, fixture_id))
        expected = 3 if team_id in returnees else 2
        if records[team_id].defeats != expected:
            violations.append(
                "{0} went out with {1} defeats".format(team_id, records[team_id].defeats)
            )

    for team_id, route in result.semifinal_routes.items():
        matches = result.matches_of(team_id)
        prior = 0
        for match in matches:
            if plan[match.fixture_id].round_tag == "SF":
                break
            prior += 1
        expected = 5 if route == cup48.const.main else 7
        if prior != expected:
            violations.append(
                "{0} reached the semifinals through the {1} route after {2} "
                "matches, not {3}".format(team_id, route, prior, expected)
            )

    played = len(result.matches_of(result.champion))
    if played not in (7, 9):
        violations.append("the champion played {0} matches".format(played))

    return violations
