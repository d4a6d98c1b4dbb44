# BSD 3-Clause License; see LICENSE

"""
Defines teams, rosters and the stochastic result model.

The model gives every team a Poisson goal rate that depends only on its FIFA
rank position (capped at 50):

.. code-block:: python

    goal_rate(rank) == 1.5 + 0.7 * (1 - 2 * min(rank, 50) / 50)

Both teams' goals are drawn independently, so there is no home advantage.
Drawn matches that must be decided go to a shootout won by either side with
probability 1/2; extra time is not modeled.
"""

from __future__ import absolute_import

import csv
import json
import os

import numpy

import cup48._util
import cup48.const
import cup48.extras


class InvalidRankError(ValueError):
    """
    Exception raised for a FIFA rank that is not an integer of at least 1.
    """

    def __init__(self, rank):
        super(InvalidRankError, self).__init__(rank)
        self.rank = rank

    def __str__(self):
        return "FIFA rank must be an integer >= 1, not {0}".format(repr(self.rank))


class RosterError(ValueError):
    """
    Exception raised for rosters that are not exactly 48 teams with unique
    ids and unique ranks, or for roster files that cannot be parsed.
    """

    pass


def _check_rank(rank):
    if not cup48._util.isint(rank) or rank < 1:
        raise InvalidRankError(rank)
    return int(rank)


class Team(object):
    """
    Args:
        id (str): Stable identifier, unique within a roster.
        fifa_rank (int): FIFA rank position, 1 being the best.
        name (None or str): Display name.

    A participant. The rank is the model's only skill input.
    """

    __slots__ = ("_id", "_fifa_rank", "_name")

    def __init__(self, id, fifa_rank, name=None):
        self._id = str(id)
        self._fifa_rank = _check_rank(fifa_rank)
        self._name = name

    def __repr__(self):
        return "Team({0}, {1})".format(repr(self._id), self._fifa_rank)

    def __eq__(self, other):
        return (
            isinstance(other, Team)
            and self._id == other._id
            and self._fifa_rank == other._fifa_rank
        )

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((Team, self._id, self._fifa_rank))

    @property
    def id(self):
        return self._id

    @property
    def fifa_rank(self):
        return self._fifa_rank

    @property
    def name(self):
        """
        Display name, falling back to the id.
        """
        if self._name is None:
            return self._id
        return self._name


class Roster(object):
    """
    Args:
        teams (iterable of :doc:`cup48.model.Team`): Exactly 48 teams.

    The ordered field of a cup. Ids and ranks must both be unique, so that
    the skill order (ascending rank) is a total order.
    """

    def __init__(self, teams):
        teams = tuple(teams)
        if len(teams) != cup48.const.num_teams:
            raise RosterError(
                "a roster needs exactly {0} teams, not {1}".format(
                    cup48.const.num_teams, len(teams)
                )
            )
        for team in teams:
            if not isinstance(team, Team):
                raise TypeError("roster entries must be Team, not {0}".format(type(team)))

        by_id = {}
        for team in teams:
            if team.id in by_id:
                raise RosterError("duplicate team id: {0}".format(repr(team.id)))
            by_id[team.id] = team

        ranks = set()
        for team in teams:
            if team.fifa_rank in ranks:
                raise RosterError(
                    "duplicate FIFA rank {0} (ranks must be unique)".format(
                        team.fifa_rank
                    )
                )
            ranks.add(team.fifa_rank)

        self._teams = teams
        self._by_id = by_id

    @classmethod
    def default(cls):
        """
        Ranks 1 through 48 with ids ``T01`` through ``T48``.
        """
        return cls(
            Team("T{0:02d}".format(rank), rank)
            for rank in range(1, cup48.const.num_teams + 1)
        )

    @classmethod
    def from_file(cls, path):
        """
        Args:
            path (str or ``pathlib.Path``): A CSV file with a header that
                includes ``id`` and ``fifa_rank`` (and optionally ``name``),
                or a JSON file (``.json``) with a list of objects having the
                same keys.

        Reads a roster from a file.
        """
        path = cup48._util.regularize_path(path)
        try:
            with open(path, "r", newline="") as file:
                if os.path.splitext(path)[1].lower() == ".json":
                    rows = json.load(file)
                else:
                    rows = list(csv.DictReader(file))
        except ValueError as err:
            raise RosterError("cannot parse roster file {0}: {1}".format(path, err))

        if not isinstance(rows, list):
            raise RosterError(
                "roster file {0} must hold a list of teams".format(repr(path))
            )

        teams = []
        for i, row in enumerate(rows):
            if not isinstance(row, dict) or "id" not in row or "fifa_rank" not in row:
                raise RosterError(
                    "roster file {0}, entry {1}: 'id' and 'fifa_rank' are "
                    "required".format(path, i)
                )
            try:
                rank = int(row["fifa_rank"])
            except (TypeError, ValueError):
                raise RosterError(
                    "roster file {0}, entry {1}: fifa_rank {2} is not an "
                    "integer".format(path, i, repr(row["fifa_rank"]))
                )
            name = row.get("name") or None
            teams.append(Team(row["id"], rank, name))

        return cls(teams)

    def __repr__(self):
        return "<Roster of {0} teams at 0x{1:012x}>".format(len(self._teams), id(self))

    def __len__(self):
        return len(self._teams)

    def __iter__(self):
        return iter(self._teams)

    def __getitem__(self, team_id):
        return self._by_id[team_id]

    def __contains__(self, team_id):
        return team_id in self._by_id

    @property
    def teams(self):
        """
        Teams in roster order.
        """
        return self._teams

    @property
    def ids(self):
        return [team.id for team in self._teams]

    def rank_of(self, team_id):
        return self._by_id[team_id].fifa_rank

    def skill_order(self):
        """
        Team ids sorted by FIFA rank, best first.
        """
        return [team.id for team in sorted(self._teams, key=lambda t: t.fifa_rank)]


class MatchScore(object):
    """
    Args:
        home_goals (int): Regulation goals of the home side.
        away_goals (int): Regulation goals of the away side.
        shootout_winner (None, "home", or "away"): Set only when a drawn
            match had to be decided.

    Result of one match.
    """

    __slots__ = ("_home_goals", "_away_goals", "_shootout_winner")

    def __init__(self, home_goals, away_goals, shootout_winner=None):
        if not cup48._util.isint(home_goals) or home_goals < 0:
            raise ValueError("home_goals must be a non-negative integer")
        if not cup48._util.isint(away_goals) or away_goals < 0:
            raise ValueError("away_goals must be a non-negative integer")
        if shootout_winner not in (None, cup48.const.home, cup48.const.away):
            raise ValueError(
                "shootout_winner must be None, 'home', or 'away', not {0}".format(
                    repr(shootout_winner)
                )
            )
        if shootout_winner is not None and home_goals != away_goals:
            raise ValueError("a shootout only follows a drawn match")
        self._home_goals = int(home_goals)
        self._away_goals = int(away_goals)
        self._shootout_winner = shootout_winner

    def __repr__(self):
        if self._shootout_winner is None:
            return "MatchScore({0}, {1})".format(self._home_goals, self._away_goals)
        return "MatchScore({0}, {1}, {2})".format(
            self._home_goals, self._away_goals, repr(self._shootout_winner)
        )

    def __eq__(self, other):
        return isinstance(other, MatchScore) and (
            self._home_goals,
            self._away_goals,
            self._shootout_winner,
        ) == (other._home_goals, other._away_goals, other._shootout_winner)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self._home_goals, self._away_goals, self._shootout_winner))

    @property
    def home_goals(self):
        return self._home_goals

    @property
    def away_goals(self):
        return self._away_goals

    @property
    def shootout_winner(self):
        return self._shootout_winner

    @property
    def is_draw(self):
        """
        True if regulation ended level (whether or not a shootout followed).
        """
        return self._home_goals == self._away_goals

    @property
    def winner(self):
        """
        ``"home"``, ``"away"``, or None for an undecided draw.
        """
        if self._home_goals > self._away_goals:
            return cup48.const.home
        elif self._home_goals < self._away_goals:
            return cup48.const.away
        else:
            return self._shootout_winner

    @property
    def loser(self):
        winner = self.winner
        if winner is None:
            return None
        elif winner == cup48.const.home:
            return cup48.const.away
        else:
            return cup48.const.home


def goal_rate(fifa_rank):
    """
    Args:
        fifa_rank (int): Rank position, at least 1.

    Poisson mean of the goals scored by a team of this rank. Ranks of 50 and
    worse share the minimum rate, 0.8; rank 1 has the maximum, 2.172.
    """
    rank = _check_rank(fifa_rank)
    capped = min(rank, cup48.const.rank_cap)
    return cup48.const.goal_rate_base + cup48.const.goal_rate_spread * (
        1.0 - 2.0 * capped / float(cup48.const.rank_cap)
    )


def simulate_regulation(home, away, rng):
    """
    Args:
        home (:doc:`cup48.model.Team`): Home side.
        away (:doc:`cup48.model.Team`): Away side.
        rng (:doc:`cup48.rng.RngStream`): Source of randomness.

    Draws a regulation score: the home goals first, then the away goals, each
    from an independent Poisson distribution.
    """
    home_goals = rng.poisson(goal_rate(home.fifa_rank))
    away_goals = rng.poisson(goal_rate(away.fifa_rank))
    return MatchScore(home_goals, away_goals)


def simulate_shootout(rng):
    """
    Winner of a penalty shootout, ``"home"`` or ``"away"`` with equal chance.
    """
    if rng.coin():
        return cup48.const.home
    else:
        return cup48.const.away


def play_match(home, away, mode, rng):
    """
    Args:
        home (:doc:`cup48.model.Team`): Home side.
        away (:doc:`cup48.model.Team`): Away side.
        mode (str): ``"draw-allowed"`` or ``"must-decide"``.
        rng (:doc:`cup48.rng.RngStream`): Source of randomness.

    Plays one match. A drawn ``"must-decide"`` match is settled by
    :doc:`cup48.model.simulate_shootout`.
    """
    if mode not in cup48.const.modes:
        raise ValueError(
            "mode must be one of {0}, not {1}".format(cup48.const.modes, repr(mode))
        )
    score = simulate_regulation(home, away, rng)
    if mode == cup48.const.must_decide and score.is_draw:
        return MatchScore(score.home_goals, score.away_goals, simulate_shootout(rng))
    return score


def _pmf(lam, max_goals):
    stats = cup48.extras.scipy_stats()
    return stats.poisson.pmf(numpy.arange(max_goals + 1), lam)


def outcome_probabilities(home_rank, away_rank, max_goals=cup48.const.max_goals):
    """
    Args:
        home_rank (int): FIFA rank of the home side.
        away_rank (int): FIFA rank of the away side.
        max_goals (int): Truncation of the Poisson double sum.

    Regulation (win, draw, loss) probabilities for the home side, from the
    truncated double sum over goal counts ``0..max_goals``.
    """
    joint = numpy.outer(
        _pmf(goal_rate(home_rank), max_goals), _pmf(goal_rate(away_rank), max_goals)
    )
    p_win = float(numpy.tril(joint, -1).sum())
    p_draw = float(numpy.trace(joint))
    p_loss = float(numpy.triu(joint, 1).sum())
    return p_win, p_draw, p_loss


def _simulated_probabilities(home_rank, away_rank, rng, n_matches):
    generator = rng.generator
    home_goals = generator.poisson(goal_rate(home_rank), size=n_matches)
    away_goals = generator.poisson(goal_rate(away_rank), size=n_matches)
    return (
        float(numpy.count_nonzero(home_goals > away_goals)) / n_matches,
        float(numpy.count_nonzero(home_goals == away_goals)) / n_matches,
        float(numpy.count_nonzero(home_goals < away_goals)) / n_matches,
    )


def model_outcome_curve(
    rank_diff_bins,
    method="analytic",
    max_rank=cup48.const.num_teams,
    rng=None,
    n_matches=10000,
):
    """
    Args:
        rank_diff_bins (iterable of int): Rank differences to evaluate. A
            difference ``d`` compares a team of rank ``r`` with an opponent
            of rank ``r + d`` (positive means the team is better ranked).
        method (str): ``"analytic"`` for the truncated Poisson double sum or
            ``"simulate"`` to estimate frequencies with ``rng``.
        max_rank (int): Ranks considered are ``1..max_rank``.
        rng (None or :doc:`cup48.rng.RngStream`): Required for
            ``method="simulate"``.
        n_matches (int): Simulated matches per rank pairing.

    Returns a list of ``(rank_diff, p_win, p_draw, p_loss)`` tuples, each
    averaged uniformly over all admissible rank pairings with that difference.
    Differences with no admissible pairing are left out rather than reported
    as zero.
    """
    if method not in ("analytic", "simulate"):
        raise ValueError(
            "method must be 'analytic' or 'simulate', not {0}".format(repr(method))
        )
    if method == "simulate" and rng is None:
        raise ValueError("method='simulate' requires an rng")

    out = []
    for diff in rank_diff_bins:
        diff = int(diff)
        pairs = [
            (rank, rank + diff)
            for rank in range(1, max_rank + 1)
            if 1 <= rank + diff <= max_rank
        ]
        if len(pairs) == 0:
            continue

        total = numpy.zeros(3, dtype=numpy.float64)
        for index, (rank, opponent) in enumerate(pairs):
            if method == "analytic":
                total += outcome_probabilities(rank, opponent)
            else:
                total += _simulated_probabilities(
                    rank, opponent, rng.substream(index), n_matches
                )
        total /= len(pairs)
        total /= total.sum()
        out.append((diff, float(total[0]), float(total[1]), float(total[2])))

    return out


def write_outcome_curve(rows, where):
    """
    Writes rows from :doc:`cup48.model.model_outcome_curve` as CSV with the
    header ``rank_diff,p_win,p_draw,p_loss``.
    """
    file, should_close = cup48._util.open_for_writing(where)
    try:
        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(["rank_diff", "p_win", "p_draw", "p_loss"])
        for diff, p_win, p_draw, p_loss in rows:
            writer.writerow([diff, repr(p_win), repr(p_draw), repr(p_loss)])
    finally:
        if should_close:
            file.close()
