# BSD 3-Clause License; see LICENSE

"""
Defines the measures used to compare formats:

* :doc:`cup48.metrics.fairness_index`: distance between a final
  classification and the skill order, weighted toward the best teams.
* :doc:`cup48.metrics.rank_index`: how strong a pairing is (0 to 100).
* :doc:`cup48.metrics.rank_distance`: how close a pairing is.
* :doc:`cup48.metrics.interest_class`: whether zero, one, or both teams are
  in the top 8.

and the random pairing baseline that match-quality histograms are compared
against.
"""

from __future__ import absolute_import

import collections
import csv
import itertools

import numpy

import cup48._util
import cup48.const
import cup48.model


class SkillOrder(object):
    """
    Args:
        roster (:doc:`cup48.model.Roster` or iterable of
            :doc:`cup48.model.Team`): The field.

    Maps every team id to its skill index, 0 for the best FIFA rank.
    """

    def __init__(self, roster):
        teams = sorted(roster, key=lambda team: team.fifa_rank)
        ranks = [team.fifa_rank for team in teams]
        if len(set(ranks)) != len(ranks):
            raise ValueError("skill order needs unique FIFA ranks")
        self._ids = tuple(team.id for team in teams)
        self._index = dict((team_id, i) for i, team_id in enumerate(self._ids))

    def __repr__(self):
        return "<SkillOrder of {0} teams at 0x{1:012x}>".format(len(self._ids), id(self))

    def __len__(self):
        return len(self._ids)

    def __getitem__(self, team_id):
        return self._index[team_id]

    def __contains__(self, team_id):
        return team_id in self._index

    @property
    def ids(self):
        """
        Team ids, best first.
        """
        return self._ids


MatchMetrics = collections.namedtuple(
    "MatchMetrics", ["rank_index", "rank_distance", "interest"]
)


def fairness_index(classification, skill, gamma=cup48.const.default_gamma):
    """
    Args:
        classification (sequence of str): Team ids by final position, the
            champion first.
        skill (:doc:`cup48.metrics.SkillOrder`): The reference order.
        gamma (float): Weight exponent, greater than 0; larger values
            concentrate the measure on the best teams.

    Returns

    .. code-block:: python

        sum(abs(p - s[p]) / n * (1 - s[p] / n) ** gamma for p in range(n))

    where ``s[p]`` is the skill index of the team at (0-based) position ``p``
    and ``n`` the number of teams. The value is 0 exactly when the
    classification equals the skill order; lower is fairer.
    """
    if not cup48._util.isnum(gamma) or not gamma > 0:
        raise ValueError("gamma must be a number greater than 0, not {0}".format(repr(gamma)))
    classification = list(classification)
    if len(classification) != len(skill) or set(classification) != set(skill.ids):
        raise ValueError(
            "classification must be a permutation of the {0} teams of the skill "
            "order".format(len(skill))
        )
    n = float(len(skill))
    s = numpy.array([skill[team_id] for team_id in classification], dtype=numpy.float64)
    p = numpy.arange(len(s), dtype=numpy.float64)
    return float(numpy.sum(numpy.abs(p - s) / n * (1.0 - s / n) ** gamma))


def _normalized_rank(rank):
    rank = cup48.model._check_rank(rank)
    return 1.0 - (min(rank, cup48.const.rank_cap) - 1) / float(cup48.const.rank_cap)


def rank_index(home_rank, away_rank, scale=100.0):
    """
    Args:
        home_rank (int): FIFA rank of one team.
        away_rank (int): FIFA rank of the other.
        scale (float): 100 for the reported 0-100 scale, 1 for the raw value.

    Geometric mean of the two normalized ranks ``1 - (min(rank, 50) - 1) /
    50``, times ``scale``. Ranges from 2 (both ranks 50 or worse) to 100
    (both rank 1).
    """
    return scale * float(
        numpy.sqrt(_normalized_rank(home_rank) * _normalized_rank(away_rank))
    )


def rank_distance(home_rank, away_rank):
    """
    Absolute difference of the two FIFA ranks, without a cap.
    """
    return abs(cup48.model._check_rank(home_rank) - cup48.model._check_rank(away_rank))


def interest_class(home_rank, away_rank, threshold=cup48.const.interest_threshold):
    """
    ``"high"`` if both ranks are within ``threshold``, ``"special"`` if
    exactly one is, ``"regular"`` otherwise.
    """
    top = (cup48.model._check_rank(home_rank) <= threshold) + (
        cup48.model._check_rank(away_rank) <= threshold
    )
    if top == 2:
        return cup48.const.high
    elif top == 1:
        return cup48.const.special
    else:
        return cup48.const.regular


def match_metrics(home_rank, away_rank, threshold=cup48.const.interest_threshold):
    """
    All three per-match measures as a :doc:`cup48.metrics.MatchMetrics`.
    """
    return MatchMetrics(
        rank_index(home_rank, away_rank),
        rank_distance(home_rank, away_rank),
        interest_class(home_rank, away_rank, threshold),
    )


def random_baseline(roster, n_matches, rng):
    """
    Args:
        roster (:doc:`cup48.model.Roster` or iterable of
            :doc:`cup48.model.Team`): The field.
        n_matches (int): Number of pairs, at least 1.
        rng (:doc:`cup48.rng.RngStream`): Source of randomness.

    Returns ``n_matches`` pairs of distinct teams, each drawn uniformly from
    all unordered pairs and independently of the others.
    """
    if not cup48._util.isint(n_matches) or n_matches < 1:
        raise ValueError(
            "n_matches must be a positive integer, not {0}".format(repr(n_matches))
        )
    teams = list(roster)
    first = rng.integers(0, len(teams), size=n_matches)
    second = rng.integers(0, len(teams) - 1, size=n_matches)
    second = second + (second >= first)
    return [(teams[i], teams[j]) for i, j in zip(first, second)]


def baseline_pair_distribution(roster):
    """
    Every unordered pair of distinct teams, as ``(rank, rank)`` tuples. Each
    pair is equally likely under :doc:`cup48.metrics.random_baseline`, so
    this is the exact baseline distribution.
    """
    ranks = [team.fifa_rank for team in roster]
    return list(itertools.combinations(ranks, 2))


def rank_index_histogram(values):
    """
    Normalized histogram of rank indexes over 20 bins of width 5 on
    ``[0, 100]``; 100 falls in the last bin.
    """
    edges = numpy.linspace(
        0.0,
        cup48.const.rank_index_bins * cup48.const.rank_index_bin_width,
        cup48.const.rank_index_bins + 1,
    )
    counts, _ = numpy.histogram(numpy.asarray(values, dtype=numpy.float64), bins=edges)
    return _normalize(counts)


def rank_distance_histogram(values):
    """
    Normalized histogram of rank distances over unit bins ``0..47``;
    larger distances (possible only with ranks beyond 48) fall in the last
    bin.
    """
    values = numpy.clip(
        numpy.asarray(values, dtype=numpy.int64), 0, cup48.const.rank_distance_bins - 1
    )
    counts = numpy.bincount(values, minlength=cup48.const.rank_distance_bins)
    return _normalize(counts)


def _normalize(counts):
    counts = numpy.asarray(counts, dtype=numpy.float64)
    total = counts.sum()
    if total == 0:
        return counts
    return counts / total


def write_match_metrics(rows, where):
    """
    Writes ``(run_id, fixture_id, rank_index, rank_distance, interest)`` rows
    as CSV.
    """
    file, should_close = cup48._util.open_for_writing(where)
    try:
        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(["run_id", "fixture_id", "rank_index", "rank_distance", "interest"])
        for run_id, fixture_id, ri, rd, interest in rows:
            writer.writerow([run_id, fixture_id, repr(float(ri)), int(rd), interest])
    finally:
        if should_close:
            file.close()


def write_fairness(rows, where):
    """
    Writes ``(run_id, fairness_index)`` rows as CSV.
    """
    file, should_close = cup48._util.open_for_writing(where)
    try:
        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(["run_id", "fairness_index"])
        for run_id, value in rows:
            writer.writerow([run_id, repr(float(value))])
    finally:
        if should_close:
            file.close()
