# BSD 3-Clause License; see LICENSE

"""
Runs batches of tournaments and summarizes them.

:doc:`cup48.montecarlo.run_batch` plays ``n_runs`` tournaments of one format,
run ``i`` with substream ``i`` of the batch seed, and aggregates

* the fairness index of every run (one sample set per gamma),
* the rank index and rank distance of every match, as histograms next to a
  random-pairing baseline drawn from substream ``n_runs``,
* the number of high-, special- and regular-interest matches per run.

Runs may execute on any executor; they are folded in run order, so the
summary does not depend on the executor. :doc:`cup48.montecarlo.compare_formats`
sets summaries of different formats side by side.
"""

from __future__ import absolute_import

import csv
import json
import logging
import os

import numpy

import cup48._util
import cup48.const
import cup48.formats
import cup48.futures
import cup48.metrics
import cup48.model
import cup48.rng
import cup48.tournament

logger = logging.getLogger(__name__)

fig2_fairness_cdf = "fig2_fairness_cdf.csv"
fig3_rank_index = "fig3_rank_index.csv"
fig4_rank_distance = "fig4_rank_distance.csv"
fig5_interest_counts = "fig5_interest_counts.csv"


def figure_files(directory):
    """
    Paths of the four plot-ready CSV files of a batch in ``directory``.
    """
    return [
        os.path.join(directory, name)
        for name in (
            fig2_fairness_cdf,
            fig3_rank_index,
            fig4_rank_distance,
            fig5_interest_counts,
        )
    ]


class BatchConfig(object):
    """
    Args:
        format_name (str): ``"double-elim-48"``, ``"group-of-3"``, or
            ``"group-of-4"``.
        n_runs (int): Number of tournaments, at least 1.
        base_seed (int): Seed of the batch; run ``i`` uses its substream
            ``i``.
        gamma (float): Fairness weight exponent, greater than 0.
        interest_threshold (int): Rank that bounds the top teams of
            :doc:`cup48.metrics.interest_class`.
        gammas (None or iterable of float): Further exponents to evaluate the
            fairness index with.
    """

    def __init__(
        self,
        format_name,
        n_runs,
        base_seed,
        gamma=cup48.const.default_gamma,
        interest_threshold=cup48.const.interest_threshold,
        gammas=None,
    ):
        if format_name not in cup48.const.format_names:
            raise cup48.formats.PlanError(
                "unknown format {0}; expected one of {1}".format(
                    repr(format_name), ", ".join(cup48.const.format_names)
                )
            )
        if not cup48._util.isint(n_runs) or n_runs < 1:
            raise ValueError("n_runs must be an integer >= 1, not {0}".format(repr(n_runs)))
        if not cup48._util.isint(base_seed) or not 0 <= base_seed < 2 ** 64:
            raise ValueError(
                "base_seed must be an integer in [0, 2**64), not {0}".format(
                    repr(base_seed)
                )
            )
        all_gammas = [gamma] + list(gammas or [])
        for g in all_gammas:
            if not cup48._util.isnum(g) or not g > 0:
                raise ValueError("gamma must be greater than 0, not {0}".format(repr(g)))
        if not cup48._util.isint(interest_threshold) or interest_threshold < 1:
            raise ValueError(
                "interest_threshold must be an integer >= 1, not {0}".format(
                    repr(interest_threshold)
                )
            )

        self._format_name = format_name
        self._n_runs = int(n_runs)
        self._base_seed = int(base_seed)
        self._gamma = float(gamma)
        self._interest_threshold = int(interest_threshold)
        self._gammas = tuple(sorted(set(float(g) for g in all_gammas)))

    def __repr__(self):
        return "BatchConfig({0}, {1}, {2}, gamma={3})".format(
            repr(self._format_name), self._n_runs, self._base_seed, self._gamma
        )

    @property
    def format_name(self):
        return self._format_name

    @property
    def n_runs(self):
        return self._n_runs

    @property
    def base_seed(self):
        return self._base_seed

    @property
    def gamma(self):
        """
        The main fairness exponent.
        """
        return self._gamma

    @property
    def gammas(self):
        """
        Every exponent evaluated, including :doc:`cup48.montecarlo.BatchConfig.gamma`,
        in increasing order.
        """
        return self._gammas

    @property
    def interest_threshold(self):
        return self._interest_threshold

    def with_format(self, format_name):
        """
        The same configuration for another format.
        """
        return BatchConfig(
            format_name,
            self._n_runs,
            self._base_seed,
            self._gamma,
            self._interest_threshold,
            self._gammas,
        )

    def to_dict(self):
        return {
            "format": self._format_name,
            "n_runs": self._n_runs,
            "base_seed": self._base_seed,
            "gamma": self._gamma,
            "gammas": list(self._gammas),
            "interest_threshold": self._interest_threshold,
        }


_class_index = dict((name, i) for i, name in enumerate(cup48.const.interest_classes))


def _play_run(plan, teams, stream, skill, gammas, threshold):
    result = cup48.tournament.run_tournament(plan, teams, stream)
    ranks = dict((team.id, team.fifa_rank) for team in teams)

    fairness = [
        cup48.metrics.fairness_index(result.classification, skill, gamma)
        for gamma in gammas
    ]
    fixture_ids = []
    ri = []
    rd = []
    interest = []
    for match in result.match_log:
        metrics = cup48.metrics.match_metrics(ranks[match.home], ranks[match.away], threshold)
        fixture_ids.append(match.fixture_id)
        ri.append(metrics.rank_index)
        rd.append(metrics.rank_distance)
        interest.append(_class_index[metrics.interest])
    return fairness, fixture_ids, ri, rd, interest


def run_batch(config, roster=None, executor=None):
    """
    Args:
        config (:doc:`cup48.montecarlo.BatchConfig`): What to run.
        roster (None or :doc:`cup48.model.Roster`): The field; the default
            roster (ranks 1 to 48) if None.
        executor (None or executor): Object with ``submit(task, *args)``;
            ``cup48.batch_executor`` if None.

    Plays the batch and returns its :doc:`cup48.montecarlo.BatchSummary`.
    """
    if roster is None:
        roster = cup48.model.Roster.default()
    if executor is None:
        executor = cup48.batch_executor

    plan = cup48.formats.build_plan(config.format_name)
    teams = list(roster)
    skill = cup48.metrics.SkillOrder(teams)
    root = cup48.rng.RngStream(config.base_seed)

    logger.info(
        "batch %s: %d runs, seed %d, executor %r",
        config.format_name,
        config.n_runs,
        config.base_seed,
        executor,
    )

    futures = [
        executor.submit(
            _play_run,
            plan,
            teams,
            root.substream(i),
            skill,
            config.gammas,
            config.interest_threshold,
        )
        for i in range(config.n_runs)
    ]

    fairness = numpy.empty((config.n_runs, len(config.gammas)), dtype=numpy.float64)
    run_ids = []
    fixture_ids = []
    ri = []
    rd = []
    interest = []
    for i, run in cup48.futures.in_order(futures):
        run_fairness, run_fixtures, run_ri, run_rd, run_interest = run
        fairness[i] = run_fairness
        run_ids.extend([i] * len(run_fixtures))
        fixture_ids.extend(run_fixtures)
        ri.extend(run_ri)
        rd.extend(run_rd)
        interest.extend(run_interest)
        logger.debug("batch %s: run %d folded", config.format_name, i)

    baseline = cup48.metrics.random_baseline(teams, len(ri), root.substream(config.n_runs))
    baseline_ri = [cup48.metrics.rank_index(a.fifa_rank, b.fifa_rank) for a, b in baseline]
    baseline_rd = [cup48.metrics.rank_distance(a.fifa_rank, b.fifa_rank) for a, b in baseline]

    summary = BatchSummary(
        config,
        [team.fifa_rank for team in teams],
        fairness,
        numpy.array(run_ids, dtype=numpy.int64),
        fixture_ids,
        numpy.array(ri, dtype=numpy.float64),
        numpy.array(rd, dtype=numpy.int64),
        numpy.array(interest, dtype=numpy.int64),
        numpy.array(baseline_ri, dtype=numpy.float64),
        numpy.array(baseline_rd, dtype=numpy.int64),
    )
    logger.info(
        "batch %s: %d matches, mean fairness %.6f (gamma %g)",
        config.format_name,
        len(ri),
        float(numpy.mean(summary.fairness_samples())),
        config.gamma,
    )
    return summary


def _ratio(observed, baseline):
    observed = numpy.asarray(observed, dtype=numpy.float64)
    baseline = numpy.asarray(baseline, dtype=numpy.float64)
    out = numpy.full(observed.shape, numpy.nan)
    numpy.divide(observed, baseline, out=out, where=baseline > 0)
    return out


def _jsonable(values):
    return [None if numpy.isnan(x) else float(x) for x in values]


class BatchSummary(object):
    """
    Aggregated result of :doc:`cup48.montecarlo.run_batch`. Besides the
    aggregates it keeps the raw samples: per-run fairness indexes and
    per-match metrics.

    Args:
        config (:doc:`cup48.montecarlo.BatchConfig`): What was run.
        roster_ranks (list of int): FIFA ranks of the field.
        fairness (``numpy.ndarray``): Shape ``(n_runs, len(config.gammas))``.
        run_ids (``numpy.ndarray``): Run of every match.
        fixture_ids (list of str): Fixture of every match.
        rank_index (``numpy.ndarray``): Rank index of every match.
        rank_distance (``numpy.ndarray``): Rank distance of every match.
        interest (``numpy.ndarray``): Interest class of every match, as an
            index into ``("high", "special", "regular")``.
        baseline_rank_index (``numpy.ndarray``): Rank indexes of the random
            pairs.
        baseline_rank_distance (``numpy.ndarray``): Rank distances of the
            random pairs.
    """

    def __init__(
        self,
        config,
        roster_ranks,
        fairness,
        run_ids,
        fixture_ids,
        rank_index,
        rank_distance,
        interest,
        baseline_rank_index,
        baseline_rank_distance,
    ):
        self._config = config
        self._roster_ranks = tuple(roster_ranks)
        self._fairness = fairness
        self._run_ids = run_ids
        self._fixture_ids = list(fixture_ids)
        self._rank_index = rank_index
        self._rank_distance = rank_distance
        self._interest = interest
        self._baseline_rank_index = baseline_rank_index
        self._baseline_rank_distance = baseline_rank_distance

        n_runs = config.n_runs
        self._match_counts = numpy.bincount(run_ids, minlength=n_runs)
        self._interest_counts = numpy.zeros(
            (n_runs, len(cup48.const.interest_classes)), dtype=numpy.int64
        )
        numpy.add.at(self._interest_counts, (run_ids, interest), 1)

    def __repr__(self):
        return "<BatchSummary {0} ({1} runs) at 0x{2:012x}>".format(
            repr(self.format_name), self.n_runs, id(self)
        )

    @property
    def config(self):
        return self._config

    @property
    def format_name(self):
        return self._config.format_name

    @property
    def n_runs(self):
        return self._config.n_runs

    @property
    def gammas(self):
        return self._config.gammas

    @property
    def roster_ranks(self):
        return self._roster_ranks

    @property
    def match_counts(self):
        """
        Number of matches in each run.
        """
        return self._match_counts

    def _gamma_column(self, gamma):
        if gamma is None:
            gamma = self._config.gamma
        gamma = float(gamma)
        if gamma not in self._config.gammas:
            raise ValueError(
                "gamma {0} was not evaluated; this batch has {1}".format(
                    gamma, list(self._config.gammas)
                )
            )
        return self._config.gammas.index(gamma)

    def fairness_samples(self, gamma=None):
        """
        Fairness index of every run, in run order.
        """
        return self._fairness[:, self._gamma_column(gamma)].copy()

    def fairness_cdf(self, gamma=None):
        """
        Returns ``(values, probabilities)``: the sorted fairness indexes and
        the empirical cumulative probability at each of them.
        """
        values = numpy.sort(self.fairness_samples(gamma))
        probabilities = numpy.arange(1, len(values) + 1, dtype=numpy.float64) / len(values)
        return values, probabilities

    def quantile(self, q, gamma=None):
        """
        Quantile ``q`` (between 0 and 1) of the fairness index.
        """
        return float(numpy.quantile(self.fairness_samples(gamma), q))

    @property
    def rank_index_histogram(self):
        return cup48.metrics.rank_index_histogram(self._rank_index)

    @property
    def baseline_rank_index_histogram(self):
        return cup48.metrics.rank_index_histogram(self._baseline_rank_index)

    @property
    def rank_index_ratio(self):
        """
        Frequency of each rank-index bin relative to the baseline; NaN where
        the baseline bin is empty.
        """
        return _ratio(self.rank_index_histogram, self.baseline_rank_index_histogram)

    @property
    def rank_distance_histogram(self):
        return cup48.metrics.rank_distance_histogram(self._rank_distance)

    @property
    def baseline_rank_distance_histogram(self):
        return cup48.metrics.rank_distance_histogram(self._baseline_rank_distance)

    @property
    def rank_distance_ratio(self):
        return _ratio(self.rank_distance_histogram, self.baseline_rank_distance_histogram)

    def low_rank_distance_ratio(self, limit=cup48.const.low_rank_distance):
        """
        Frequency of matches with rank distance ``<= limit``, relative to the
        baseline.
        """
        observed = numpy.mean(self._rank_distance <= limit)
        baseline = numpy.mean(self._baseline_rank_distance <= limit)
        return float(observed / baseline)

    @property
    def interest_counts(self):
        """
        Array of shape ``(n_runs, 3)``: matches per run in each interest
        class, in the order ``("high", "special", "regular")``.
        """
        return self._interest_counts

    def interest_distribution(self, interest):
        """
        Probability of each number of matches ``k = 0, 1, ...`` of class
        ``interest`` in one tournament.
        """
        if interest not in _class_index:
            raise ValueError(
                "interest must be one of {0}, not {1}".format(
                    cup48.const.interest_classes, repr(interest)
                )
            )
        counts = self._interest_counts[:, _class_index[interest]]
        return numpy.bincount(counts).astype(numpy.float64) / len(counts)

    def mean_interest(self, interest=None):
        """
        Mean number of matches per run of class ``interest``, or a dict of
        all three if None.
        """
        means = self._interest_counts.mean(axis=0)
        if interest is None:
            return dict(
                (name, float(means[i])) for name, i in _class_index.items()
            )
        return float(means[_class_index[interest]])

    def match_rows(self):
        """
        Yields ``(run_id, fixture_id, rank_index, rank_distance, interest)``
        for every match.
        """
        names = cup48.const.interest_classes
        for i in range(len(self._fixture_ids)):
            yield (
                int(self._run_ids[i]),
                self._fixture_ids[i],
                float(self._rank_index[i]),
                int(self._rank_distance[i]),
                names[self._interest[i]],
            )

    def fairness_rows(self, gamma=None):
        """
        Yields ``(run_id, fairness_index)`` for every run.
        """
        for i, value in enumerate(self.fairness_samples(gamma)):
            yield i, float(value)

    def to_dict(self):
        return {
            "config": self._config.to_dict(),
            "mean_matches": float(self._match_counts.mean()),
            "fairness": dict(
                (
                    repr(gamma),
                    {
                        "mean": float(numpy.mean(self.fairness_samples(gamma))),
                        "lower_quartile": self.quantile(0.25, gamma),
                        "median": self.quantile(0.5, gamma),
                        "upper_quartile": self.quantile(0.75, gamma),
                    },
                )
                for gamma in self._config.gammas
            ),
            "rank_index": {
                "histogram": [float(x) for x in self.rank_index_histogram],
                "baseline": [float(x) for x in self.baseline_rank_index_histogram],
                "ratio": _jsonable(self.rank_index_ratio),
            },
            "rank_distance": {
                "histogram": [float(x) for x in self.rank_distance_histogram],
                "baseline": [float(x) for x in self.baseline_rank_distance_histogram],
                "ratio": _jsonable(self.rank_distance_ratio),
                "low_ratio": self.low_rank_distance_ratio(),
            },
            "interest": {
                "mean": self.mean_interest(),
                "distribution": dict(
                    (name, [float(x) for x in self.interest_distribution(name)])
                    for name in cup48.const.interest_classes
                ),
            },
        }

    def to_json(self, where=None, indent=2):
        """
        Args:
            where (None, str, or file): If None, return the JSON text;
                otherwise write it to this path or file object.
            indent (int): JSON indentation.
        """
        text = json.dumps(self.to_dict(), indent=indent, sort_keys=True)
        if where is None:
            return text
        file, should_close = cup48._util.open_for_writing(where)
        try:
            file.write(text)
            file.write("\n")
        finally:
            if should_close:
                file.close()

    def write_fairness_cdf(self, where):
        """
        CSV ``gamma,fairness_index,cumulative_probability`` for every
        evaluated gamma.
        """
        file, should_close = cup48._util.open_for_writing(where)
        try:
            writer = csv.writer(file, lineterminator="\n")
            writer.writerow(["gamma", "fairness_index", "cumulative_probability"])
            for gamma in self._config.gammas:
                values, probabilities = self.fairness_cdf(gamma)
                for value, probability in zip(values, probabilities):
                    writer.writerow([repr(gamma), repr(float(value)), repr(float(probability))])
        finally:
            if should_close:
                file.close()

    def write_rank_index(self, where):
        """
        CSV ``bin_low,bin_high,frequency,baseline_frequency,ratio``.
        """
        width = cup48.const.rank_index_bin_width
        rows = zip(
            self.rank_index_histogram,
            self.baseline_rank_index_histogram,
            self.rank_index_ratio,
        )
        file, should_close = cup48._util.open_for_writing(where)
        try:
            writer = csv.writer(file, lineterminator="\n")
            writer.writerow(["bin_low", "bin_high", "frequency", "baseline_frequency", "ratio"])
            for i, (observed, baseline, ratio) in enumerate(rows):
                writer.writerow(
                    [
                        repr(i * width),
                        repr((i + 1) * width),
                        repr(float(observed)),
                        repr(float(baseline)),
                        "" if numpy.isnan(ratio) else repr(float(ratio)),
                    ]
                )
        finally:
            if should_close:
                file.close()

    def write_rank_distance(self, where):
        """
        CSV ``rank_distance,frequency,baseline_frequency,ratio``.
        """
        rows = zip(
            self.rank_distance_histogram,
            self.baseline_rank_distance_histogram,
            self.rank_distance_ratio,
        )
        file, should_close = cup48._util.open_for_writing(where)
        try:
            writer = csv.writer(file, lineterminator="\n")
            writer.writerow(["rank_distance", "frequency", "baseline_frequency", "ratio"])
            for i, (observed, baseline, ratio) in enumerate(rows):
                writer.writerow(
                    [
                        i,
                        repr(float(observed)),
                        repr(float(baseline)),
                        "" if numpy.isnan(ratio) else repr(float(ratio)),
                    ]
                )
        finally:
            if should_close:
                file.close()

    def write_interest_counts(self, where):
        """
        CSV ``interest,count,probability``: the probability of exactly
        ``count`` matches of each class in one tournament.
        """
        file, should_close = cup48._util.open_for_writing(where)
        try:
            writer = csv.writer(file, lineterminator="\n")
            writer.writerow(["interest", "count", "probability"])
            for name in cup48.const.interest_classes:
                for count, probability in enumerate(self.interest_distribution(name)):
                    writer.writerow([name, count, repr(float(probability))])
        finally:
            if should_close:
                file.close()

    def output_files(self, directory):
        """
        Paths that :doc:`cup48.montecarlo.BatchSummary.write_figures` writes.
        """
        return figure_files(directory)

    def write_figures(self, directory):
        """
        Writes the four plot-ready CSV files into ``directory`` and returns
        their paths.
        """
        directory = cup48._util.ensure_dir(directory)
        paths = self.output_files(directory)
        writers = (
            self.write_fairness_cdf,
            self.write_rank_index,
            self.write_rank_distance,
            self.write_interest_counts,
        )
        for path, writer in zip(paths, writers):
            writer(path)
            logger.debug("wrote %s", path)
        return paths


class ComparisonReport(object):
    """
    Side-by-side view of :doc:`cup48.montecarlo.BatchSummary` objects of
    different formats, all relative to a reference format
    (``"double-elim-48"`` when present).
    """

    def __init__(self, summaries, reference):
        self._summaries = dict((s.format_name, s) for s in summaries)
        self._order = [s.format_name for s in summaries]
        self._reference = reference

    def __repr__(self):
        return "<ComparisonReport of {0} at 0x{1:012x}>".format(
            ", ".join(self._order), id(self)
        )

    @property
    def formats(self):
        return list(self._order)

    @property
    def reference(self):
        return self._reference

    @property
    def others(self):
        return [name for name in self._order if name != self._reference]

    def summary(self, format_name):
        return self._summaries[format_name]

    @property
    def match_counts(self):
        """
        Mean matches per tournament of each format.
        """
        return dict(
            (name, float(s.match_counts.mean())) for name, s in self._summaries.items()
        )

    def fairness_quantiles(self, gamma=None):
        """
        Dict from format to its ``{"lower_quartile", "median"}`` fairness
        indexes.
        """
        return dict(
            (
                name,
                {
                    "lower_quartile": s.quantile(0.25, gamma),
                    "median": s.quantile(0.5, gamma),
                },
            )
            for name, s in self._summaries.items()
        )

    def dominates(self, other, gamma=None):
        """
        True if the reference format's fairness CDF lies weakly above that of
        ``other`` at the lower quartile and the median: its fairness indexes
        there are no larger.
        """
        quantiles = self.fairness_quantiles(gamma)
        mine = quantiles[self._reference]
        theirs = quantiles[other]
        return (
            mine["lower_quartile"] <= theirs["lower_quartile"]
            and mine["median"] <= theirs["median"]
        )

    @property
    def mean_interest(self):
        return dict((name, s.mean_interest()) for name, s in self._summaries.items())

    def interest_ratio(self, other, interest):
        """
        Mean count of ``interest`` matches in the reference format divided
        by that of ``other``.
        """
        mine = self._summaries[self._reference].mean_interest(interest)
        theirs = self._summaries[other].mean_interest(interest)
        if theirs == 0:
            return float("nan")
        return mine / theirs

    @property
    def low_rank_distance(self):
        """
        Baseline-relative frequency of matches with rank distance ``<= 10``
        for each format.
        """
        return dict(
            (name, s.low_rank_distance_ratio()) for name, s in self._summaries.items()
        )

    def to_dict(self):
        gammas = self._summaries[self._reference].gammas
        return {
            "reference": self._reference,
            "match_counts": self.match_counts,
            "fairness": dict(
                (
                    repr(gamma),
                    {
                        "quantiles": self.fairness_quantiles(gamma),
                        "reference_dominates": dict(
                            (other, self.dominates(other, gamma)) for other in self.others
                        ),
                    },
                )
                for gamma in gammas
            ),
            "mean_interest": self.mean_interest,
            "interest_ratios": dict(
                (
                    other,
                    dict(
                        (name, self.interest_ratio(other, name))
                        for name in cup48.const.interest_classes
                    ),
                )
                for other in self.others
            ),
            "low_rank_distance": self.low_rank_distance,
        }

    def to_json(self, where=None, indent=2):
        """
        Args:
            where (None, str, or file): If None, return the JSON text;
                otherwise write it to this path or file object.
            indent (int): JSON indentation.
        """
        text = json.dumps(self.to_dict(), indent=indent, sort_keys=True)
        if where is None:
            return text
        file, should_close = cup48._util.open_for_writing(where)
        try:
            file.write(text)
            file.write("\n")
        finally:
            if should_close:
                file.close()


def compare_formats(summaries):
    """
    Args:
        summaries (iterable of :doc:`cup48.montecarlo.BatchSummary`): One
            summary per format, all run with the same roster, number of runs,
            gammas and interest threshold.

    Returns a :doc:`cup48.montecarlo.ComparisonReport`.
    """
    summaries = list(summaries)
    if len(summaries) < 2:
        raise ValueError("compare_formats needs at least two summaries")

    names = [s.format_name for s in summaries]
    if len(set(names)) != len(names):
        raise ValueError("compare_formats got two summaries of the same format")

    first = summaries[0]
    for s in summaries[1:]:
        for attr in ("n_runs", "gammas", "roster_ranks"):
            if getattr(s, attr) != getattr(first, attr):
                raise ValueError(
                    "summaries of {0} and {1} differ in {2}".format(
                        repr(first.format_name), repr(s.format_name), attr
                    )
                )
        if s.config.interest_threshold != first.config.interest_threshold:
            raise ValueError(
                "summaries of {0} and {1} differ in interest_threshold".format(
                    repr(first.format_name), repr(s.format_name)
                )
            )

    if cup48.const.double_elim in names:
        reference = cup48.const.double_elim
    else:
        reference = names[0]
    return ComparisonReport(summaries, reference)
