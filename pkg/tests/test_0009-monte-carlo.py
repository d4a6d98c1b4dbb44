# BSD 3-Clause License; see LICENSE

from __future__ import absolute_import

import json
import os

import numpy
import pytest

import cup48
import cup48.futures
import cup48.metrics
import cup48.montecarlo
from cup48.model import Roster
from cup48.montecarlo import BatchConfig, compare_formats, run_batch
from cup48.rng import RngStream


def test_config():
    config = BatchConfig("double-elim-48", 10, 123, gamma=2, gammas=[1, 4, 2])
    assert config.gammas == (1.0, 2.0, 4.0)
    assert config.gamma == 2.0
    assert config.with_format("group-of-3").format_name == "group-of-3"
    assert config.with_format("group-of-3").gammas == config.gammas
    assert config.to_dict()["interest_threshold"] == 8

    with pytest.raises(cup48.formats.PlanError):
        BatchConfig("knockout-64", 10, 123)
    with pytest.raises(ValueError):
        BatchConfig("double-elim-48", 0, 123)
    with pytest.raises(ValueError):
        BatchConfig("double-elim-48", 10, -1)
    with pytest.raises(ValueError):
        BatchConfig("double-elim-48", 10, 123, gamma=0)
    with pytest.raises(ValueError):
        BatchConfig("double-elim-48", 10, 123, gammas=[-1])
    with pytest.raises(ValueError):
        BatchConfig("double-elim-48", 10, 123, interest_threshold=0)


def test_single_run_matches_the_engine():
    roster = Roster.default()
    summary = run_batch(BatchConfig("double-elim-48", 1, 77), roster)

    result = cup48.run_tournament(
        cup48.build_plan("double-elim-48"), roster, RngStream(77).substream(0)
    )
    skill = cup48.metrics.SkillOrder(roster)
    assert summary.fairness_samples()[0] == cup48.metrics.fairness_index(
        result.classification, skill
    )
    assert list(summary.match_counts) == [96]
    rows = list(summary.match_rows())
    assert [r[1] for r in rows] == [m.fixture_id for m in result.match_log]
    assert all(r[0] == 0 for r in rows)


@pytest.mark.parametrize(
    "name,matches", [("double-elim-48", 96), ("group-of-3", 80), ("group-of-4", 104)]
)
def test_match_counts(name, matches):
    summary = run_batch(BatchConfig(name, 4, 5))
    assert list(summary.match_counts) == [matches] * 4
    assert list(summary.interest_counts.sum(axis=1)) == [matches] * 4
    assert summary.rank_index_histogram.sum() == pytest.approx(1.0)
    assert summary.rank_distance_histogram.sum() == pytest.approx(1.0)


def test_reproducible_and_executor_independent():
    config = BatchConfig("group-of-4", 6, 2024, gammas=[1])
    one = run_batch(config)
    two = run_batch(config, executor=cup48.futures.TrivialExecutor())
    with cup48.futures.ThreadPoolExecutor(3) as executor:
        three = run_batch(config, executor=executor)

    for other in (two, three):
        assert numpy.array_equal(one.fairness_samples(), other.fairness_samples())
        assert numpy.array_equal(one.fairness_samples(1), other.fairness_samples(1))
        assert list(one.match_rows()) == list(other.match_rows())
        assert numpy.array_equal(one.interest_counts, other.interest_counts)
        assert one.to_json() == other.to_json()

    different = run_batch(BatchConfig("group-of-4", 6, 2025, gammas=[1]))
    assert not numpy.array_equal(one.fairness_samples(), different.fairness_samples())


def test_summary_views():
    summary = run_batch(BatchConfig("double-elim-48", 8, 3, gammas=[1]))
    values, probabilities = summary.fairness_cdf()
    assert list(values) == sorted(values)
    assert probabilities[-1] == 1.0
    assert summary.quantile(0.5) == pytest.approx(numpy.median(summary.fairness_samples()))
    assert all(x >= 0 for x in summary.fairness_samples())
    with pytest.raises(ValueError):
        summary.fairness_samples(3)

    for name in ("high", "special", "regular"):
        distribution = summary.interest_distribution(name)
        assert distribution.sum() == pytest.approx(1.0)
    with pytest.raises(ValueError):
        summary.interest_distribution("medium")
    means = summary.mean_interest()
    assert sum(means.values()) == pytest.approx(96.0)
    assert summary.mean_interest("high") == means["high"]

    data = json.loads(summary.to_json())
    assert data["config"]["format"] == "double-elim-48"
    assert data["mean_matches"] == 96.0
    assert sorted(data["fairness"]) == ["1.0", "2.0"]
    assert len(data["rank_index"]["histogram"]) == 20
    assert len(data["rank_distance"]["histogram"]) == 48


def test_write_figures(tmpdir):
    summary = run_batch(BatchConfig("group-of-3", 3, 9))
    directory = os.path.join(str(tmpdir), "figures")
    paths = summary.write_figures(directory)
    assert [os.path.basename(p) for p in paths] == [
        "fig2_fairness_cdf.csv",
        "fig3_rank_index.csv",
        "fig4_rank_distance.csv",
        "fig5_interest_counts.csv",
    ]
    assert paths == cup48.montecarlo.figure_files(directory)

    with open(paths[0]) as file:
        lines = file.read().splitlines()
    assert lines[0] == "gamma,fairness_index,cumulative_probability"
    assert len(lines) == 1 + 3
    assert lines[-1].endswith(",1.0")

    with open(paths[1]) as file:
        lines = file.read().splitlines()
    assert lines[0] == "bin_low,bin_high,frequency,baseline_frequency,ratio"
    assert lines[1].startswith("0.0,5.0,")
    assert len(lines) == 21

    with open(paths[2]) as file:
        assert len(file.read().splitlines()) == 49

    with open(paths[3]) as file:
        assert file.readline().strip() == "interest,count,probability"


def test_compare_formats_errors():
    de = run_batch(BatchConfig("double-elim-48", 2, 1))
    g3 = run_batch(BatchConfig("group-of-3", 2, 1))
    with pytest.raises(ValueError):
        compare_formats([de])
    with pytest.raises(ValueError):
        compare_formats([de, run_batch(BatchConfig("double-elim-48", 2, 2))])
    with pytest.raises(ValueError):
        compare_formats([de, run_batch(BatchConfig("group-of-3", 3, 1))])
    with pytest.raises(ValueError):
        compare_formats([de, run_batch(BatchConfig("group-of-3", 2, 1, gammas=[1]))])
    with pytest.raises(ValueError):
        compare_formats(
            [de, run_batch(BatchConfig("group-of-3", 2, 1, interest_threshold=10))]
        )
    assert compare_formats([g3, de]).reference == "double-elim-48"


def test_compare_formats_report():
    config = BatchConfig("double-elim-48", 3, 11)
    summaries = [
        run_batch(config.with_format(name))
        for name in ("double-elim-48", "group-of-3", "group-of-4")
    ]
    report = compare_formats(summaries)
    assert report.reference == "double-elim-48"
    assert report.others == ["group-of-3", "group-of-4"]
    assert report.match_counts == {
        "double-elim-48": 96.0,
        "group-of-3": 80.0,
        "group-of-4": 104.0,
    }
    data = json.loads(report.to_json())
    assert set(data["interest_ratios"]) == set(["group-of-3", "group-of-4"])
    assert set(data["fairness"]["2.0"]["reference_dominates"]) == set(
        ["group-of-3", "group-of-4"]
    )
    # more matches in total than the group-of-3 format
    assert report.interest_ratio("group-of-3", "regular") > 1.0


@pytest.fixture(scope="module")
def large_report():
    config = BatchConfig("double-elim-48", 2000, 2026, gamma=2, gammas=[1, 3])
    with cup48.futures.ThreadPoolExecutor() as executor:
        summaries = [
            run_batch(config.with_format(name), executor=executor)
            for name in ("double-elim-48", "group-of-3", "group-of-4")
        ]
    return compare_formats(summaries)


@pytest.mark.slow
def test_interest_ratios_at_scale(large_report):
    report = large_report
    assert 1.05 <= report.interest_ratio("group-of-3", "special") <= 1.35
    assert 1.05 <= report.interest_ratio("group-of-3", "regular") <= 1.35
    assert 0.85 <= report.interest_ratio("group-of-4", "special") <= 1.05
    assert 0.80 <= report.interest_ratio("group-of-4", "regular") <= 1.00

    # uniform draws without pots: more high-interest matches than both group
    # formats, by less than a seeded draw would give against group-of-4
    assert report.interest_ratio("group-of-3", "high") > 1.25
    assert report.interest_ratio("group-of-4", "high") > 1.0

    # every format pairs strong teams more often than random pairing does
    for name in report.formats:
        histogram = report.summary(name).rank_index_histogram
        baseline = report.summary(name).baseline_rank_index_histogram
        assert histogram[15:].sum() > baseline[15:].sum()


@pytest.mark.slow
def test_fairness_dominance_at_scale(large_report):
    report = large_report
    for gamma in (1, 2, 3):
        assert report.dominates("group-of-3", gamma)

        # close to group-of-4 without dominating it
        quantiles = report.fairness_quantiles(gamma)
        assert (
            quantiles["double-elim-48"]["median"]
            < 1.1 * quantiles["group-of-4"]["median"]
        )


@pytest.mark.slow
def test_close_matches_at_scale(large_report):
    low = large_report.low_rank_distance
    assert low["double-elim-48"] > low["group-of-3"]
    assert low["double-elim-48"] > low["group-of-4"]
