# BSD 3-Clause License; see LICENSE

from __future__ import absolute_import

import datetime
import json
import os

import pytest

import cup48
import cup48.scheduler
from cup48.model import Roster
from cup48.rng import RngStream
from cup48.scheduler import (
    ScheduleError,
    ScheduleParams,
    critical_path,
    duration_curve,
    export_calendar,
    schedule,
)


@pytest.fixture(scope="module")
def de():
    return cup48.build_plan("double-elim-48")


@pytest.fixture(scope="module")
def g3():
    return cup48.build_plan("group-of-3")


@pytest.fixture(scope="module")
def g4():
    return cup48.build_plan("group-of-4")


def test_group_of_3_in_32_days(g3):
    assignment = schedule(g3, ScheduleParams(max_per_day=4, rest_days=4))
    assert assignment.duration == 32
    assert assignment.check() == []
    assert assignment.day_of("M01") == 0
    assert assignment.day_of(g3.final) == 31


def test_double_elim_durations(de):
    five = schedule(de, ScheduleParams(max_per_day=5, rest_days=4, repechage_rest_days=3))
    assert abs(five.duration - 38) <= 2
    assert five.check() == []

    four = schedule(de, ScheduleParams(max_per_day=4, rest_days=4, repechage_rest_days=3))
    assert four.duration == 39
    assert four.check() == []


def test_group_of_4_within_39_days(g4):
    assignment = schedule(g4, ScheduleParams(max_per_day=4, rest_days=4))
    assert assignment.duration <= 39
    assert assignment.check() == []


def test_opening_days_of_six(de):
    params = ScheduleParams(
        max_per_day=4,
        rest_days=4,
        repechage_rest_days=3,
        per_day_capacities=[6] * 8,
        start_date="2026-06-15",
    )
    assignment = schedule(de, params)
    assert assignment.duration == 35
    assert assignment.check() == []
    assert max(assignment.load().values()) == 6
    assert assignment.date_of(de.final) == datetime.date(2026, 7, 19)

    rows = export_calendar(assignment)
    assert len(rows) == 96
    assert rows[0] == ("2026-06-15", "M01", "R1", "main")
    assert rows[-1][0] == "2026-07-19"
    assert [row[0] for row in rows] == sorted(row[0] for row in rows)


def test_final_is_last(de, g3, g4):
    for plan in (de, g3, g4):
        params = ScheduleParams(max_per_day=4, rest_days=4)
        assignment = schedule(plan, params)
        last = max(assignment.days.values())
        assert assignment.day_of(plan.final) == last
        assert assignment.fixtures_on(last)[-1] == plan.final
        for semifinal in plan.predecessors(plan.third_place):
            assert assignment.day_of(plan.final) - assignment.day_of(semifinal) >= 4


def test_critical_path(de, g3):
    params = ScheduleParams(max_per_day=None, per_day_capacities=[96] * 60, repechage_rest_days=3)
    assert critical_path(de, params) == 31
    assert schedule(de, params).duration == 31
    assert schedule(de, ScheduleParams(max_per_day=96, repechage_rest_days=3)).duration == 31
    assert critical_path(g3, ScheduleParams()) <= schedule(g3, ScheduleParams()).duration


def test_capacity_one(g3):
    assignment = schedule(g3, ScheduleParams(max_per_day=1))
    assert assignment.duration >= 80
    assert set(assignment.load().values()) == set([1])


def test_duration_curve(de, tmpdir):
    curve = duration_curve(de, range(1, 13), rest_days=4, repechage_rest_days=3)
    assert len(curve) == 12
    assert curve.duration(1) >= 96
    assert curve.duration(4) == 39
    assert curve.duration(12) >= 31
    for capacity, duration in curve:
        if capacity not in curve.non_monotone and capacity > 1:
            assert duration <= curve.duration(capacity - 1)

    path = str(tmpdir.join("curve.csv"))
    curve.write_csv(path)
    with open(path) as file:
        lines = file.read().splitlines()
    assert lines[0] == "max_per_day,duration,non_monotone"
    assert lines[4].startswith("4,39,")
    assert len(lines) == 13

    with pytest.raises(ScheduleError):
        duration_curve(de, [])
    with pytest.raises(KeyError):
        curve.duration(99)


def test_non_monotone_flags():
    curve = cup48.scheduler.DurationCurve("x", [(3, 40), (4, 38), (5, 39), (6, 37)])
    assert curve.non_monotone == [5]


def test_params_errors():
    with pytest.raises(ScheduleError):
        ScheduleParams(max_per_day=0)
    with pytest.raises(ScheduleError):
        ScheduleParams(rest_days=0)
    with pytest.raises(ScheduleError):
        ScheduleParams(rest_days=3, repechage_rest_days=4)
    with pytest.raises(ScheduleError):
        ScheduleParams(max_per_day=None)
    with pytest.raises(ScheduleError):
        ScheduleParams(start_date="15/06/2026")
    with pytest.raises(ScheduleError):
        ScheduleParams(max_per_day=None, per_day_capacities=[4]).capacity(1)

    params = ScheduleParams(rest_days=4)
    assert params.repechage_rest_days == 4
    assert params.replace(rest_days=5).repechage_rest_days == 5
    assert params.replace(repechage_rest_days=3).rest_days == 4


def test_running_past_the_capacity_sequence(g3):
    with pytest.raises(ScheduleError):
        schedule(g3, ScheduleParams(max_per_day=None, per_day_capacities=[4] * 10))


def test_params_from_file(tmpdir):
    path = str(tmpdir.join("schedule.cfg"))
    with open(path, "w") as file:
        file.write(
            "# opening days\n"
            "per_day_capacities = 6, 6, 6, 6, 6, 6, 6, 6\n"
            "max_per_day = 4\n"
            "repechage_rest_days = 3   # shorter rest in the repechage\n"
            "start_date = 2026-06-15\n"
        )
    params = ScheduleParams.from_file(path)
    assert params.per_day_capacities == (6,) * 8
    assert params.max_per_day == 4
    assert params.rest_days == 4
    assert params.repechage_rest_days == 3
    assert params.start_date == datetime.date(2026, 6, 15)
    assert ScheduleParams.from_file(path, max_per_day=5, start_date=None).max_per_day == 5

    json_path = str(tmpdir.join("schedule.json"))
    with open(json_path, "w") as file:
        json.dump(params.to_dict(), file)
    assert ScheduleParams.from_file(json_path) == params

    bad = str(tmpdir.join("bad.cfg"))
    with open(bad, "w") as file:
        file.write("matches_per_day = 4\n")
    with pytest.raises(ScheduleError):
        ScheduleParams.from_file(bad)
    with open(bad, "w") as file:
        file.write("max_per_day 4\n")
    with pytest.raises(ScheduleError):
        ScheduleParams.from_file(bad)
    with open(bad, "w") as file:
        file.write("max_per_day = four\n")
    with pytest.raises(ScheduleError):
        ScheduleParams.from_file(bad)


def test_export_calendar_file(g3, tmpdir):
    assignment = schedule(g3, ScheduleParams())
    path = str(tmpdir.join("calendar.csv"))
    export_calendar(assignment, "2026-06-11", path)
    with open(path) as file:
        lines = file.read().splitlines()
    assert lines[0] == "date,fixture_id,round_tag,bracket"
    assert lines[1] == "2026-06-11,M01,G1,group"
    assert lines[-1].startswith("2026-07-12,")
    assert len(lines) == 81

    counts = {}
    for line in lines[1:]:
        date = line.split(",")[0]
        counts[date] = counts.get(date, 0) + 1
    assert max(counts.values()) <= 4

    with pytest.raises(ScheduleError):
        export_calendar(assignment)
    with pytest.raises(ScheduleError):
        export_calendar(assignment, "June 11")


def test_empty_calendar(g3, tmpdir):
    empty = cup48.scheduler.ScheduleAssignment(g3, ScheduleParams(), {})
    assert empty.duration == 0
    path = os.path.join(str(tmpdir), "empty.csv")
    export_calendar(empty, "2026-06-11", path)
    with open(path) as file:
        assert file.read() == "date,fixture_id,round_tag,bracket\n"


def test_team_rest_on_simulated_runs(de, g4):
    for plan in (de, g4):
        params = ScheduleParams(max_per_day=4, rest_days=4, repechage_rest_days=3)
        assignment = schedule(plan, params)
        for seed in range(5):
            result = cup48.run_tournament(plan, Roster.default(), RngStream(seed))
            assert cup48.scheduler.check_team_rest(assignment, result) == []


def test_check_reports_violations(g3):
    assignment = schedule(g3, ScheduleParams())
    days = assignment.days
    days["M17"] = days["M01"] + 1
    broken = cup48.scheduler.ScheduleAssignment(g3, ScheduleParams(), days)
    assert any("M17" in x for x in broken.check())

    crowded = cup48.scheduler.ScheduleAssignment(
        g3, ScheduleParams(), dict((f.id, 0) for f in g3.fixtures[:5])
    )
    assert any("capacity" in x for x in crowded.check())


def test_deterministic(de):
    params = ScheduleParams(max_per_day=5, repechage_rest_days=3)
    assert schedule(de, params).days == schedule(de, params).days
    assert schedule(de, params).to_dict()["duration"] == schedule(de, params).duration
