# BSD 3-Clause License; see LICENSE

"""
Assigns the fixtures of a :doc:`cup48.formats.FormatPlan` to calendar days.

:doc:`cup48.scheduler.schedule` is greedy: it takes the fixtures in plan
order and puts each on the earliest day that is at least ``gap`` days after
every fixture it depends on and that still has spare capacity. The gap is
``repechage_rest_days`` for repechage fixtures and ``rest_days`` for all
others; "4 days of rest" means a team playing on day ``d`` plays next on day
``d + 4`` at the earliest.

Rest is enforced on the plan's dependency graph rather than on team
identities, which are unknown when a calendar is published; every team's
consecutive matches are linked by a dependency, so the realized gaps are at
least as long (see :doc:`cup48.scheduler.check_team_rest`).
"""

from __future__ import absolute_import

import csv
import datetime
import json
import logging
import os

import cup48._util
import cup48.const

logger = logging.getLogger(__name__)


class ScheduleError(ValueError):
    """
    Exception raised for invalid schedule parameters or dates, and for
    schedules that run past a finite capacity sequence.
    """

    pass


def parse_date(value):
    """
    Returns a ``datetime.date`` for a date or an ISO ``YYYY-MM-DD`` string.
    """
    if value is None or isinstance(value, datetime.date):
        return value
    try:
        return datetime.datetime.strptime(str(value), "%Y-%m-%d").date()
    except ValueError:
        raise ScheduleError(
            "invalid date {0}; expected YYYY-MM-DD".format(repr(value))
        )


def _positive(name, value, minimum=1):
    if not cup48._util.isint(value) or value < minimum:
        raise ScheduleError(
            "{0} must be an integer >= {1}, not {2}".format(name, minimum, repr(value))
        )
    return int(value)


class ScheduleParams(object):
    """
    Args:
        max_per_day (None or int): Fixtures per day after the
            ``per_day_capacities`` sequence (or on every day without one).
            None means the sequence is all the calendar there is.
        rest_days (int): Minimum day difference between a fixture and the
            fixtures it depends on.
        repechage_rest_days (None or int): The same for repechage fixtures;
            no larger than ``rest_days``, which it defaults to.
        per_day_capacities (None or iterable of int): Capacity of the first
            days, such as six fixtures on each opening day.
        start_date (None, str, or ``datetime.date``): Date of day 0.
    """

    _keys = (
        "max_per_day",
        "rest_days",
        "repechage_rest_days",
        "per_day_capacities",
        "start_date",
    )

    def __init__(
        self,
        max_per_day=cup48.const.default_max_per_day,
        rest_days=cup48.const.default_rest_days,
        repechage_rest_days=None,
        per_day_capacities=None,
        start_date=None,
    ):
        if max_per_day is not None:
            max_per_day = _positive("max_per_day", max_per_day)
        rest_days = _positive("rest_days", rest_days)
        if repechage_rest_days is None:
            repechage_rest_days = rest_days
        repechage_rest_days = _positive("repechage_rest_days", repechage_rest_days)
        if repechage_rest_days > rest_days:
            raise ScheduleError(
                "repechage_rest_days ({0}) must not exceed rest_days ({1})".format(
                    repechage_rest_days, rest_days
                )
            )
        if per_day_capacities is not None:
            per_day_capacities = tuple(
                _positive("per_day_capacities entry", x, 0) for x in per_day_capacities
            )
        if max_per_day is None and not per_day_capacities:
            raise ScheduleError("either max_per_day or per_day_capacities is required")

        self._max_per_day = max_per_day
        self._rest_days = rest_days
        self._repechage_rest_days = repechage_rest_days
        self._per_day_capacities = per_day_capacities
        self._start_date = parse_date(start_date)

    @classmethod
    def from_file(cls, path, **overrides):
        """
        Args:
            path (str or ``pathlib.Path``): A JSON object, or lines of
                ``key = value`` (``#`` starts a comment), with any of the keys
                ``max_per_day``, ``rest_days``, ``repechage_rest_days``,
                ``per_day_capacities`` (a list, or comma-separated), and
                ``start_date``.
            overrides: Values that take precedence over the file (None
                values are ignored).

        Reads schedule parameters from a file.
        """
        path = cup48._util.regularize_path(path)
        with open(path, "r") as file:
            text = file.read()

        if os.path.splitext(path)[1].lower() == ".json" or text.lstrip().startswith("{"):
            try:
                data = json.loads(text)
            except ValueError as err:
                raise ScheduleError("cannot parse {0}: {1}".format(path, err))
            if not isinstance(data, dict):
                raise ScheduleError("{0} must hold a JSON object".format(path))
        else:
            data = {}
            for number, line in enumerate(text.splitlines()):
                line = line.split("#", 1)[0].strip()
                if line == "":
                    continue
                if "=" not in line:
                    raise ScheduleError(
                        "{0}, line {1}: expected 'key = value'".format(path, number + 1)
                    )
                key, value = [x.strip() for x in line.split("=", 1)]
                data[key] = _parse_value(key, value, path)

        unknown = set(data) - set(cls._keys)
        if len(unknown) != 0:
            raise ScheduleError(
                "unknown keys in {0}: {1}".format(path, ", ".join(sorted(unknown)))
            )
        for key, value in overrides.items():
            if key not in cls._keys:
                raise TypeError("unknown schedule parameter: {0}".format(key))
            if value is not None:
                data[key] = value
        return cls(**data)

    def __repr__(self):
        return "ScheduleParams({0})".format(
            ", ".join("{0}={1}".format(k, repr(getattr(self, k))) for k in self._keys)
        )

    def __eq__(self, other):
        return isinstance(other, ScheduleParams) and all(
            getattr(self, k) == getattr(other, k) for k in self._keys
        )

    def __ne__(self, other):
        return not self == other

    @property
    def max_per_day(self):
        return self._max_per_day

    @property
    def rest_days(self):
        return self._rest_days

    @property
    def repechage_rest_days(self):
        return self._repechage_rest_days

    @property
    def per_day_capacities(self):
        return self._per_day_capacities

    @property
    def start_date(self):
        return self._start_date

    def replace(self, **changes):
        """
        A copy with some parameters changed.
        """
        values = dict((k, getattr(self, k)) for k in self._keys)
        if (
            "rest_days" in changes
            and "repechage_rest_days" not in changes
            and self._repechage_rest_days == self._rest_days
        ):
            values["repechage_rest_days"] = None
        values.update(changes)
        return ScheduleParams(**values)

    def capacity(self, day):
        """
        Number of fixtures allowed on ``day``.
        """
        if self._per_day_capacities is not None and day < len(self._per_day_capacities):
            return self._per_day_capacities[day]
        if self._max_per_day is None:
            raise ScheduleError(
                "day {0} is past the per-day capacity sequence and max_per_day "
                "is None".format(day)
            )
        return self._max_per_day

    def gap(self, fixture):
        """
        Minimum days between ``fixture`` and the fixtures it depends on.
        """
        if fixture.is_repechage:
            return self._repechage_rest_days
        else:
            return self._rest_days

    def to_dict(self):
        return {
            "max_per_day": self._max_per_day,
            "rest_days": self._rest_days,
            "repechage_rest_days": self._repechage_rest_days,
            "per_day_capacities": None
            if self._per_day_capacities is None
            else list(self._per_day_capacities),
            "start_date": None
            if self._start_date is None
            else self._start_date.isoformat(),
        }


def _parse_value(key, value, path):
    if key == "start_date":
        return value
    if key == "per_day_capacities":
        value = value.strip("[]")
        try:
            return [int(x) for x in value.split(",") if x.strip() != ""]
        except ValueError:
            raise ScheduleError(
                "{0}: per_day_capacities must be integers, not {1}".format(
                    path, repr(value)
                )
            )
    if value.lower() in ("none", "null", ""):
        return None
    try:
        return int(value)
    except ValueError:
        raise ScheduleError("{0}: {1} must be an integer, not {2}".format(path, key, repr(value)))


class ScheduleAssignment(object):
    """
    Args:
        plan (:doc:`cup48.formats.FormatPlan`): The scheduled plan.
        params (:doc:`cup48.scheduler.ScheduleParams`): The constraints.
        days (dict of str to int): Day index of each fixture; day 0 is the
            first matchday.

    A calendar for a plan.
    """

    def __init__(self, plan, params, days):
        self._plan = plan
        self._params = params
        self._days = dict(days)

    def __repr__(self):
        return "<ScheduleAssignment of {0} over {1} days at 0x{2:012x}>".format(
            repr(self._plan.name), self.duration, id(self)
        )

    @property
    def plan(self):
        return self._plan

    @property
    def params(self):
        return self._params

    @property
    def days(self):
        return dict(self._days)

    def day_of(self, fixture_id):
        return self._days[fixture_id]

    @property
    def duration(self):
        """
        Days from the first matchday to the last, inclusive.
        """
        if len(self._days) == 0:
            return 0
        return max(self._days.values()) - min(self._days.values()) + 1

    def fixtures_on(self, day):
        """
        Ids of the fixtures on ``day``, in plan order.
        """
        return [f.id for f in self._plan.fixtures if self._days.get(f.id) == day]

    def load(self):
        """
        Dict from day to the number of fixtures on it.
        """
        out = {}
        for day in self._days.values():
            out[day] = out.get(day, 0) + 1
        return out

    def check(self):
        """
        Returns a list of violated constraints (empty if none): days over
        capacity and fixtures closer to a predecessor than the rest gap.
        """
        violations = []
        for day, count in sorted(self.load().items()):
            if count > self._params.capacity(day):
                violations.append(
                    "day {0} has {1} fixtures, capacity {2}".format(
                        day, count, self._params.capacity(day)
                    )
                )
        for fixture_id, day in self._days.items():
            fixture = self._plan[fixture_id]
            gap = self._params.gap(fixture)
            for previous in self._plan.predecessors(fixture_id):
                if previous not in self._days:
                    violations.append(
                        "{0} is scheduled but its predecessor {1} is not".format(
                            fixture_id, previous
                        )
                    )
                elif day - self._days[previous] < gap:
                    violations.append(
                        "{0} on day {1} is less than {2} days after {3} on day "
                        "{4}".format(fixture_id, day, gap, previous, self._days[previous])
                    )
        return violations

    def date_of(self, fixture_id, start_date=None):
        start = parse_date(start_date) or self._params.start_date
        if start is None:
            raise ScheduleError("no start date")
        return start + datetime.timedelta(days=self._days[fixture_id])

    def to_dict(self):
        return {
            "plan": self._plan.name,
            "params": self._params.to_dict(),
            "duration": self.duration,
            "days": dict(sorted(self._days.items())),
        }


def _earliest(plan, params, fixture, days):
    gap = params.gap(fixture)
    return max([days[p] + gap for p in plan.predecessors(fixture.id)] or [0])


def schedule(plan, params):
    """
    Args:
        plan (:doc:`cup48.formats.FormatPlan`): The fixtures to place.
        params (:doc:`cup48.scheduler.ScheduleParams`): The constraints.

    Places every fixture, in plan order, on the earliest day that satisfies
    the rest gap after all of its predecessors and has spare capacity.
    Returns a :doc:`cup48.scheduler.ScheduleAssignment`.
    """
    days = {}
    load = {}
    for fixture_id in plan.topological_order():
        fixture = plan[fixture_id]
        day = _earliest(plan, params, fixture, days)
        while load.get(day, 0) >= params.capacity(day):
            day += 1
        days[fixture_id] = day
        load[day] = load.get(day, 0) + 1

    assignment = ScheduleAssignment(plan, params, days)
    logger.debug(
        "scheduled %s at max_per_day=%s, rest %d/%d: %d days",
        plan.name,
        params.max_per_day,
        params.rest_days,
        params.repechage_rest_days,
        assignment.duration,
    )
    return assignment


def critical_path(plan, params):
    """
    Duration of the plan if capacity never binds: the longest chain of rest
    gaps through the dependency graph, plus one. A lower bound for
    :doc:`cup48.scheduler.schedule` with the same rest settings.
    """
    days = {}
    for fixture_id in plan.topological_order():
        days[fixture_id] = _earliest(plan, params, plan[fixture_id], days)
    if len(days) == 0:
        return 0
    return max(days.values()) + 1


class DurationCurve(object):
    """
    Durations of one plan over a range of daily capacities.

    Args:
        plan_name (str): Name of the plan.
        rows (list of (int, int)): ``(max_per_day, duration)`` in sweep
            order.
    """

    def __init__(self, plan_name, rows):
        self._plan_name = plan_name
        self._rows = [(int(c), int(d)) for c, d in rows]

    def __repr__(self):
        return "<DurationCurve of {0} ({1} points) at 0x{2:012x}>".format(
            repr(self._plan_name), len(self._rows), id(self)
        )

    def __iter__(self):
        return iter(self._rows)

    def __len__(self):
        return len(self._rows)

    @property
    def plan_name(self):
        return self._plan_name

    @property
    def rows(self):
        return list(self._rows)

    @property
    def non_monotone(self):
        """
        Capacities whose duration is longer than that of the next smaller
        capacity in the sweep. Greedy placement does not guarantee that more
        capacity never lengthens a schedule; such steps are reported here.
        """
        out = []
        ordered = sorted(self._rows)
        for (c0, d0), (c1, d1) in zip(ordered[:-1], ordered[1:]):
            if d1 > d0:
                out.append(c1)
        return out

    def duration(self, max_per_day):
        for c, d in self._rows:
            if c == max_per_day:
                return d
        raise KeyError(max_per_day)

    def write_csv(self, where):
        """
        CSV ``max_per_day,duration,non_monotone``.
        """
        flagged = set(self.non_monotone)
        file, should_close = cup48._util.open_for_writing(where)
        try:
            writer = csv.writer(file, lineterminator="\n")
            writer.writerow(["max_per_day", "duration", "non_monotone"])
            for c, d in self._rows:
                writer.writerow([c, d, int(c in flagged)])
        finally:
            if should_close:
                file.close()


def duration_curve(
    plan,
    capacities,
    rest_days=cup48.const.default_rest_days,
    repechage_rest_days=None,
):
    """
    Args:
        plan (:doc:`cup48.formats.FormatPlan`): The fixtures to place.
        capacities (iterable of int): ``max_per_day`` values to sweep; at
            least one.
        rest_days (int): As in :doc:`cup48.scheduler.ScheduleParams`.
        repechage_rest_days (None or int): As in
            :doc:`cup48.scheduler.ScheduleParams`.

    Schedules the plan once per capacity and returns a
    :doc:`cup48.scheduler.DurationCurve`.
    """
    capacities = list(capacities)
    if len(capacities) == 0:
        raise ScheduleError("duration_curve needs at least one capacity")
    rows = []
    for capacity in capacities:
        params = ScheduleParams(capacity, rest_days, repechage_rest_days)
        rows.append((capacity, schedule(plan, params).duration))
    curve = DurationCurve(plan.name, rows)
    if curve.non_monotone:
        logger.warning(
            "duration of %s increases with capacity at %s", plan.name, curve.non_monotone
        )
    return curve


def export_calendar(assignment, start_date=None, where=None):
    """
    Args:
        assignment (:doc:`cup48.scheduler.ScheduleAssignment`): The calendar.
        start_date (None, str, or ``datetime.date``): Date of day 0; the
            assignment's ``params.start_date`` if None.
        where (None, str, or file): Path or file object for the CSV; if
            None, return the rows instead.

    Writes CSV ``date,fixture_id,round_tag,bracket``, ordered by day and
    then plan order.
    """
    start = parse_date(start_date)
    if start is None:
        start = assignment.params.start_date
    if start is None:
        raise ScheduleError("export_calendar needs a start date")

    days = assignment.days
    rows = []
    for fixture in assignment.plan.fixtures:
        if fixture.id in days:
            rows.append(
                (
                    days[fixture.id],
                    (start + datetime.timedelta(days=days[fixture.id])).isoformat(),
                    fixture.id,
                    fixture.round_tag,
                    fixture.bracket,
                )
            )
    rows.sort(key=lambda row: row[0])
    rows = [row[1:] for row in rows]

    if where is None:
        return rows
    file, should_close = cup48._util.open_for_writing(where)
    try:
        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(["date", "fixture_id", "round_tag", "bracket"])
        writer.writerows(rows)
    finally:
        if should_close:
            file.close()


def check_team_rest(assignment, result):
    """
    Args:
        assignment (:doc:`cup48.scheduler.ScheduleAssignment`): A calendar.
        result (:doc:`cup48.tournament.TournamentResult`): A tournament
            played with the same plan.

    Overlays the match log on the calendar and returns a list of teams'
    consecutive matches that are closer than the rest gap of the later
    fixture (empty if none).
    """
    plan = assignment.plan
    violations = []
    last = {}
    for match in sorted(result.match_log, key=lambda m: assignment.day_of(m.fixture_id)):
        day = assignment.day_of(match.fixture_id)
        gap = assignment.params.gap(plan[match.fixture_id])
        for team_id in (match.home, match.away):
            if team_id in last:
                previous_id, previous_day = last[team_id]
                if day - previous_day < gap:
                    violations.append(
                        "{0} plays {1} on day {2} after {3} on day {4}".format(
                            team_id, match.fixture_id, day, previous_id, previous_day
                        )
                    )
            last[team_id] = (match.fixture_id, day)
    return violations
