# BSD 3-Clause License; see LICENSE

"""
Command-line entry point, installed as ``cup48`` (also ``python -m cup48``).

Commands:

* ``plan``: export the fixture graph of a format as JSON.
* ``simulate``: play one tournament and write its match log.
* ``batch``: run a Monte Carlo batch and write its summary and figure data.
* ``compare``: run a batch per format with the same settings and compare.
* ``schedule``: compute a calendar and its duration.
* ``curve``: durations over a range of daily capacities.
* ``model-curve``: win, draw and loss probabilities by rank difference.

Outputs are new files under ``--out``; existing files are never overwritten,
and ``--dry-run`` lists the files without running anything. Exit status is 0
on success, 2 for usage errors and 3 for I/O errors.
"""

from __future__ import absolute_import

import argparse
import datetime
import json
import logging
import os
import sys

import cup48._util
import cup48.const
import cup48.formats
import cup48.futures
import cup48.metrics
import cup48.model
import cup48.montecarlo
import cup48.rng
import cup48.scheduler
import cup48.tournament
import cup48.version

logger = logging.getLogger(__name__)

exit_ok = 0
exit_usage = 2
exit_io = 3


class UsageError(ValueError):
    """
    Exception raised for flag combinations that argparse cannot check.
    """

    pass


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(
            "expected comma-separated integers, not {0}".format(repr(text))
        )


def _capacity_range(text):
    if ":" in text:
        try:
            low, high = [int(x) for x in text.split(":")]
        except ValueError:
            raise argparse.ArgumentTypeError(
                "expected LOW:HIGH, not {0}".format(repr(text))
            )
        return list(range(low, high + 1))
    return _int_list(text)


def _format_flag(parser, required=True):
    parser.add_argument(
        "--format",
        required=required,
        choices=cup48.const.format_names,
        help="tournament format",
    )


def _out_flag(parser, required=False):
    parser.add_argument(
        "--out",
        required=required,
        metavar="DIR",
        help="directory for output files",
    )


def _dry_run_flag(parser):
    parser.add_argument(
        "--dry-run",
        action="store_true",
        help="list the files that would be written and stop",
    )


def _roster_flag(parser):
    parser.add_argument(
        "--roster",
        metavar="PATH",
        help="CSV or JSON roster (default: ranks 1 to 48)",
    )


def _rest_flags(parser):
    parser.add_argument(
        "--rest", type=int, help="days between a team's matches (default 4)"
    )
    parser.add_argument(
        "--repechage-rest",
        type=int,
        help="days between matches for repechage fixtures (default: --rest)",
    )


def make_parser():
    """
    The ``argparse.ArgumentParser`` for all commands.
    """
    parser = argparse.ArgumentParser(
        prog="cup48",
        description="Simulate, compare and schedule 48-team World Cup formats.",
    )
    parser.add_argument(
        "--version", action="version", version="cup48 " + cup48.version.__version__
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="INFO logging with -v, DEBUG with -vv",
    )
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    plan = commands.add_parser("plan", help="export a format's fixture graph as JSON")
    _format_flag(plan)
    _out_flag(plan)
    _dry_run_flag(plan)

    simulate = commands.add_parser("simulate", help="play one tournament")
    _format_flag(simulate)
    simulate.add_argument("--seed", type=int, required=True)
    _roster_flag(simulate)
    _out_flag(simulate)
    _dry_run_flag(simulate)

    for name, text in (
        ("batch", "run a Monte Carlo batch of one format"),
        ("compare", "run batches of several formats and compare them"),
    ):
        command = commands.add_parser(name, help=text)
        if name == "batch":
            _format_flag(command)
        else:
            command.add_argument(
                "--format",
                action="append",
                choices=cup48.const.format_names,
                help="format to compare (repeatable; default: all three)",
            )
        command.add_argument("--runs", type=int, default=1000)
        command.add_argument("--seed", type=int, required=True)
        command.add_argument(
            "--gamma",
            type=float,
            nargs="+",
            default=[cup48.const.default_gamma],
            help="fairness exponent; further values are evaluated as well",
        )
        command.add_argument(
            "--interest-threshold", type=int, default=cup48.const.interest_threshold
        )
        _roster_flag(command)
        command.add_argument(
            "--workers", type=int, default=1, help="threads for the runs"
        )
        _out_flag(command, required=True)
        _dry_run_flag(command)

    schedule = commands.add_parser("schedule", help="compute a calendar")
    _format_flag(schedule)
    schedule.add_argument("--config", metavar="PATH", help="schedule parameter file")
    schedule.add_argument("--max-per-day", type=int)
    schedule.add_argument(
        "--per-day-capacities",
        type=_int_list,
        metavar="LIST",
        help="capacities of the first days, such as 6,6,6",
    )
    _rest_flags(schedule)
    schedule.add_argument("--start-date", metavar="YYYY-MM-DD")
    _out_flag(schedule)
    _dry_run_flag(schedule)

    curve = commands.add_parser("curve", help="durations over daily capacities")
    _format_flag(curve)
    curve.add_argument(
        "--capacities",
        type=_capacity_range,
        default=list(range(2, 13)),
        metavar="LIST",
        help="LOW:HIGH or a comma-separated list (default 2:12)",
    )
    _rest_flags(curve)
    _out_flag(curve)
    _dry_run_flag(curve)

    model = commands.add_parser(
        "model-curve", help="win, draw and loss probabilities by rank difference"
    )
    model.add_argument("--method", choices=("analytic", "simulate"), default="analytic")
    model.add_argument("--seed", type=int, help="required with --method simulate")
    model.add_argument("--matches", type=int, default=10000)
    model.add_argument(
        "--max-diff", type=int, default=cup48.const.num_teams - 1
    )
    _out_flag(model)
    _dry_run_flag(model)

    return parser


def _configure_logging(verbosity):
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def _load_roster(args):
    if args.roster is None:
        return cup48.model.Roster.default()
    return cup48.model.Roster.from_file(args.roster)


def _schedule_params(args):
    overrides = {
        "max_per_day": args.max_per_day,
        "per_day_capacities": args.per_day_capacities,
        "rest_days": args.rest,
        "repechage_rest_days": args.repechage_rest,
        "start_date": args.start_date,
    }
    if args.config is not None:
        return cup48.scheduler.ScheduleParams.from_file(args.config, **overrides)
    return cup48.scheduler.ScheduleParams(
        **dict((k, v) for k, v in overrides.items() if v is not None)
    )


def _batch_files(out, format_name):
    directory = os.path.join(out, format_name)
    return [
        os.path.join(directory, "summary.json"),
        os.path.join(directory, "fairness.csv"),
        os.path.join(directory, "matches.csv"),
    ] + cup48.montecarlo.figure_files(directory)


def output_files(args):
    """
    The files a command would write, given its parsed arguments.
    """
    out = args.out
    if out is None:
        return []
    if args.command == "plan":
        return [os.path.join(out, "{0}.plan.json".format(args.format))]
    if args.command == "simulate":
        stem = "{0}-seed{1}".format(args.format, args.seed)
        return [
            os.path.join(out, stem + ".match_log.csv"),
            os.path.join(out, stem + ".result.json"),
        ]
    if args.command == "batch":
        return _batch_files(out, args.format)
    if args.command == "compare":
        files = []
        for name in _compared_formats(args):
            files.extend(_batch_files(out, name))
        return files + [os.path.join(out, "comparison.json")]
    if args.command == "schedule":
        files = [os.path.join(out, "{0}.schedule.json".format(args.format))]
        if args.start_date is not None or args.config is not None:
            files.append(os.path.join(out, "{0}.calendar.csv".format(args.format)))
        return files
    if args.command == "curve":
        return [os.path.join(out, "{0}.duration_curve.csv".format(args.format))]
    if args.command == "model-curve":
        return [os.path.join(out, "model_curve_{0}.csv".format(args.method))]
    raise AssertionError(args.command)


def _compared_formats(args):
    return list(args.format or cup48.const.format_names)


def _check_new(files):
    for path in files:
        if os.path.exists(path):
            raise IOError("refusing to overwrite {0}".format(path))


def _executor(args):
    if args.workers < 1:
        raise UsageError("--workers must be at least 1, not {0}".format(args.workers))
    if args.workers == 1:
        return cup48.futures.TrivialExecutor()
    return cup48.futures.ThreadPoolExecutor(args.workers)


def _batch_config(args, format_name):
    return cup48.montecarlo.BatchConfig(
        format_name,
        args.runs,
        args.seed,
        gamma=args.gamma[0],
        interest_threshold=args.interest_threshold,
        gammas=args.gamma[1:],
    )


def _write_batch(summary, files):
    summary_json, fairness_csv, matches_csv = files[:3]
    cup48._util.ensure_dir(os.path.dirname(summary_json))
    summary.to_json(summary_json)
    cup48.metrics.write_fairness(summary.fairness_rows(), fairness_csv)
    cup48.metrics.write_match_metrics(summary.match_rows(), matches_csv)
    summary.write_figures(os.path.dirname(summary_json))


def _print_summary(summary, stdout):
    stdout.write(
        "{0}: {1} runs, {2:g} matches per run, median fairness {3:.6f}\n".format(
            summary.format_name,
            summary.n_runs,
            float(summary.match_counts.mean()),
            summary.quantile(0.5),
        )
    )
    for name in cup48.const.interest_classes:
        stdout.write("  mean {0} matches: {1:.4f}\n".format(name, summary.mean_interest(name)))


def run_plan(args, files, stdout):
    plan = cup48.formats.build_plan(args.format)
    if len(files) == 0:
        stdout.write(plan.to_json())
        stdout.write("\n")
    else:
        cup48._util.ensure_dir(args.out)
        plan.to_json(files[0])
    logger.info("plan %s: %d fixtures", plan.name, len(plan))


def run_simulate(args, files, stdout):
    roster = _load_roster(args)
    plan = cup48.formats.build_plan(args.format)
    result = cup48.tournament.run_tournament(
        plan, roster, cup48.rng.RngStream(args.seed)
    )
    if len(files) == 0:
        result.write_match_log(stdout)
    else:
        cup48._util.ensure_dir(args.out)
        result.write_match_log(files[0])
        with open(files[1], "w") as file:
            json.dump(result.to_dict(), file, indent=2, sort_keys=True)
            file.write("\n")
    stdout.write(
        "champion {0}, runner-up {1}, third {2}, fourth {3}\n".format(
            *result.classification[:4]
        )
    )


def run_batch(args, files, stdout):
    roster = _load_roster(args)
    config = _batch_config(args, args.format)
    executor = _executor(args)
    try:
        summary = cup48.montecarlo.run_batch(config, roster, executor)
    finally:
        executor.shutdown()
    if len(files) != 0:
        _write_batch(summary, files)
    _print_summary(summary, stdout)


def run_compare(args, files, stdout):
    names = _compared_formats(args)
    if len(set(names)) < 2:
        raise UsageError("compare needs at least two different formats")
    roster = _load_roster(args)
    executor = _executor(args)
    summaries = []
    try:
        for name in names:
            summaries.append(
                cup48.montecarlo.run_batch(_batch_config(args, name), roster, executor)
            )
    finally:
        executor.shutdown()

    report = cup48.montecarlo.compare_formats(summaries)
    if len(files) != 0:
        per_format = len(_batch_files(args.out, names[0]))
        for i, summary in enumerate(summaries):
            _write_batch(summary, files[i * per_format : (i + 1) * per_format])
        report.to_json(files[-1])

    for summary in summaries:
        _print_summary(summary, stdout)
    for other in report.others:
        stdout.write(
            "{0} vs {1}: fairness dominates {2}, high-interest ratio {3:.3f}\n".format(
                report.reference,
                other,
                report.dominates(other),
                report.interest_ratio(other, cup48.const.high),
            )
        )


def run_schedule(args, files, stdout):
    plan = cup48.formats.build_plan(args.format)
    params = _schedule_params(args)
    if len(files) > 1 and params.start_date is None:
        raise UsageError("a calendar needs --start-date")
    assignment = cup48.scheduler.schedule(plan, params)
    if len(files) != 0:
        cup48._util.ensure_dir(args.out)
        with open(files[0], "w") as file:
            json.dump(assignment.to_dict(), file, indent=2, sort_keys=True)
            file.write("\n")
        if len(files) > 1:
            cup48.scheduler.export_calendar(assignment, None, files[1])

    stdout.write("duration {0} days\n".format(assignment.duration))
    if params.start_date is not None:
        end = params.start_date + datetime.timedelta(days=assignment.duration - 1)
        stdout.write(
            "from {0} to {1}\n".format(params.start_date.isoformat(), end.isoformat())
        )


def run_curve(args, files, stdout):
    plan = cup48.formats.build_plan(args.format)
    rest = cup48.const.default_rest_days if args.rest is None else args.rest
    curve = cup48.scheduler.duration_curve(
        plan, args.capacities, rest, args.repechage_rest
    )
    if len(files) == 0:
        curve.write_csv(stdout)
    else:
        cup48._util.ensure_dir(args.out)
        curve.write_csv(files[0])
        for capacity, duration in curve:
            stdout.write("{0}\t{1}\n".format(capacity, duration))


def run_model_curve(args, files, stdout):
    rng = None
    if args.method == "simulate":
        if args.seed is None:
            raise UsageError("--method simulate requires --seed")
        rng = cup48.rng.RngStream(args.seed)
    rows = cup48.model.model_outcome_curve(
        range(-args.max_diff, args.max_diff + 1),
        method=args.method,
        rng=rng,
        n_matches=args.matches,
    )
    if len(files) == 0:
        cup48.model.write_outcome_curve(rows, stdout)
    else:
        cup48._util.ensure_dir(args.out)
        cup48.model.write_outcome_curve(rows, files[0])


_commands = {
    "plan": run_plan,
    "simulate": run_simulate,
    "batch": run_batch,
    "compare": run_compare,
    "schedule": run_schedule,
    "curve": run_curve,
    "model-curve": run_model_curve,
}


def main(argv=None, stdout=None, stderr=None):
    """
    Args:
        argv (None or list of str): Arguments without the program name;
            ``sys.argv[1:]`` if None.
        stdout (None or file): Where results are printed.
        stderr (None or file): Where diagnostics are printed.

    Runs one command and returns its exit status.
    """
    if stdout is None:
        stdout = sys.stdout
    if stderr is None:
        stderr = sys.stderr

    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return err.code

    _configure_logging(args.verbose)

    try:
        files = output_files(args)
        if args.dry_run:
            for path in files:
                stdout.write("would write {0}\n".format(path))
            return exit_ok
        _check_new(files)
        _commands[args.command](args, files, stdout)

    except (OSError, IOError) as err:
        stderr.write("cup48 {0}: {1}\n".format(args.command, err))
        return exit_io
    except (ValueError, TypeError) as err:
        stderr.write("cup48 {0}: {1}\n".format(args.command, err))
        return exit_usage

    return exit_ok
