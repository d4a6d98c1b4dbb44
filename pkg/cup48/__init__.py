# BSD 3-Clause License; see LICENSE

"""
cup48: simulate, compare and schedule 48-team World Cup formats in Python and
NumPy.

Nearly all of the functions needed for general use are imported here, but the
documentation gives fully qualified names. For example, the most frequently
used function in cup48 is

.. code-block:: python

    cup48.run_tournament(cup48.build_plan("double-elim-48"), roster, rng)

but we refer to it in the documentation as
:doc:`cup48.tournament.run_tournament`.

Typical entry points are

* :doc:`cup48.formats.build_plan`
* :doc:`cup48.tournament.run_tournament`
* :doc:`cup48.montecarlo.run_batch`
* :doc:`cup48.montecarlo.compare_formats`
* :doc:`cup48.scheduler.schedule`

and the ``cup48`` command (:doc:`cup48.cli.main`).

The three formats are

* ``"double-elim-48"``: double elimination with a repechage bracket, 96
  matches (:doc:`cup48.formats.double_elim`).
* ``"group-of-3"``: 16 groups of 3 and a knockout of 32, 80 matches
  (:doc:`cup48.formats.groups`).
* ``"group-of-4"``: 12 groups of 4 and a knockout of 32 with the 8 best
  third-placed teams, 104 matches (:doc:`cup48.formats.groups`).

The submodules of cup48 are:

* :doc:`cup48.version`: for access to the version number.
* :doc:`cup48.extras`: import functions for the libraries that cup48 can use,
  but does not require as dependencies. If a library can't be imported,
  these functions provide instructions for installing them.
* :doc:`cup48.rng`: seeded, splittable random streams.
* :doc:`cup48.model`: teams, rosters, match scores and the Poisson match
  model.
* :doc:`cup48.formats`: fixture graphs of the formats and their validation.
* :doc:`cup48.tournament`: the engine that plays a plan and classifies all
  teams.
* :doc:`cup48.metrics`: fairness index, rank index, rank distance and
  interest classes.
* :doc:`cup48.montecarlo`: batches of tournaments and format comparisons.
* :doc:`cup48.scheduler`: rest-constrained calendars and durations.
* :doc:`cup48.futures`: synchronous and thread-pool executors for batches.
* :doc:`cup48.cli`: the command-line interface.
* :doc:`cup48.const`: numeric constants and names.
* :doc:`cup48._util`: non-public utilities used by any of the above.
"""

from __future__ import absolute_import

from cup48.version import __version__

import cup48.futures

batch_executor = cup48.futures.TrivialExecutor()

from cup48.rng import RngStream

from cup48.model import InvalidRankError
from cup48.model import RosterError
from cup48.model import Team
from cup48.model import Roster
from cup48.model import MatchScore
from cup48.model import play_match
from cup48.model import outcome_probabilities
from cup48.model import model_outcome_curve

from cup48.formats import PlanError
from cup48.formats import Fixture
from cup48.formats import FormatPlan
from cup48.formats import build_plan
from cup48.formats.double_elim import build_double_elim_plan
from cup48.formats.groups import build_group3_plan
from cup48.formats.groups import build_group4_plan

from cup48.tournament import TournamentError
from cup48.tournament import TeamRecord
from cup48.tournament import TournamentResult
from cup48.tournament import draw_assignment
from cup48.tournament import run_tournament

from cup48.metrics import SkillOrder
from cup48.metrics import fairness_index
from cup48.metrics import rank_index
from cup48.metrics import rank_distance
from cup48.metrics import interest_class

from cup48.montecarlo import BatchConfig
from cup48.montecarlo import BatchSummary
from cup48.montecarlo import run_batch
from cup48.montecarlo import compare_formats

from cup48.scheduler import ScheduleError
from cup48.scheduler import ScheduleParams
from cup48.scheduler import ScheduleAssignment
from cup48.scheduler import schedule
from cup48.scheduler import critical_path
from cup48.scheduler import duration_curve
from cup48.scheduler import export_calendar
