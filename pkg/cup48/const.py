# BSD 3-Clause License; see LICENSE

"""
Numeric constants of the result model, the metrics, the three formats and
the scheduler defaults.
"""

from __future__ import absolute_import

num_teams = 48

############# result model

goal_rate_base = 1.5
goal_rate_spread = 0.7
rank_cap = 50

draw_allowed = "draw-allowed"
must_decide = "must-decide"
modes = (draw_allowed, must_decide)

home = "home"
away = "away"

# truncation of analytic Poisson sums
max_goals = 30

############# formats

double_elim = "double-elim-48"
group_of_3 = "group-of-3"
group_of_4 = "group-of-4"
format_names = (double_elim, group_of_3, group_of_4)

fixture_counts = {
    double_elim: 96,
    group_of_3: 80,
    group_of_4: 104,
}

main = "main"
repechage = "repechage"
group = "group"
knockout = "knockout"
final_stage = "final-stage"
brackets = (main, repechage, group, knockout, final_stage)

points_win = 3
points_draw = 1
points_loss = 0

returnee_candidates = 18
num_returnees = 2

# elimination marker for teams that do not leave a group stage
group_stage = "group-stage"

############# metrics

default_gamma = 2.0
interest_threshold = 8

high = "high"
special = "special"
regular = "regular"
interest_classes = (high, special, regular)

rank_index_bins = 20
rank_index_bin_width = 5.0
rank_distance_bins = 48

low_rank_distance = 10

############# scheduler

default_max_per_day = 4
default_rest_days = 4
