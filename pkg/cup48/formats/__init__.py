# BSD 3-Clause License; see LICENSE

"""
Defines the vocabulary of tournament plans: fixture sources, fixtures,
classification tiers and :doc:`cup48.formats.FormatPlan`.

A plan is a static directed acyclic graph of fixtures. Every fixture takes
its two teams from :doc:`cup48.formats.FixtureSource` objects, which name the
fixtures they depend on. The plan itself carries no results; the engine in
:doc:`cup48.tournament` resolves the sources while it plays the fixtures.

The concrete formats are built by

* :doc:`cup48.formats.double_elim.build_double_elim_plan`
* :doc:`cup48.formats.groups.build_group3_plan`
* :doc:`cup48.formats.groups.build_group4_plan`

and :doc:`cup48.formats.build_plan` selects one of them by name.
"""

from __future__ import absolute_import

import json

import cup48._util
import cup48.const


class PlanError(ValueError):
    """
    Exception raised for inconsistent plans (unknown references, cycles,
    unused draw slots, wrong fixture counts), unknown format names, and
    rosters that do not fit a plan's draw.
    """

    pass


double_elimination = "double-elimination"
group_knockout = "group-knockout"
classification_rules = (double_elimination, group_knockout)


class FixtureSource(object):
    """
    Abstract class for the origin of one side of a fixture.
    """

    kind = None

    def depends_on(self, plan):
        """
        Args:
            plan (:doc:`cup48.formats.FormatPlan`): The plan that contains the
                fixture with this source.

        Ids of the fixtures that must be resolved before this source can be.
        """
        raise AssertionError

    def to_dict(self):
        raise AssertionError

    def _key(self):
        raise AssertionError

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((type(self), self._key()))


class DrawSlot(FixtureSource):
    """
    Args:
        index (int): Position filled by the initial draw.
    """

    kind = "draw-slot"

    def __init__(self, index):
        if not cup48._util.isint(index) or index < 0:
            raise ValueError(
                "draw slot index must be a non-negative integer, not {0}".format(
                    repr(index)
                )
            )
        self._index = int(index)

    def __repr__(self):
        return "DrawSlot({0})".format(self._index)

    @property
    def index(self):
        return self._index

    def depends_on(self, plan):
        return ()

    def to_dict(self):
        return {"kind": self.kind, "index": self._index}

    def _key(self):
        return self._index


class WinnerOf(FixtureSource):
    """
    Args:
        fixture_id (str): The fixture whose winner takes this side.
    """

    kind = "winner-of"

    def __init__(self, fixture_id):
        self._fixture_id = fixture_id

    def __repr__(self):
        return "WinnerOf({0})".format(repr(self._fixture_id))

    @property
    def fixture_id(self):
        return self._fixture_id

    def depends_on(self, plan):
        return (self._fixture_id,)

    def to_dict(self):
        return {"kind": self.kind, "fixture": self._fixture_id}

    def _key(self):
        return self._fixture_id


class LoserOf(WinnerOf):
    """
    Args:
        fixture_id (str): The fixture whose loser takes this side.
    """

    kind = "loser-of"

    def __repr__(self):
        return "LoserOf({0})".format(repr(self._fixture_id))


class GroupRank(FixtureSource):
    """
    Args:
        group (str): Group label.
        place (int): Final place in the group, starting at 1.

    Available once every fixture of the group has been played.
    """

    kind = "group-rank"

    def __init__(self, group, place):
        if not cup48._util.isint(place) or place < 1:
            raise ValueError(
                "group place must be an integer >= 1, not {0}".format(repr(place))
            )
        self._group = group
        self._place = int(place)

    def __repr__(self):
        return "GroupRank({0}, {1})".format(repr(self._group), self._place)

    @property
    def group(self):
        return self._group

    @property
    def place(self):
        return self._place

    def depends_on(self, plan):
        return plan.group_fixtures(self._group)

    def to_dict(self):
        return {"kind": self.kind, "group": self._group, "place": self._place}

    def _key(self):
        return (self._group, self._place)


class _Ordinal(FixtureSource):
    def __init__(self, ordinal):
        if not cup48._util.isint(ordinal) or ordinal < 1:
            raise ValueError(
                "{0} ordinal must be an integer >= 1, not {1}".format(
                    type(self).__name__, repr(ordinal)
                )
            )
        self._ordinal = int(ordinal)

    def __repr__(self):
        return "{0}({1})".format(type(self).__name__, self._ordinal)

    @property
    def ordinal(self):
        return self._ordinal

    def to_dict(self):
        return {"kind": self.kind, "ordinal": self._ordinal}

    def _key(self):
        return self._ordinal


class BestThird(_Ordinal):
    """
    Args:
        ordinal (int): Third-place slot, starting at 1.

    One of the slots shared by the best third-placed teams of a group stage.
    The qualified thirds are spread over these slots by
    :doc:`cup48.tournament.allocate_best_thirds`.
    """

    kind = "best-third"

    def depends_on(self, plan):
        return plan.group_fixtures()


class Returnee(_Ordinal):
    """
    Args:
        ordinal (int): 1 for the best one-loss team, 2 for the second best.

    A one-loss team promoted back into the main bracket.
    """

    kind = "returnee"

    def depends_on(self, plan):
        return plan.pool_fixtures()


class Remaining(_Ordinal):
    """
    Args:
        ordinal (int): Position in the repechage pool, starting at 1.

    A one-loss team that was not promoted by the returnee step. The engine
    orders the pool so that consecutive ordinals have not met before, where
    possible.
    """

    kind = "remaining"

    def depends_on(self, plan):
        return plan.pool_fixtures()


_source_kinds = {
    cls.kind: cls
    for cls in (DrawSlot, WinnerOf, LoserOf, GroupRank, BestThird, Returnee, Remaining)
}


def source_from_dict(data):
    """
    Inverse of ``FixtureSource.to_dict``.
    """
    kind = data.get("kind")
    if kind == DrawSlot.kind:
        return DrawSlot(data["index"])
    elif kind in (WinnerOf.kind, LoserOf.kind):
        return _source_kinds[kind](data["fixture"])
    elif kind == GroupRank.kind:
        return GroupRank(data["group"], data["place"])
    elif kind in _source_kinds:
        return _source_kinds[kind](data["ordinal"])
    else:
        raise PlanError("unknown fixture source kind: {0}".format(repr(kind)))


class Fixture(object):
    """
    Args:
        id (str): Stable label, such as ``"M01"``.
        round_tag (str): Named stage, such as ``"R2"`` or ``"SF"``.
        bracket (str): One of ``"main"``, ``"repechage"``, ``"group"``,
            ``"knockout"``, ``"final-stage"``.
        home_source (:doc:`cup48.formats.FixtureSource`): Origin of the home
            side.
        away_source (:doc:`cup48.formats.FixtureSource`): Origin of the away
            side.
        mode (None or str): ``"draw-allowed"`` or ``"must-decide"``; if None,
            group fixtures allow draws and all others must be decided.
        group (None or str): Group label, required for group fixtures.

    One node of a plan.
    """

    __slots__ = ("_id", "_round_tag", "_bracket", "_home", "_away", "_mode", "_group")

    def __init__(
        self, id, round_tag, bracket, home_source, away_source, mode=None, group=None
    ):
        if bracket not in cup48.const.brackets:
            raise ValueError(
                "bracket must be one of {0}, not {1}".format(
                    cup48.const.brackets, repr(bracket)
                )
            )
        for source in (home_source, away_source):
            if not isinstance(source, FixtureSource):
                raise TypeError(
                    "fixture sources must be FixtureSource, not {0}".format(
                        type(source)
                    )
                )
        if mode is None:
            if bracket == cup48.const.group:
                mode = cup48.const.draw_allowed
            else:
                mode = cup48.const.must_decide
        if mode not in cup48.const.modes:
            raise ValueError(
                "mode must be one of {0}, not {1}".format(cup48.const.modes, repr(mode))
            )
        self._id = id
        self._round_tag = round_tag
        self._bracket = bracket
        self._home = home_source
        self._away = away_source
        self._mode = mode
        self._group = group

    def __repr__(self):
        return "<Fixture {0} ({1} {2}) {3} vs {4}>".format(
            self._id, self._bracket, self._round_tag, repr(self._home), repr(self._away)
        )

    @property
    def id(self):
        return self._id

    @property
    def round_tag(self):
        return self._round_tag

    @property
    def bracket(self):
        return self._bracket

    @property
    def home_source(self):
        return self._home

    @property
    def away_source(self):
        return self._away

    @property
    def sources(self):
        return (self._home, self._away)

    @property
    def mode(self):
        return self._mode

    @property
    def group(self):
        return self._group

    @property
    def is_repechage(self):
        """
        True if the shorter repechage rest applies to this fixture.
        """
        return self._bracket == cup48.const.repechage

    def to_dict(self):
        out = {
            "id": self._id,
            "round_tag": self._round_tag,
            "bracket": self._bracket,
            "home": self._home.to_dict(),
            "away": self._away.to_dict(),
            "mode": self._mode,
        }
        if self._group is not None:
            out["group"] = self._group
        return out


class Tier(object):
    """
    Args:
        first_position (int): Best position of the band, starting at 1.
        size (int): Number of teams in the band.
        fixtures (None or iterable of str): Fixtures in which the teams of
            this band were eliminated; None for teams eliminated in a group
            stage.
        label (None or str): Description for exports.

    A band of final positions shared by teams that went out at the same
    stage. Within a band, teams are ordered by their full-tournament records.
    """

    def __init__(self, first_position, size, fixtures=None, label=None):
        self._first_position = int(first_position)
        self._size = int(size)
        self._fixtures = None if fixtures is None else tuple(fixtures)
        self._label = label

    def __repr__(self):
        return "<Tier {0}-{1} {2}>".format(self.first_position, self.last_position, self._label)

    @property
    def first_position(self):
        return self._first_position

    @property
    def last_position(self):
        return self._first_position + self._size - 1

    @property
    def size(self):
        return self._size

    @property
    def fixtures(self):
        return self._fixtures

    @property
    def label(self):
        return self._label

    def to_dict(self):
        return {
            "positions": [self.first_position, self.last_position],
            "fixtures": None if self._fixtures is None else list(self._fixtures),
            "label": self._label,
        }


class FormatPlan(object):
    """
    Args:
        name (str): Format name. The three standard names fix the fixture
            count (96 for ``"double-elim-48"``, 80 for ``"group-of-3"``, 104
            for ``"group-of-4"``); other names are accepted for custom plans.
        fixtures (iterable of :doc:`cup48.formats.Fixture`): In plan order.
        classification_rule (str): ``"double-elimination"`` (a team goes out
            after its second defeat) or ``"group-knockout"`` (a group stage
            followed by single elimination).
        final (str): Id of the fixture that decides positions 1 and 2.
        third_place (None or str): Id of the fixture that decides positions 3
            and 4.
        tiers (iterable of :doc:`cup48.formats.Tier`): Bands for every other
            position.
        groups (None or dict of str to tuple of int): Draw slots of each
            group, for formats with a group stage.
        pool_rounds (iterable of str): Round tags after which the returnee
            step is taken.
        best_thirds (int): Number of third-placed teams that qualify from the
            group stage.

    A complete tournament format. The constructor checks that

    * fixture ids are unique and every reference resolves;
    * the dependency graph is acyclic;
    * every draw slot ``0..n-1`` is used: once in a bracket, or by a full
      round robin inside its group;
    * group fixtures allow draws and all other fixtures must be decided;
    * the positions of the final, the third-place match and the tiers cover
      ``1..n`` exactly once;

    and raises :doc:`cup48.formats.PlanError` otherwise.
    """

    def __init__(
        self,
        name,
        fixtures,
        classification_rule,
        final,
        third_place=None,
        tiers=(),
        groups=None,
        pool_rounds=(),
        best_thirds=0,
    ):
        if classification_rule not in classification_rules:
            raise PlanError(
                "classification_rule must be one of {0}, not {1}".format(
                    classification_rules, repr(classification_rule)
                )
            )
        self._name = name
        self._fixtures = tuple(fixtures)
        self._classification_rule = classification_rule
        self._final = final
        self._third_place = third_place
        self._tiers = tuple(tiers)
        self._groups = {} if groups is None else dict(
            (label, tuple(slots)) for label, slots in groups.items()
        )
        self._pool_rounds = tuple(pool_rounds)
        self._best_thirds = int(best_thirds)

        self._position = {}
        self._by_id = {}
        for fixture in self._fixtures:
            if not isinstance(fixture, Fixture):
                raise TypeError("plan entries must be Fixture, not {0}".format(type(fixture)))
            if fixture.id in self._by_id:
                raise PlanError("duplicate fixture id: {0}".format(repr(fixture.id)))
            self._by_id[fixture.id] = fixture
            self._position[fixture.id] = len(self._position)

        self._group_fixtures = {}
        for fixture in self._fixtures:
            if fixture.group is not None:
                self._group_fixtures.setdefault(fixture.group, []).append(fixture.id)
        self._pool_fixtures = tuple(
            fixture.id for fixture in self._fixtures if fixture.round_tag in self._pool_rounds
        )

        self._check_counts()
        self._check_modes()
        self._predecessors = self._compute_predecessors()
        self._order = self._compute_order()
        self._num_slots = self._check_slots()
        self._check_sources()
        self._check_positions()

    def __repr__(self):
        return "<FormatPlan {0} ({1} fixtures) at 0x{2:012x}>".format(
            repr(self._name), len(self._fixtures), id(self)
        )

    def __len__(self):
        return len(self._fixtures)

    def __iter__(self):
        return iter(self._fixtures)

    def __getitem__(self, fixture_id):
        return self._by_id[fixture_id]

    def __contains__(self, fixture_id):
        return fixture_id in self._by_id

    @property
    def name(self):
        return self._name

    @property
    def fixtures(self):
        """
        Fixtures in plan order.
        """
        return self._fixtures

    @property
    def classification_rule(self):
        return self._classification_rule

    @property
    def final(self):
        return self._final

    @property
    def third_place(self):
        return self._third_place

    @property
    def tiers(self):
        return self._tiers

    @property
    def groups(self):
        """
        Dict from group label to the draw slots of that group.
        """
        return dict(self._groups)

    @property
    def pool_rounds(self):
        return self._pool_rounds

    @property
    def best_thirds(self):
        return self._best_thirds

    @property
    def num_slots(self):
        """
        Number of teams the draw places.
        """
        return self._num_slots

    @property
    def lives(self):
        """
        Defeats that eliminate a team outside group and final-stage fixtures.
        """
        if self._classification_rule == double_elimination:
            return 2
        else:
            return 1

    def group_fixtures(self, group=None):
        """
        Ids of the fixtures of ``group``, or of every group if None.
        """
        if group is None:
            return tuple(
                fixture.id for fixture in self._fixtures if fixture.group is not None
            )
        if group not in self._group_fixtures:
            raise PlanError("unknown group: {0}".format(repr(group)))
        return tuple(self._group_fixtures[group])

    def pool_fixtures(self):
        """
        Ids of the fixtures that decide the returnee pool.
        """
        return self._pool_fixtures

    def predecessors(self, fixture_id):
        """
        Ids of the fixtures that ``fixture_id`` directly depends on, in plan
        order. For a fixture fed by draw slots, these are the earlier fixtures
        of the same slots (a group's earlier rounds).
        """
        return self._predecessors[fixture_id]

    def topological_order(self):
        """
        Fixture ids in an order where every fixture follows its predecessors;
        ties keep plan order.
        """
        return list(self._order)

    def to_dict(self):
        out = {
            "name": self._name,
            "classification_rule": self._classification_rule,
            "num_fixtures": len(self._fixtures),
            "final": self._final,
            "third_place": self._third_place,
            "fixtures": [fixture.to_dict() for fixture in self._fixtures],
            "tiers": [tier.to_dict() for tier in self._tiers],
        }
        if len(self._groups) != 0:
            out["groups"] = dict((k, list(v)) for k, v in self._groups.items())
            out["best_thirds"] = self._best_thirds
        if len(self._pool_rounds) != 0:
            out["pool_rounds"] = list(self._pool_rounds)
        return out

    def to_json(self, where=None, indent=2):
        """
        Args:
            where (None, str, or file): If None, return the JSON text;
                otherwise write it to this path or file object.
            indent (int): JSON indentation.
        """
        text = json.dumps(self.to_dict(), indent=indent, sort_keys=False)
        if where is None:
            return text
        file, should_close = cup48._util.open_for_writing(where)
        try:
            file.write(text)
            file.write("\n")
        finally:
            if should_close:
                file.close()

    def _check_counts(self):
        expected = cup48.const.fixture_counts.get(self._name)
        if expected is not None and len(self._fixtures) != expected:
            raise PlanError(
                "format {0} must have {1} fixtures, not {2}".format(
                    repr(self._name), expected, len(self._fixtures)
                )
            )

    def _check_modes(self):
        for fixture in self._fixtures:
            if fixture.bracket == cup48.const.group:
                if fixture.mode != cup48.const.draw_allowed:
                    raise PlanError(
                        "group fixture {0} must allow draws".format(fixture.id)
                    )
                if fixture.group is None:
                    raise PlanError("group fixture {0} has no group".format(fixture.id))
            elif fixture.mode != cup48.const.must_decide:
                raise PlanError(
                    "fixture {0} is not a group fixture and must be decided".format(
                        fixture.id
                    )
                )

    def _compute_predecessors(self):
        out = {}
        slot_users = {}
        for fixture in self._fixtures:
            deps = []
            for source in fixture.sources:
                if isinstance(source, DrawSlot):
                    deps.extend(slot_users.get(source.index, ()))
                    slot_users.setdefault(source.index, []).append(fixture.id)
                else:
                    deps.extend(source.depends_on(self))
            for dep in deps:
                if dep not in self._by_id:
                    raise PlanError(
                        "fixture {0} refers to unknown fixture {1}".format(
                            fixture.id, repr(dep)
                        )
                    )
                if dep == fixture.id:
                    raise PlanError("fixture {0} depends on itself".format(fixture.id))
            seen = set()
            unique = []
            for dep in deps:
                if dep not in seen:
                    seen.add(dep)
                    unique.append(dep)
            out[fixture.id] = tuple(sorted(unique, key=self._plan_index))
        return out

    def _plan_index(self, fixture_id):
        return self._position[fixture_id]

    def _compute_order(self):
        position = self._position
        remaining = dict(
            (fixture_id, len(deps)) for fixture_id, deps in self._predecessors.items()
        )
        dependents = dict((fixture.id, []) for fixture in self._fixtures)
        for fixture_id, deps in self._predecessors.items():
            for dep in deps:
                dependents[dep].append(fixture_id)

        ready = sorted(
            (position[k] for k, v in remaining.items() if v == 0)
        )
        order = []
        while len(ready) != 0:
            index = ready.pop(0)
            fixture_id = self._fixtures[index].id
            order.append(fixture_id)
            for dependent in dependents[fixture_id]:
                remaining[dependent] -= 1
                if remaining[dependent] == 0:
                    ready.append(position[dependent])
            ready.sort()

        if len(order) != len(self._fixtures):
            stuck = [k for k, v in remaining.items() if v > 0]
            raise PlanError(
                "fixture dependencies contain a cycle through {0}".format(
                    ", ".join(sorted(stuck))
                )
            )
        return tuple(order)

    def _check_slots(self):
        uses = {}
        for fixture in self._fixtures:
            for source in fixture.sources:
                if isinstance(source, DrawSlot):
                    uses.setdefault(source.index, []).append(fixture)
        if len(uses) == 0:
            raise PlanError("plan {0} has no draw slots".format(repr(self._name)))

        num_slots = max(uses) + 1
        missing = [i for i in range(num_slots) if i not in uses]
        if len(missing) != 0:
            raise PlanError("draw slots never used: {0}".format(missing))

        grouped = {}
        for label, slots in self._groups.items():
            for slot in slots:
                if slot in grouped:
                    raise PlanError("draw slot {0} is in two groups".format(slot))
                grouped[slot] = label

        for slot, fixtures in uses.items():
            label = grouped.get(slot)
            if label is None:
                if len(fixtures) != 1:
                    raise PlanError(
                        "draw slot {0} is used by {1} fixtures".format(slot, len(fixtures))
                    )
            else:
                for fixture in fixtures:
                    if fixture.group != label:
                        raise PlanError(
                            "draw slot {0} of group {1} is used by fixture {2}".format(
                                slot, repr(label), fixture.id
                            )
                        )

        for label, slots in self._groups.items():
            pairs = set()
            for fixture_id in self._group_fixtures.get(label, ()):
                fixture = self._by_id[fixture_id]
                if not all(isinstance(s, DrawSlot) for s in fixture.sources):
                    raise PlanError(
                        "group fixture {0} must take both teams from the draw".format(
                            fixture_id
                        )
                    )
                pair = frozenset(s.index for s in fixture.sources)
                if len(pair) != 2 or pair in pairs:
                    raise PlanError(
                        "group {0} is not a single round robin".format(repr(label))
                    )
                pairs.add(pair)
            if len(pairs) != len(slots) * (len(slots) - 1) // 2:
                raise PlanError(
                    "group {0} is not a full round robin".format(repr(label))
                )

        return num_slots

    def _check_sources(self):
        thirds = set()
        returnees = set()
        remaining = set()
        for fixture in self._fixtures:
            for source in fixture.sources:
                if isinstance(source, GroupRank):
                    if source.group not in self._groups:
                        raise PlanError(
                            "fixture {0} refers to unknown group {1}".format(
                                fixture.id, repr(source.group)
                            )
                        )
                    if source.place > len(self._groups[source.group]):
                        raise PlanError(
                            "fixture {0} refers to place {1} of a group of {2}".format(
                                fixture.id, source.place, len(self._groups[source.group])
                            )
                        )
                elif isinstance(source, BestThird):
                    thirds.add(source.ordinal)
                elif isinstance(source, Returnee):
                    returnees.add(source.ordinal)
                elif isinstance(source, Remaining):
                    remaining.add(source.ordinal)

        if thirds != set(range(1, self._best_thirds + 1)):
            raise PlanError(
                "best-third slots {0} do not match best_thirds={1}".format(
                    sorted(thirds), self._best_thirds
                )
            )
        if len(returnees) + len(remaining) != 0 and len(self._pool_fixtures) == 0:
            raise PlanError("returnee sources need pool_rounds")
        if returnees != set(range(1, len(returnees) + 1)) or remaining != set(
            range(1, len(remaining) + 1)
        ):
            raise PlanError("returnee and remaining ordinals must be consecutive")

    def _check_positions(self):
        if self._final not in self._by_id:
            raise PlanError("unknown final fixture: {0}".format(repr(self._final)))
        if self._third_place is not None and self._third_place not in self._by_id:
            raise PlanError(
                "unknown third-place fixture: {0}".format(repr(self._third_place))
            )

        taken = [1, 2]
        if self._third_place is not None:
            taken.extend([3, 4])
        for tier in self._tiers:
            taken.extend(range(tier.first_position, tier.last_position + 1))
            if tier.fixtures is not None:
                for fixture_id in tier.fixtures:
                    if fixture_id not in self._by_id:
                        raise PlanError(
                            "tier {0} refers to unknown fixture {1}".format(
                                repr(tier.label), repr(fixture_id)
                            )
                        )
        if sorted(taken) != list(range(1, self._num_slots + 1)):
            raise PlanError(
                "final positions do not cover 1..{0} exactly once".format(
                    self._num_slots
                )
            )


def build_plan(name):
    """
    Args:
        name (str): ``"double-elim-48"``, ``"group-of-3"``, or
            ``"group-of-4"``.

    Builds the named standard plan.
    """
    import cup48.formats.double_elim
    import cup48.formats.groups

    if name == cup48.const.double_elim:
        return cup48.formats.double_elim.build_double_elim_plan()
    elif name == cup48.const.group_of_3:
        return cup48.formats.groups.build_group3_plan()
    elif name == cup48.const.group_of_4:
        return cup48.formats.groups.build_group4_plan()
    else:
        raise PlanError(
            "unknown format {0}; expected one of {1}".format(
                repr(name), ", ".join(cup48.const.format_names)
            )
        )
