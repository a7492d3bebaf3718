"""Finite one-shot decision problems under uncertainty.

A problem couples a finite state space, a finite consequence set (optionally
carrying exact monetary values), a roster of acts (total functions from
states to consequences), named events (subsets of states), and a set of
preference judgments between acts.  Everything is immutable; operations that
"modify" an object return a new one.

Preference judgments are comparative data, not a complete order: a judgment
either ranks one act strictly below another (``"<"``) or declares two acts
indifferent (``"~"``).  Missing comparisons stay missing; downstream checks
must say "not decidable from data" rather than invent them.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence, Union

from .rational import RationalFormatError, format_rational, parse_rational

STRICTLY_LESS = "<"
INDIFFERENT = "~"

_PREFERENCE_RELS = (STRICTLY_LESS, INDIFFERENT)


class ProblemFormatError(ValueError):
    """A problem document violates the schema.

    ``location`` points at the offending element, e.g. ``acts[1].assignment.B``.
    """

    def __init__(self, message: str, location: str = ""):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


# ---------------------------------------------------------------------------
# Core value types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StateSpace:
    """Ordered collection of distinct state labels."""

    labels: tuple[str, ...]

    def __post_init__(self):
        if not self.labels:
            raise ProblemFormatError("state space must be non-empty", "states")
        if len(set(self.labels)) != len(self.labels):
            raise ProblemFormatError("duplicate state labels", "states")

    def __iter__(self):
        return iter(self.labels)

    def __len__(self):
        return len(self.labels)

    def __contains__(self, label: str) -> bool:
        return label in self.labels

    def index(self, label: str) -> int:
        return self.labels.index(label)


@dataclass(frozen=True)
class ConsequenceSet:
    """Distinct consequence labels, each optionally valued in exact money.

    ``values[label]`` is a Fraction for monetary consequences and absent for
    purely qualitative ones.  Mixed sets are allowed.
    """

    labels: tuple[str, ...]
    _values: tuple[tuple[str, Fraction], ...] = ()

    @staticmethod
    def build(entries: Iterable[tuple[str, Optional[Fraction]]]) -> "ConsequenceSet":
        labels = []
        values = []
        for label, value in entries:
            labels.append(label)
            if value is not None:
                values.append((label, Fraction(value)))
        return ConsequenceSet(tuple(labels), tuple(values))

    def __post_init__(self):
        if not self.labels:
            raise ProblemFormatError("consequence set must be non-empty", "consequences")
        if len(set(self.labels)) != len(self.labels):
            raise ProblemFormatError("duplicate consequence labels", "consequences")
        for label, _ in self._values:
            if label not in self.labels:
                raise ProblemFormatError(f"value for unknown consequence {label!r}", "consequences")

    def __iter__(self):
        return iter(self.labels)

    def __len__(self):
        return len(self.labels)

    def __contains__(self, label: str) -> bool:
        return label in self.labels

    def value(self, label: str) -> Optional[Fraction]:
        """Monetary value of ``label``, or None if the label is unvalued."""
        for key, val in self._values:
            if key == label:
                return val
        if label not in self.labels:
            raise KeyError(label)
        return None

    @property
    def values(self) -> dict[str, Fraction]:
        return dict(self._values)


@dataclass(frozen=True)
class Event:
    """A subset of the state space.  Equality and hashing ignore the name."""

    members: frozenset[str]
    name: Optional[str] = field(default=None, compare=False)

    @staticmethod
    def of(states: Iterable[str], name: Optional[str] = None) -> "Event":
        return Event(frozenset(states), name)

    def __contains__(self, state: str) -> bool:
        return state in self.members

    def __len__(self):
        return len(self.members)

    def complement(self, space: StateSpace) -> "Event":
        return Event(frozenset(space.labels) - self.members)

    def intersect(self, other: "Event") -> "Event":
        return Event(self.members & other.members)

    def union(self, other: "Event") -> "Event":
        return Event(self.members | other.members)

    def is_disjoint(self, other: "Event") -> bool:
        return not (self.members & other.members)

    def sorted_members(self, space: Optional[StateSpace] = None) -> tuple[str, ...]:
        if space is not None:
            return tuple(s for s in space.labels if s in self.members)
        return tuple(sorted(self.members))

    def describe(self) -> str:
        if self.name:
            return self.name
        return "{" + ",".join(sorted(self.members)) + "}"


@dataclass(frozen=True)
class Act:
    """Total assignment of a consequence to every state."""

    name: str
    assignment: tuple[tuple[str, str], ...]

    @staticmethod
    def build(name: str, mapping: Mapping[str, str]) -> "Act":
        return Act(name, tuple(sorted(mapping.items())))

    def payoff(self, state: str) -> str:
        for key, label in self.assignment:
            if key == state:
                return label
        raise KeyError(state)

    def mapping(self) -> dict[str, str]:
        return dict(self.assignment)

    def profile(self, space: StateSpace) -> tuple[str, ...]:
        """Consequence labels in state-space order; the extensional identity."""
        lookup = dict(self.assignment)
        return tuple(lookup[s] for s in space.labels)

    def is_constant(self) -> bool:
        return len({label for _, label in self.assignment}) == 1

    def restricted(self, states: Iterable[str]) -> tuple[tuple[str, str], ...]:
        wanted = set(states)
        return tuple((s, c) for s, c in self.assignment if s in wanted)


@dataclass(frozen=True)
class Judgment:
    """One comparative datum: ``left < right`` or ``left ~ right``."""

    left: str
    right: str
    rel: str

    def __post_init__(self):
        if self.rel not in _PREFERENCE_RELS:
            raise ProblemFormatError(f"unknown relation {self.rel!r}", "preferences")


RAW = "raw"
TRANSITIVELY_CLOSED = "transitively-closed"


@dataclass(frozen=True)
class PreferenceRelation:
    """A bag of judgments plus the closure mode checkers should use.

    Construction rejects immediate contradictions: a strict judgment in both
    directions over the same pair, or a strict self-comparison.  Subtler
    inconsistencies (cycles through third acts) are left for the axiom
    checks to report with witnesses.
    """

    judgments: tuple[Judgment, ...]
    mode: str = TRANSITIVELY_CLOSED

    def __post_init__(self):
        if self.mode not in (RAW, TRANSITIVELY_CLOSED):
            raise ProblemFormatError(f"unknown closure mode {self.mode!r}", "preferences")
        strict = set()
        for j in self.judgments:
            if j.rel == STRICTLY_LESS:
                if j.left == j.right:
                    raise ProblemFormatError(
                        f"act {j.left!r} judged strictly below itself", "preferences"
                    )
                strict.add((j.left, j.right))
        for a, b in strict:
            if (b, a) in strict:
                raise ProblemFormatError(
                    f"contradictory strict judgments between {a!r} and {b!r}",
                    "preferences",
                )

    def __iter__(self):
        return iter(self.judgments)

    def __len__(self):
        return len(self.judgments)

    def with_judgment(self, judgment: Judgment) -> "PreferenceRelation":
        return PreferenceRelation(self.judgments + (judgment,), self.mode)

    def act_names(self) -> set[str]:
        names = set()
        for j in self.judgments:
            names.add(j.left)
            names.add(j.right)
        return names


@dataclass(frozen=True)
class DecisionProblem:
    states: StateSpace
    consequences: ConsequenceSet
    acts: tuple[Act, ...]
    events: tuple[Event, ...]
    preferences: PreferenceRelation

    def __post_init__(self):
        seen = set()
        for i, act in enumerate(self.acts):
            if act.name in seen:
                raise ProblemFormatError(f"duplicate act name {act.name!r}", f"acts[{i}]")
            seen.add(act.name)
            mapping = dict(act.assignment)
            for s in self.states:
                if s not in mapping:
                    raise ProblemFormatError(
                        f"act {act.name!r} assigns nothing to state {s!r}", f"acts[{i}]"
                    )
            for s, c in act.assignment:
                if s not in self.states:
                    raise ProblemFormatError(
                        f"act {act.name!r} references unknown state {s!r}", f"acts[{i}]"
                    )
                if c not in self.consequences:
                    raise ProblemFormatError(
                        f"act {act.name!r} references unknown consequence {c!r}",
                        f"acts[{i}].assignment.{s}",
                    )
        event_names = set()
        for i, event in enumerate(self.events):
            if event.name:
                if event.name in event_names:
                    raise ProblemFormatError(f"duplicate event name {event.name!r}", f"events[{i}]")
                event_names.add(event.name)
            for s in event.members:
                if s not in self.states:
                    raise ProblemFormatError(
                        f"event {event.describe()} references unknown state {s!r}", f"events[{i}]"
                    )
        known = {act.name for act in self.acts}
        for i, j in enumerate(self.preferences):
            for side, name in (("left", j.left), ("right", j.right)):
                if name not in known:
                    raise ProblemFormatError(
                        f"judgment references unknown act {name!r}", f"preferences[{i}].{side}"
                    )

    # -- lookup helpers ----------------------------------------------------

    def act(self, name: str) -> Act:
        for act in self.acts:
            if act.name == name:
                return act
        raise KeyError(name)

    def has_act(self, name: str) -> bool:
        return any(act.name == name for act in self.acts)

    def event(self, name: str) -> Event:
        for event in self.events:
            if event.name == name:
                return event
        raise KeyError(name)

    def sure_event(self) -> Event:
        return Event(frozenset(self.states.labels), name=None)

    def act_by_profile(self, profile: tuple[str, ...]) -> Optional[Act]:
        """Find a declared act extensionally equal to ``profile``, if any."""
        for act in self.acts:
            if act.profile(self.states) == profile:
                return act
        return None

    def replace_preferences(self, preferences: PreferenceRelation) -> "DecisionProblem":
        return DecisionProblem(self.states, self.consequences, self.acts, self.events, preferences)

    def with_acts(self, extra: Sequence[Act]) -> "DecisionProblem":
        return DecisionProblem(
            self.states, self.consequences, self.acts + tuple(extra), self.events, self.preferences
        )


# ---------------------------------------------------------------------------
# Act constructions
# ---------------------------------------------------------------------------


def constant_act(label: str, space: StateSpace, name: Optional[str] = None) -> Act:
    """The act paying consequence ``label`` in every state."""
    return Act.build(name or f"const:{label}", {s: label for s in space.labels})


def bet_act(
    event: Event,
    win: str,
    lose: str,
    space: StateSpace,
    name: Optional[str] = None,
) -> Act:
    """The act paying ``win`` on ``event`` and ``lose`` elsewhere."""
    mapping = {s: (win if s in event.members else lose) for s in space.labels}
    return Act.build(name or f"bet:{event.describe()}:{win}:{lose}", mapping)


def splice(f: Act, g: Act, event: Event, name: Optional[str] = None) -> Act:
    """Compound act equal to ``f`` on ``event`` and to ``g`` off it.

    Both acts must be total over the same states; the result is total too.
    """
    f_map = dict(f.assignment)
    g_map = dict(g.assignment)
    if set(f_map) != set(g_map):
        raise ValueError(f"acts {f.name!r} and {g.name!r} are over different state spaces")
    unknown = event.members - set(f_map)
    if unknown:
        raise ValueError(f"event references states outside the acts' space: {sorted(unknown)}")
    mapping = {s: (f_map[s] if s in event.members else g_map[s]) for s in f_map}
    return Act.build(name or f"splice:{f.name}:{g.name}:{event.describe()}", mapping)


def agree_on(f: Act, g: Act, event: Event) -> bool:
    """True iff the two acts assign the same consequence on every state of ``event``."""
    f_map = dict(f.assignment)
    g_map = dict(g.assignment)
    return all(f_map.get(s) == g_map.get(s) for s in event.members)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

_KNOWN_TOP_KEYS = {
    "states",
    "consequences",
    "acts",
    "events",
    "preferences",
    "event_order",
    "probability",
    "prices",
    "description",
}


def problem_from_document(doc: Mapping) -> DecisionProblem:
    """Build a problem from a parsed JSON document.

    Optional companion keys (``event_order``, ``probability``, ``prices``,
    ``description``) are tolerated here and read by the modules that use
    them; anything else is reported as a schema violation.
    """
    if not isinstance(doc, Mapping):
        raise ProblemFormatError("document must be a JSON object")
    for key in doc:
        if key not in _KNOWN_TOP_KEYS:
            raise ProblemFormatError(f"unknown key {key!r}", key)
    for key in ("states", "consequences", "acts"):
        if key not in doc:
            raise ProblemFormatError(f"missing required key {key!r}", key)

    raw_states = doc["states"]
    if not isinstance(raw_states, list) or not all(isinstance(s, str) for s in raw_states):
        raise ProblemFormatError("must be an array of strings", "states")
    states = StateSpace(tuple(raw_states))

    entries = []
    raw_consequences = doc["consequences"]
    if not isinstance(raw_consequences, list):
        raise ProblemFormatError("must be an array of {label, value?} objects", "consequences")
    for i, item in enumerate(raw_consequences):
        loc = f"consequences[{i}]"
        if not isinstance(item, Mapping) or "label" not in item:
            raise ProblemFormatError("expected an object with a 'label' key", loc)
        extra = set(item) - {"label", "value"}
        if extra:
            raise ProblemFormatError(f"unknown keys {sorted(extra)}", loc)
        label = item["label"]
        if not isinstance(label, str):
            raise ProblemFormatError("label must be a string", loc)
        value = None
        if "value" in item and item["value"] is not None:
            try:
                value = parse_rational(item["value"])
            except RationalFormatError as exc:
                raise ProblemFormatError(str(exc), f"{loc}.value") from None
        entries.append((label, value))
    consequences = ConsequenceSet.build(entries)

    acts = []
    raw_acts = doc["acts"]
    if not isinstance(raw_acts, list):
        raise ProblemFormatError("must be an array of {name, assignment} objects", "acts")
    for i, item in enumerate(raw_acts):
        loc = f"acts[{i}]"
        if not isinstance(item, Mapping) or set(item) != {"name", "assignment"}:
            raise ProblemFormatError("expected an object with 'name' and 'assignment'", loc)
        if not isinstance(item["name"], str) or not isinstance(item["assignment"], Mapping):
            raise ProblemFormatError("name must be a string, assignment an object", loc)
        acts.append(Act.build(item["name"], dict(item["assignment"])))

    events = []
    raw_events = doc.get("events", {})
    if not isinstance(raw_events, Mapping):
        raise ProblemFormatError("must be an object mapping names to state arrays", "events")
    for name, members in raw_events.items():
        loc = f"events.{name}"
        if not isinstance(members, list) or not all(isinstance(s, str) for s in members):
            raise ProblemFormatError("must be an array of state labels", loc)
        events.append(Event.of(members, name))

    judgments = []
    raw_prefs = doc.get("preferences", [])
    mode = TRANSITIVELY_CLOSED
    if isinstance(raw_prefs, Mapping):
        extra = set(raw_prefs) - {"mode", "judgments"}
        if extra:
            raise ProblemFormatError(f"unknown keys {sorted(extra)}", "preferences")
        mode = raw_prefs.get("mode", TRANSITIVELY_CLOSED)
        raw_prefs = raw_prefs.get("judgments", [])
    if not isinstance(raw_prefs, list):
        raise ProblemFormatError("must be an array of {left, right, rel} objects", "preferences")
    for i, item in enumerate(raw_prefs):
        loc = f"preferences[{i}]"
        if not isinstance(item, Mapping) or set(item) != {"left", "right", "rel"}:
            raise ProblemFormatError("expected an object with 'left', 'right', 'rel'", loc)
        if item["rel"] not in _PREFERENCE_RELS:
            raise ProblemFormatError(
                f"relation must be '<' or '~', got {item['rel']!r}", f"{loc}.rel"
            )
        judgments.append(Judgment(item["left"], item["right"], item["rel"]))

    return DecisionProblem(
        states=states,
        consequences=consequences,
        acts=tuple(acts),
        events=tuple(events),
        preferences=PreferenceRelation(tuple(judgments), mode),
    )


def problem_to_document(problem: DecisionProblem) -> dict:
    """Inverse of :func:`problem_from_document` (round-trips exactly)."""
    consequences = []
    for label in problem.consequences:
        value = problem.consequences.value(label)
        item: dict = {"label": label}
        if value is not None:
            item["value"] = format_rational(value)
        consequences.append(item)
    return {
        "states": list(problem.states.labels),
        "consequences": consequences,
        "acts": [
            {"name": act.name, "assignment": {s: act.payoff(s) for s in problem.states}}
            for act in problem.acts
        ],
        "events": {
            event.name: list(event.sorted_members(problem.states))
            for event in problem.events
            if event.name
        },
        "preferences": _preferences_to_document(problem.preferences),
    }


def _preferences_to_document(preferences: PreferenceRelation):
    rows = [
        {"left": j.left, "right": j.right, "rel": j.rel} for j in preferences
    ]
    if preferences.mode == TRANSITIVELY_CLOSED:
        return rows
    return {"mode": preferences.mode, "judgments": rows}


def load_document(path: Union[str, Path]) -> dict:
    """Read a JSON document keeping decimal literals exact (parsed as strings)."""
    text = Path(path).read_text()
    try:
        return json.loads(text, parse_float=str)
    except json.JSONDecodeError as exc:
        raise ProblemFormatError(f"invalid JSON: {exc}") from None


def load_problem(path: Union[str, Path]) -> DecisionProblem:
    return problem_from_document(load_document(path))


def save_problem(problem: DecisionProblem, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(problem_to_document(problem), indent=2) + "\n")
