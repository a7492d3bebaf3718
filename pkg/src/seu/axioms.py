"""Postulate checks for preference data over acts.

Seven checks are exposed: completeness and transitivity of the weak order
(P1), the sure-thing principle in its long agreement form (P2), event-wise
state independence of consequence orderings (P3), payoff independence of
betting preferences (P4), non-triviality (P5), conditional dominance (P7),
and a finite continuity audit over designated small events (P6-audit).

All checks share two ground rules:

* They read the declared judgments through their transitive closure by
  default (the relation's ``mode`` can force raw reading), and they never
  assume an absent judgment.  Instances that would need a missing judgment
  are reported in ``undecided`` instead of being guessed.
* Every witness carries the acts, events, and relations needed to
  re-evaluate it against the same problem; :func:`recheck_witness` does so.

Conditional preference between two acts given an event quantifies over the
common part the compared acts share off the event.  With finite data we can
only inspect the common parts realised by declared acts, so the comparison
reports how many of the possible common parts were decided and lists a
sample of the missing ones.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .ordering import EQUIVALENT, GREATER, LESS, UNORDERED, Preorder
from .problem import (
    Act,
    DecisionProblem,
    Event,
    StateSpace,
    TRANSITIVELY_CLOSED,
    constant_act,
)
from .qualitative import EventOrder, OrderJudgment, ProbabilityMeasure
from .reports import NOT_DECIDABLE, Witness, ViolationReport, build_report

NOT_WELL_DEFINED = "not-well-defined"

P1 = "P1"
P1_COMPLETE = "P1-complete"
P1_TRANSITIVE = "P1-transitive"
P2 = "P2"
P3 = "P3"
P4 = "P4"
P5 = "P5"
P7 = "P7"
P6_AUDIT = "P6-audit"

NULL = "null"
NON_NULL = "non-null"
UNKNOWN = "unknown"


def _event_states(event: Event, space: StateSpace) -> list[str]:
    return [s for s in space.labels if s in event.members]


# ---------------------------------------------------------------------------
# Preference view: closure-backed comparisons plus extensional act lookup
# ---------------------------------------------------------------------------


class PreferenceView:
    """Comparison oracle over declared acts plus synthesized constant acts.

    Constant acts that are extensionally equal to a declared act reuse the
    declared act (and hence its judgments); freshly synthesized ones carry
    no judgments and therefore compare as unordered against everything.
    """

    def __init__(self, problem: DecisionProblem, mode: Optional[str] = None):
        self.problem = problem
        self.space = problem.states
        self._index = {s: i for i, s in enumerate(self.space.labels)}
        self._acts: dict[str, Act] = {}
        self._profiles: dict[tuple[str, ...], str] = {}
        self._profile_of: dict[str, tuple[str, ...]] = {}
        for act in problem.acts:
            self._register(act)
        self._const_names: dict[str, str] = {}
        for label in problem.consequences:
            profile = tuple(label for _ in self.space.labels)
            name = self._profiles.get(profile)
            if name is None:
                synth = constant_act(label, self.space)
                name = synth.name
                while name in self._acts:
                    name += "'"
                self._register(Act(name, synth.assignment))
            self._const_names[label] = name
        closed = (mode or problem.preferences.mode) == TRANSITIVELY_CLOSED
        self._order = Preorder(
            list(self._acts),
            [(j.left, j.right, j.rel) for j in problem.preferences],
            closed=closed,
        )

    def _register(self, act: Act) -> None:
        self._acts[act.name] = act
        profile = act.profile(self.space)
        self._profiles.setdefault(profile, act.name)
        self._profile_of[act.name] = profile

    # -- lookup --------------------------------------------------------------

    def declared_names(self) -> list[str]:
        return [act.name for act in self.problem.acts]

    def profile(self, name: str) -> tuple[str, ...]:
        return self._profile_of[name]

    def name_for_profile(self, profile: tuple[str, ...]) -> Optional[str]:
        return self._profiles.get(profile)

    def constant_name(self, label: str) -> str:
        return self._const_names[label]

    def indices(self, states: Iterable[str]) -> tuple[int, ...]:
        return tuple(self._index[s] for s in states)

    # -- comparisons ----------------------------------------------------------

    def compare(self, a: str, b: str) -> str:
        if a == b:
            return EQUIVALENT
        return self._order.compare(a, b)

    def unordered_declared_pairs(self) -> list[tuple[str, str]]:
        declared = set(self.declared_names())
        return [
            (a, b)
            for a, b in self._order.unordered_pairs()
            if a in declared and b in declared
        ]

    def strict_cycles(self) -> list[list[str]]:
        return self._order.strict_violations()

    def consequence_compare(self, c1: str, c2: str) -> str:
        """Order two consequences: constant-act judgments first, money second."""
        r = self.compare(self._const_names[c1], self._const_names[c2])
        if r != UNORDERED:
            return r
        v1 = self.problem.consequences.value(c1)
        v2 = self.problem.consequences.value(c2)
        if v1 is not None and v2 is not None:
            if v1 < v2:
                return LESS
            if v1 > v2:
                return GREATER
            return EQUIVALENT
        return UNORDERED


def _resolve(problem: DecisionProblem, act: Union[str, Act]) -> str:
    name = act.name if isinstance(act, Act) else act
    problem.act(name)  # raises KeyError for unknown acts
    return name


def _resolve_in_view(view: "PreferenceView", act: Union[str, Act]) -> str:
    """Like :func:`_resolve` but also admits the view's synthesized constants."""
    name = act.name if isinstance(act, Act) else act
    if name not in view._acts:
        raise KeyError(name)
    return name


# ---------------------------------------------------------------------------
# Conditional preference
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConditionalComparison:
    """Outcome of comparing two acts given an event.

    ``relation`` is ``less``/``greater``/``equivalent`` when every decided
    common part agrees, ``not-well-defined`` when decided parts disagree,
    and ``not-decidable-from-data`` when no part could be decided.
    """

    left: str
    right: str
    event: tuple[str, ...]
    relation: str
    decided_parts: int
    total_parts: int
    evidence: tuple[tuple[str, str, str], ...]
    missing_sample: tuple[tuple[tuple[str, str], ...], ...]

    @property
    def decided(self) -> bool:
        return self.relation in (LESS, GREATER, EQUIVALENT)


def conditional_preference(
    problem: DecisionProblem,
    left: Union[str, Act],
    right: Union[str, Act],
    event: Event,
    view: Optional[PreferenceView] = None,
    missing_cap: int = 5,
) -> ConditionalComparison:
    """Compare ``left`` against ``right`` given ``event``.

    Quantifies over common parts h off the event: for every h realised by
    declared acts, the spliced pair (left on the event with h elsewhere,
    right on the event with h elsewhere) is looked up extensionally and its
    declared relation collected.  Missing spliced acts or missing judgments
    leave that common part undecided.
    """
    view = view or PreferenceView(problem)
    f = _resolve_in_view(view, left)
    g = _resolve_in_view(view, right)
    space = problem.states
    e_states = _event_states(event, space)
    unknown = event.members - set(space.labels)
    if unknown:
        raise ValueError(f"event references unknown states: {sorted(unknown)}")
    ebar_states = [s for s in space.labels if s not in event.members]
    e_idx = view.indices(e_states)
    ebar_idx = view.indices(ebar_states)
    f_profile = view.profile(f)
    g_profile = view.profile(g)
    f_on_e = tuple(f_profile[i] for i in e_idx)
    g_on_e = tuple(g_profile[i] for i in e_idx)
    n_consequences = len(problem.consequences)
    total_parts = n_consequences ** len(ebar_states)
    event_key = tuple(e_states)

    if f_on_e == g_on_e:
        # The spliced pair is a pair of identical acts for every common part.
        return ConditionalComparison(
            f, g, event_key, EQUIVALENT, total_parts, total_parts, (), ()
        )

    def merge(on_e: tuple[str, ...], h: tuple[str, ...]) -> tuple[str, ...]:
        out = [""] * len(space.labels)
        for pos, i in enumerate(e_idx):
            out[i] = on_e[pos]
        for pos, i in enumerate(ebar_idx):
            out[i] = h[pos]
        return tuple(out)

    decided: dict[tuple[str, ...], tuple[str, str, str]] = {}
    blocked: set[tuple[str, ...]] = set()
    for profile, name in list(view._profiles.items()):
        if tuple(profile[i] for i in e_idx) != f_on_e:
            continue
        h = tuple(profile[i] for i in ebar_idx)
        if h in decided or h in blocked:
            continue
        partner = view.name_for_profile(merge(g_on_e, h))
        if partner is None:
            blocked.add(h)
            continue
        rel = view.compare(name, partner)
        if rel == UNORDERED:
            blocked.add(h)
            continue
        decided[h] = (name, partner, rel)

    relations = {rel for _, _, rel in decided.values()}
    if not decided:
        relation = NOT_DECIDABLE
    elif len(relations) == 1:
        relation = next(iter(relations))
    else:
        relation = NOT_WELL_DEFINED

    missing_sample: list[tuple[tuple[str, str], ...]] = []
    if len(decided) < total_parts and missing_cap > 0:
        for h in itertools.product(problem.consequences.labels, repeat=len(ebar_states)):
            if h not in decided:
                missing_sample.append(tuple(zip(ebar_states, h)))
                if len(missing_sample) >= missing_cap:
                    break

    return ConditionalComparison(
        f,
        g,
        event_key,
        relation,
        len(decided),
        total_parts,
        tuple(sorted(decided.values())),
        tuple(missing_sample),
    )


# ---------------------------------------------------------------------------
# Null events
# ---------------------------------------------------------------------------


def event_null_status(
    problem: DecisionProblem, event: Event, view: Optional[PreferenceView] = None
) -> str:
    """Classify an event as null, non-null, or unknown from the data.

    Evidence comes from declared act pairs that agree off the event and
    differ on it: any non-indifferent such pair certifies non-nullity, and
    indifference across all decided such pairs certifies nullity.
    """
    if not event.members:
        return NULL
    view = view or PreferenceView(problem)
    space = problem.states
    ebar_idx = view.indices([s for s in space.labels if s not in event.members])
    e_idx = view.indices(_event_states(event, space))
    groups: dict[tuple[str, ...], list[str]] = {}
    for name in view.declared_names():
        profile = view.profile(name)
        groups.setdefault(tuple(profile[i] for i in ebar_idx), []).append(name)
    evidence = False
    for members in groups.values():
        for a, b in itertools.combinations(members, 2):
            if tuple(view.profile(a)[i] for i in e_idx) == tuple(
                view.profile(b)[i] for i in e_idx
            ):
                continue
            rel = view.compare(a, b)
            if rel == UNORDERED:
                continue
            if rel != EQUIVALENT:
                return NON_NULL
            evidence = True
    return NULL if evidence else UNKNOWN


def null_events(problem: DecisionProblem) -> list[Event]:
    """Declared events (plus the empty event) that the data shows to be null."""
    view = PreferenceView(problem)
    out = []
    seen: set[frozenset] = set()
    for event in (Event(frozenset()),) + problem.events:
        if event.members in seen:
            continue
        seen.add(event.members)
        if event_null_status(problem, event, view) == NULL:
            out.append(event)
    return out


# ---------------------------------------------------------------------------
# P1: complete weak order
# ---------------------------------------------------------------------------


def check_p1_completeness(problem: DecisionProblem) -> ViolationReport:
    view = PreferenceView(problem)
    names = view.declared_names()
    total_pairs = len(names) * (len(names) - 1) // 2
    witnesses = [
        Witness.build("incomplete-pair", {"left": a, "right": b})
        for a, b in view.unordered_declared_pairs()
    ]
    return build_report(P1_COMPLETE, witnesses, decided=total_pairs - len(witnesses))


def check_p1_transitivity(problem: DecisionProblem) -> ViolationReport:
    # Always close: a strict cycle through declared judgments rules out
    # every extending weak order, whichever mode the data arrived in.
    view = PreferenceView(problem, mode=TRANSITIVELY_CLOSED)
    witnesses = [
        Witness.build(
            "strict-cycle",
            {"cycle": list(cycle)},
            note="a declared strict judgment is contradicted by the closure of the others",
        )
        for cycle in view.strict_cycles()
    ]
    return build_report(P1_TRANSITIVE, witnesses, decided=len(problem.preferences))


def check_p1(problem: DecisionProblem) -> ViolationReport:
    """Completeness and transitivity in one report (witness kinds differ)."""
    completeness = check_p1_completeness(problem)
    transitivity = check_p1_transitivity(problem)
    witnesses = transitivity.witnesses + completeness.witnesses
    decided = len(problem.preferences)
    return build_report(P1, witnesses, decided=decided)


# ---------------------------------------------------------------------------
# P2: the sure-thing principle, long form
# ---------------------------------------------------------------------------


def check_p2(problem: DecisionProblem) -> ViolationReport:
    """Flag quadruples (f, g, f', g') violating the sure-thing principle.

    The quadruple qualifies for an event E when f agrees with g off E, f'
    agrees with g' off E, f agrees with f' on E, and g agrees with g' on E.
    It is violated when the data orders f at-or-below g but g' strictly
    below f'.
    """
    view = PreferenceView(problem)
    space = problem.states
    witnesses: list[Witness] = []
    undecided: list[dict] = []
    decided = 0
    declared = view.declared_names()
    seen_events: set[frozenset] = set()
    for event in problem.events:
        if event.members in seen_events:
            continue
        seen_events.add(event.members)
        e_idx = view.indices(_event_states(event, space))
        ebar_idx = view.indices([s for s in space.labels if s not in event.members])
        ebar_groups: dict[tuple[str, ...], list[str]] = {}
        e_groups: dict[tuple[str, ...], list[str]] = {}
        for name in declared:
            profile = view.profile(name)
            ebar_groups.setdefault(tuple(profile[i] for i in ebar_idx), []).append(name)
            e_groups.setdefault(tuple(profile[i] for i in e_idx), []).append(name)
        event_key = _event_states(event, space)
        for group in ebar_groups.values():
            for f, g in itertools.permutations(group, 2):
                f_on_e = tuple(view.profile(f)[i] for i in e_idx)
                g_on_e = tuple(view.profile(g)[i] for i in e_idx)
                for f2 in e_groups.get(f_on_e, ()):
                    h = tuple(view.profile(f2)[i] for i in ebar_idx)
                    g2_profile = [""] * len(space.labels)
                    for pos, i in enumerate(e_idx):
                        g2_profile[i] = g_on_e[pos]
                    for pos, i in enumerate(ebar_idx):
                        g2_profile[i] = h[pos]
                    g2 = view.name_for_profile(tuple(g2_profile))
                    if g2 is None or g2 not in set(declared):
                        continue
                    r1 = view.compare(f, g)
                    r2 = view.compare(f2, g2)
                    if r1 == UNORDERED or r2 == UNORDERED:
                        undecided.append(
                            {"acts": [f, g, f2, g2], "event": event_key}
                        )
                        continue
                    decided += 1
                    if r1 in (LESS, EQUIVALENT) and r2 == GREATER:
                        witnesses.append(
                            Witness.build(
                                "sure-thing-violation",
                                {
                                    "acts": [f, g, f2, g2],
                                    "event": event_key,
                                    "unconditional": r1,
                                    "flipped": r2,
                                },
                                note=(
                                    f"{f} ≤ {g} but {g2} < {f2}, although both pairs "
                                    f"differ only on {event.describe()}"
                                ),
                            )
                        )
    return build_report(P2, witnesses, decided=decided, undecided=undecided)


# ---------------------------------------------------------------------------
# P3: state independence over non-null events
# ---------------------------------------------------------------------------


def check_p3(problem: DecisionProblem) -> ViolationReport:
    view = PreferenceView(problem)
    witnesses: list[Witness] = []
    undecided: list[dict] = []
    decided = 0
    seen: set[frozenset] = set()
    for event in problem.events:
        if event.members in seen or not event.members:
            continue
        seen.add(event.members)
        status = event_null_status(problem, event, view)
        event_key = _event_states(event, problem.states)
        if status == NULL:
            continue
        if status == UNKNOWN:
            undecided.append({"event": event_key, "reason": "nullity unknown"})
            continue
        for c1, c2 in itertools.combinations(problem.consequences.labels, 2):
            a = view.constant_name(c1)
            b = view.constant_name(c2)
            unconditional = view.compare(a, b)
            if unconditional == UNORDERED:
                undecided.append({"event": event_key, "consequences": [c1, c2]})
                continue
            conditional = conditional_preference(problem, a, b, event, view)
            if not conditional.decided:
                undecided.append(
                    {
                        "event": event_key,
                        "consequences": [c1, c2],
                        "conditional": conditional.relation,
                    }
                )
                continue
            decided += 1
            if conditional.relation != unconditional:
                witnesses.append(
                    Witness.build(
                        "state-dependence",
                        {
                            "event": event_key,
                            "consequences": [c1, c2],
                            "unconditional": unconditional,
                            "conditional": conditional.relation,
                            "evidence": [list(e) for e in conditional.evidence],
                        },
                        note=(
                            f"constant acts for {c1!r}/{c2!r} are ordered "
                            f"{unconditional} unconditionally but {conditional.relation} "
                            f"given {event.describe()}"
                        ),
                    )
                )
    return build_report(P3, witnesses, decided=decided, undecided=undecided)


# ---------------------------------------------------------------------------
# P4: betting preferences independent of the payoff level
# ---------------------------------------------------------------------------


def _bet_table(problem: DecisionProblem, view: PreferenceView):
    """Two-valued declared acts grouped by decided (win, lose) level."""
    table: dict[tuple[str, str], dict[frozenset, str]] = {}
    for name in view.declared_names():
        profile = view.profile(name)
        values = set(profile)
        if len(values) != 2:
            continue
        x, y = sorted(values)
        rel = view.consequence_compare(x, y)
        if rel == LESS:
            win, lose = y, x
        elif rel == GREATER:
            win, lose = x, y
        else:
            continue
        event = frozenset(
            s for s, c in zip(problem.states.labels, profile) if c == win
        )
        table.setdefault((win, lose), {}).setdefault(event, name)
    return table


def check_p4(problem: DecisionProblem) -> ViolationReport:
    view = PreferenceView(problem)
    table = _bet_table(problem, view)
    witnesses: list[Witness] = []
    undecided: list[dict] = []
    decided = 0
    levels = sorted(table)
    for level1, level2 in itertools.permutations(levels, 2):
        shared = set(table[level1]) & set(table[level2])
        for a_members, b_members in itertools.permutations(sorted(shared, key=sorted), 2):
            f_a = table[level1][a_members]
            f_b = table[level1][b_members]
            g_a = table[level2][a_members]
            g_b = table[level2][b_members]
            r1 = view.compare(f_a, f_b)
            r2 = view.compare(g_a, g_b)
            instance = {
                "events": [sorted(a_members), sorted(b_members)],
                "levels": [list(level1), list(level2)],
                "acts": [f_a, f_b, g_a, g_b],
            }
            if r1 == UNORDERED or r2 == UNORDERED:
                undecided.append(instance)
                continue
            decided += 1
            if r1 in (LESS, EQUIVALENT) and r2 == GREATER:
                witnesses.append(
                    Witness.build(
                        "payoff-dependent-betting",
                        dict(instance, premise=r1, flipped=r2),
                        note=(
                            f"betting on {sorted(a_members)} is at most as good as "
                            f"{sorted(b_members)} at stakes {level1}, but strictly "
                            f"better at stakes {level2}"
                        ),
                    )
                )
    return build_report(P4, witnesses, decided=decided, undecided=undecided)


# ---------------------------------------------------------------------------
# P5: non-triviality
# ---------------------------------------------------------------------------


def check_p5(problem: DecisionProblem) -> ViolationReport:
    view = PreferenceView(problem)
    if not problem.preferences.judgments:
        return build_report(
            P5,
            [],
            decided=0,
            undecided=[{"reason": "no judgments declared"}],
        )
    names = view.declared_names()
    constant = [n for n in names if problem.act(n).is_constant()]
    strict_constant = None
    strict_any = None
    for a, b in itertools.combinations(names, 2):
        rel = view.compare(a, b)
        if rel in (LESS, GREATER):
            strict_any = (a, b) if rel == LESS else (b, a)
            if a in constant and b in constant:
                strict_constant = strict_any
                break
    if strict_constant or strict_any:
        pair = strict_constant or strict_any
        detail = {
            "strict_pair": list(pair),
            "constant_acts": bool(strict_constant),
        }
        return build_report(P5, [], decided=1, detail=detail)
    return build_report(
        P5,
        [
            Witness.build(
                "all-indifferent",
                {"acts": names},
                note="every comparable pair of declared acts is indifferent",
            )
        ],
        decided=1,
    )


# ---------------------------------------------------------------------------
# P7: conditional dominance
# ---------------------------------------------------------------------------


def check_p7(problem: DecisionProblem) -> ViolationReport:
    view = PreferenceView(problem)
    space = problem.states
    witnesses: list[Witness] = []
    undecided: list[dict] = []
    decided = 0
    declared = view.declared_names()
    events: list[Event] = []
    seen: set[frozenset] = set()
    for event in problem.events + (problem.sure_event(),):
        if event.members in seen:
            continue
        seen.add(event.members)
        events.append(event)

    const_rel_cache: dict[tuple[str, str, frozenset], str] = {}

    def against_constant(f: str, label: str, event: Event) -> str:
        # The premise comparisons are conditional on the event: an act can
        # sit above a constant overall yet below it where the event holds.
        key = (f, label, event.members)
        if key not in const_rel_cache:
            comparison = conditional_preference(
                problem, f, view.constant_name(label), event, view
            )
            const_rel_cache[key] = (
                comparison.relation if comparison.decided else UNORDERED
            )
        return const_rel_cache[key]

    for event in events:
        e_states = _event_states(event, space)
        if not e_states:
            continue
        event_key = list(e_states)
        for f, g in itertools.permutations(declared, 2):
            f_profile = view.profile(f)
            g_profile = view.profile(g)
            if all(
                f_profile[space.index(s)] == g_profile[space.index(s)]
                for s in e_states
            ):
                # Acts that coincide on the event: the implication is vacuous
                # and would count as decided without testing anything.
                continue
            rels = [
                against_constant(f, g_profile[space.index(s)], event)
                for s in e_states
            ]
            for direction, premise_ok, bad in (
                ("below", all(r in (LESS, EQUIVALENT) for r in rels), GREATER),
                ("above", all(r in (GREATER, EQUIVALENT) for r in rels), LESS),
            ):
                if not premise_ok:
                    if UNORDERED in rels and not any(
                        r == (GREATER if direction == "below" else LESS) for r in rels
                    ):
                        undecided.append(
                            {
                                "event": event_key,
                                "acts": [f, g],
                                "direction": direction,
                                "reason": "premise not decidable",
                            }
                        )
                    continue
                conditional = conditional_preference(problem, f, g, event, view)
                if not conditional.decided:
                    undecided.append(
                        {
                            "event": event_key,
                            "acts": [f, g],
                            "direction": direction,
                            "reason": conditional.relation,
                        }
                    )
                    continue
                decided += 1
                if conditional.relation == bad:
                    side = "at most" if direction == "below" else "at least"
                    witnesses.append(
                        Witness.build(
                            "dominance-violation",
                            {
                                "event": event_key,
                                "acts": [f, g],
                                "direction": direction,
                                "conditional": conditional.relation,
                                "evidence": [list(e) for e in conditional.evidence],
                            },
                            note=(
                                f"{f} is {side} as good as every consequence {g} "
                                f"takes on the event, yet the conditional ordering "
                                f"goes the other way"
                            ),
                        )
                    )
    return build_report(P7, witnesses, decided=decided, undecided=undecided)


# ---------------------------------------------------------------------------
# P6 audit: finite continuity probe over designated small events
# ---------------------------------------------------------------------------


def small_event_continuity_audit(
    problem: DecisionProblem,
    small_events: Sequence[Event],
    probability: ProbabilityMeasure,
    threshold: Fraction = Fraction(1, 20),
) -> ViolationReport:
    """Replay strict preferences under small modifications.

    For every strict pair f < g, every designated small event E (the given
    measure must assign it mass at most ``threshold``), and every consequence
    h, the act obtained from f (and dually from g) by paying h on E should
    preserve the strict ordering.  Decided reversals and collapses to
    indifference are witnessed; a reversal whose modified act is constant is
    annotated, since rejecting it means rejecting a sure gain.
    """
    for event in small_events:
        mass = probability.of(event.members)
        if mass > threshold:
            raise ValueError(
                f"event {event.describe()} has mass {mass}, above the "
                f"small-event threshold {threshold}"
            )
    view = PreferenceView(problem)
    space = problem.states
    declared = view.declared_names()
    strict_pairs = [
        (f, g)
        for f, g in itertools.permutations(declared, 2)
        if view.compare(f, g) == LESS
    ]
    witnesses: list[Witness] = []
    undecided: list[dict] = []
    decided = 0
    for f, g in strict_pairs:
        for event in small_events:
            e_idx = view.indices(_event_states(event, space))
            event_key = _event_states(event, space)
            for h in problem.consequences.labels:
                for target, keep, modified_role in ((f, g, "loser"), (g, f, "winner")):
                    profile = list(view.profile(target))
                    for i in e_idx:
                        profile[i] = h
                    profile_t = tuple(profile)
                    if profile_t == view.profile(target):
                        continue
                    modified = view.name_for_profile(profile_t)
                    if modified is None:
                        continue
                    rel = (
                        view.compare(modified, keep)
                        if modified_role == "loser"
                        else view.compare(keep, modified)
                    )
                    if rel == UNORDERED:
                        undecided.append(
                            {
                                "pair": [f, g],
                                "event": event_key,
                                "consequence": h,
                                "modified": modified,
                            }
                        )
                        continue
                    decided += 1
                    if rel in (GREATER, EQUIVALENT):
                        is_constant = len(set(profile_t)) == 1
                        kind = "reversal" if rel == GREATER else "collapse"
                        note = (
                            f"modifying {target} to pay {h!r} on {event.describe()} "
                            f"{'reverses' if rel == GREATER else 'flattens'} the "
                            f"strict preference {f} < {g}"
                        )
                        if is_constant:
                            note += "; the modification creates a sure act"
                        witnesses.append(
                            Witness.build(
                                kind,
                                {
                                    "pair": [f, g],
                                    "event": event_key,
                                    "consequence": h,
                                    "modified_act": modified,
                                    "modified_role": modified_role,
                                    "relation": rel,
                                    "creates_sure_act": is_constant,
                                    "event_mass": str(probability.of(event.members)),
                                },
                                note=note,
                            )
                        )
    return build_report(P6_AUDIT, witnesses, decided=decided, undecided=undecided)


# ---------------------------------------------------------------------------
# Derived event order from betting preferences
# ---------------------------------------------------------------------------


def derived_event_order(problem: DecisionProblem) -> EventOrder:
    """Read off event comparisons from bets at a common payoff level.

    Whenever two declared acts are bets with the same winning and losing
    payoffs (winning strictly preferred) on events A and B, a declared
    ordering between the acts is an ordering between A and B.
    """
    view = PreferenceView(problem)
    table = _bet_table(problem, view)
    judgments: list[OrderJudgment] = []
    seen: set[tuple[frozenset, frozenset, str]] = set()
    for level in sorted(table):
        bets = table[level]
        for a_members, b_members in itertools.combinations(sorted(bets, key=sorted), 2):
            rel = view.compare(bets[a_members], bets[b_members])
            if rel == LESS:
                entry = (a_members, b_members, "<")
            elif rel == GREATER:
                entry = (b_members, a_members, "<")
            elif rel == EQUIVALENT:
                entry = (a_members, b_members, "~")
            else:
                continue
            if entry in seen:
                continue
            seen.add(entry)
            judgments.append(OrderJudgment(entry[0], entry[1], entry[2]))
    return EventOrder(tuple(problem.states.labels), tuple(judgments))


# ---------------------------------------------------------------------------
# Batch runner and witness re-checking
# ---------------------------------------------------------------------------


def check_all(problem: DecisionProblem) -> list[ViolationReport]:
    return [
        check_p1_completeness(problem),
        check_p1_transitivity(problem),
        check_p2(problem),
        check_p3(problem),
        check_p4(problem),
        check_p5(problem),
        check_p7(problem),
    ]


def recheck_witness(
    problem: DecisionProblem,
    report_axiom: str,
    witness: Witness,
    probability: Optional[ProbabilityMeasure] = None,
) -> bool:
    """Re-derive a witness from the problem it was reported against."""
    view = PreferenceView(problem)
    kind = witness.kind
    if kind == "incomplete-pair":
        return view.compare(witness.get("left"), witness.get("right")) == UNORDERED
    if kind == "strict-cycle":
        cycle = list(witness.get("cycle"))
        if len(cycle) < 2 or cycle[0] != cycle[-1]:
            return False
        declared_strict = {
            (j.left, j.right) for j in problem.preferences if j.rel == "<"
        }
        if (cycle[0], cycle[1]) not in declared_strict:
            return False
        return all(
            view._order.leq(a, b) for a, b in zip(cycle, cycle[1:])
        )
    if kind == "sure-thing-violation":
        f, g, f2, g2 = witness.get("acts")
        members = frozenset(witness.get("event"))
        event = Event(members)
        from .problem import agree_on

        ebar = event.complement(problem.states)
        conditions = (
            agree_on(problem.act(f), problem.act(g), ebar)
            and agree_on(problem.act(f2), problem.act(g2), ebar)
            and agree_on(problem.act(f), problem.act(f2), event)
            and agree_on(problem.act(g), problem.act(g2), event)
        )
        return (
            conditions
            and view.compare(f, g) in (LESS, EQUIVALENT)
            and view.compare(f2, g2) == GREATER
        )
    if kind == "state-dependence":
        c1, c2 = witness.get("consequences")
        event = Event(frozenset(witness.get("event")))
        unconditional = view.compare(view.constant_name(c1), view.constant_name(c2))
        conditional = conditional_preference(
            problem, view.constant_name(c1), view.constant_name(c2), event, view
        )
        return (
            unconditional == witness.get("unconditional")
            and conditional.relation == witness.get("conditional")
            and conditional.relation != unconditional
        )
    if kind == "payoff-dependent-betting":
        f_a, f_b, g_a, g_b = witness.get("acts")
        return view.compare(f_a, f_b) in (LESS, EQUIVALENT) and view.compare(
            g_a, g_b
        ) == GREATER
    if kind == "all-indifferent":
        names = list(witness.get("acts"))
        return all(
            view.compare(a, b) in (EQUIVALENT, UNORDERED)
            for a, b in itertools.combinations(names, 2)
        ) and len(problem.preferences) > 0
    if kind == "dominance-violation":
        f, g = witness.get("acts")
        event = Event(frozenset(witness.get("event")))
        direction = witness.get("direction")
        g_profile = view.profile(g)
        rels = []
        for s in _event_states(event, problem.states):
            label = g_profile[problem.states.index(s)]
            comparison = conditional_preference(
                problem, f, view.constant_name(label), event, view
            )
            rels.append(comparison.relation if comparison.decided else UNORDERED)
        if direction == "below":
            premise = all(r in (LESS, EQUIVALENT) for r in rels)
            bad = GREATER
        else:
            premise = all(r in (GREATER, EQUIVALENT) for r in rels)
            bad = LESS
        conditional = conditional_preference(problem, f, g, event, view)
        return premise and conditional.relation == bad
    if kind in ("reversal", "collapse"):
        f, g = witness.get("pair")
        event = Event(frozenset(witness.get("event")))
        modified = witness.get("modified_act")
        role = witness.get("modified_role")
        if view.compare(f, g) != LESS:
            return False
        if probability is not None and probability.of(event.members) > Fraction(1, 20):
            return False
        rel = (
            view.compare(modified, g) if role == "loser" else view.compare(f, modified)
        )
        return rel == (GREATER if kind == "reversal" else EQUIVALENT)
    raise ValueError(f"unknown witness kind {kind!r}")
