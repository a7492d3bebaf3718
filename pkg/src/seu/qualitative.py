"""Comparative probability: event orders, exact measures, and agreement.

An :class:`EventOrder` is comparative data over events of a finite state
space ("B is at most as probable as C"), with strict, equivalent, and weak
judgments.  :func:`check_qp_axioms` looks for contradictions of the three
qualitative-probability conditions; :func:`find_agreeing_measure` decides,
by exact linear programming, whether a finitely additive probability measure
reproduces the order, with strict judgments held strictly.  Passing the
axiom check is necessary but not sufficient for such a measure to exist, so
the two functions are deliberately independent routes.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from .ordering import EQUIVALENT, GREATER, LESS, UNORDERED, Preorder
from .rational import format_rational, parse_rational
from .reports import Witness, ViolationReport, build_report
from .simplex import LinearProgram

_ORDER_RELS = ("<", "~", "<=")

_UNDECIDED_CAP = 50


@dataclass(frozen=True)
class OrderJudgment:
    left: frozenset
    right: frozenset
    rel: str

    def __post_init__(self):
        if self.rel not in _ORDER_RELS:
            raise ValueError(f"unknown event relation {self.rel!r}")
        object.__setattr__(self, "left", frozenset(self.left))
        object.__setattr__(self, "right", frozenset(self.right))

    def describe(self) -> str:
        sym = {"<": "≺", "~": "≈", "<=": "⪯"}[self.rel]
        left = "{" + ",".join(sorted(self.left)) + "}"
        right = "{" + ",".join(sorted(self.right)) + "}"
        return f"{left} {sym} {right}"


@dataclass(frozen=True)
class EventOrder:
    """Judgments comparing subsets of a finite state space."""

    states: tuple[str, ...]
    judgments: tuple[OrderJudgment, ...]

    def __post_init__(self):
        known = set(self.states)
        if len(known) != len(self.states):
            raise ValueError("duplicate state labels")
        for j in self.judgments:
            stray = (j.left | j.right) - known
            if stray:
                raise ValueError(f"judgment references unknown states {sorted(stray)}")

    @staticmethod
    def build(
        states: Sequence[str],
        judgments: Iterable[tuple[Iterable[str], Iterable[str], str]],
    ) -> "EventOrder":
        return EventOrder(
            tuple(states),
            tuple(OrderJudgment(frozenset(l), frozenset(r), rel) for l, r, rel in judgments),
        )

    def universe(self) -> list[frozenset]:
        """Declared events plus the empty and sure events, deterministically ordered."""
        seen = {frozenset(), frozenset(self.states)}
        for j in self.judgments:
            seen.add(j.left)
            seen.add(j.right)
        return sorted(seen, key=lambda e: (len(e), tuple(sorted(e))))

    def preorder(self) -> Preorder:
        return Preorder(
            self.universe(),
            [(j.left, j.right, j.rel) for j in self.judgments],
            closed=True,
        )


def event_order_from_document(states: Sequence[str], entries: Iterable[Mapping]) -> EventOrder:
    judgments = []
    for entry in entries:
        judgments.append((entry["left"], entry["right"], entry["rel"]))
    return EventOrder.build(states, judgments)


# ---------------------------------------------------------------------------
# Probability measures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProbabilityMeasure:
    """Exact finitely additive probability on a finite state space."""

    states: tuple[str, ...]
    _masses: tuple[tuple[str, Fraction], ...]

    @staticmethod
    def build(masses: Mapping[str, Union[Fraction, int, str]]) -> "ProbabilityMeasure":
        states = tuple(masses)
        return ProbabilityMeasure(
            states, tuple((s, parse_rational(v)) for s, v in masses.items())
        )

    @staticmethod
    def uniform(states: Sequence[str]) -> "ProbabilityMeasure":
        n = len(states)
        return ProbabilityMeasure(tuple(states), tuple((s, Fraction(1, n)) for s in states))

    def __post_init__(self):
        declared = [s for s, _ in self._masses]
        if sorted(declared) != sorted(self.states) or len(set(declared)) != len(declared):
            raise ValueError("masses must cover each state exactly once")
        total = Fraction(0)
        for s, m in self._masses:
            if m < 0:
                raise ValueError(f"negative mass {m} on state {s!r}")
            total += m
        if total != 1:
            raise ValueError(f"masses sum to {total}, not 1")

    def mass(self, state: str) -> Fraction:
        for s, m in self._masses:
            if s == state:
                return m
        raise KeyError(state)

    def of(self, members: Iterable[str]) -> Fraction:
        wanted = set(members)
        stray = wanted - set(self.states)
        if stray:
            raise ValueError(f"unknown states {sorted(stray)}")
        return sum((m for s, m in self._masses if s in wanted), Fraction(0))

    @property
    def masses(self) -> dict[str, Fraction]:
        return dict(self._masses)

    def induced_order(self, events: Optional[Sequence[Iterable[str]]] = None) -> EventOrder:
        """Total order on the given events (default: all subsets) by exact mass."""
        if events is None:
            if len(self.states) > 12:
                raise ValueError("refusing to enumerate more than 2**12 events")
            events = [
                frozenset(c)
                for r in range(len(self.states) + 1)
                for c in itertools.combinations(self.states, r)
            ]
        pool = [frozenset(e) for e in events]
        judgments = []
        for a, b in itertools.combinations(pool, 2):
            pa, pb = self.of(a), self.of(b)
            if pa < pb:
                judgments.append((a, b, "<"))
            elif pb < pa:
                judgments.append((b, a, "<"))
            else:
                judgments.append((a, b, "~"))
        return EventOrder.build(self.states, judgments)

    def to_document(self) -> dict:
        return {
            "states": list(self.states),
            "masses": {s: format_rational(m) for s, m in self._masses},
        }

    @staticmethod
    def from_document(doc: Mapping) -> "ProbabilityMeasure":
        masses = {s: parse_rational(v) for s, v in doc["masses"].items()}
        order = doc.get("states", list(masses))
        return ProbabilityMeasure(
            tuple(order), tuple((s, masses[s]) for s in order)
        )


# ---------------------------------------------------------------------------
# Qualitative-probability conditions
# ---------------------------------------------------------------------------

QP = "qualitative-probability"


def check_qp_axioms(order: EventOrder) -> ViolationReport:
    """Look for contradictions of the qualitative-probability conditions.

    (1) the order is a weak order: declared strict judgments must not be
        contradicted by the closure (completeness of partial data is
        vacuous, so only cycles are witnessed);
    (2) for disjoint D, the orderings of (B, C) and of (B with D, C with D)
        must agree wherever both are decided;
    (3) no event sits strictly below the empty event.
    """
    pre = order.preorder()
    universe = order.universe()
    present = set(universe)
    empty = frozenset()
    witnesses: list[Witness] = []
    undecided: list[dict] = []
    skipped = 0
    decided = len(order.judgments)

    for cycle in pre.strict_violations():
        witnesses.append(
            Witness.build(
                "strict-cycle",
                {"cycle": [sorted(e) for e in cycle]},
                note="a strict event judgment is contradicted by the closure of the others",
            )
        )

    for b, c in itertools.combinations(universe, 2):
        base = pre.compare(b, c)
        if base == UNORDERED:
            continue
        for d in universe:
            if d & (b | c):
                continue
            bd, cd = b | d, c | d
            if (bd, cd) == (b, c):
                continue
            if bd not in present or cd not in present:
                skipped += 1
                if len(undecided) < _UNDECIDED_CAP:
                    undecided.append(
                        {"pair": [sorted(b), sorted(c)], "disjoint": sorted(d)}
                    )
                continue
            shifted = pre.compare(bd, cd)
            if shifted == UNORDERED:
                skipped += 1
                if len(undecided) < _UNDECIDED_CAP:
                    undecided.append(
                        {"pair": [sorted(b), sorted(c)], "disjoint": sorted(d)}
                    )
                continue
            decided += 1
            if shifted != base:
                witnesses.append(
                    Witness.build(
                        "additivity-mismatch",
                        {
                            "pair": [sorted(b), sorted(c)],
                            "disjoint": sorted(d),
                            "base": base,
                            "shifted": shifted,
                        },
                        note=(
                            "adjoining a disjoint event changes the comparison "
                            f"from {base} to {shifted}"
                        ),
                    )
                )

    for b in universe:
        if b == empty:
            continue
        rel = pre.compare(b, empty)
        if rel == UNORDERED:
            skipped += 1
            continue
        decided += 1
        if rel == LESS:
            witnesses.append(
                Witness.build(
                    "below-empty",
                    {"event": sorted(b)},
                    note="an event is judged strictly less probable than the empty event",
                )
            )

    detail = {"undecided_total": skipped} if skipped else None
    return build_report(QP, witnesses, decided=decided, undecided=undecided, detail=detail)


# ---------------------------------------------------------------------------
# Agreement by exact linear programming
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AgreementFailure:
    """Evidence that no measure agrees with the order.

    ``almost`` is a measure satisfying every judgment weakly when one
    exists: the order then "almost agrees" in the sense that only the
    strictness of some judgments fails.  ``tight`` lists the strict
    judgments that the almost-agreeing measure satisfies with equality.
    """

    reason: str
    margin: Optional[Fraction] = None
    almost: Optional["ProbabilityMeasure"] = None
    tight: tuple[OrderJudgment, ...] = ()

    @property
    def almost_agrees(self) -> bool:
        return self.almost is not None


def find_agreeing_measure(
    order: EventOrder, strict: bool = True
) -> Union[ProbabilityMeasure, AgreementFailure]:
    """Find an exact measure reproducing the order, or explain the failure.

    Strict judgments are enforced with a shared positive margin that the LP
    maximizes; agreement holds iff the optimal margin is positive.  With
    ``strict=False`` strict judgments are only enforced weakly (the
    "almost agrees" reading).
    """
    if not order.judgments:
        return ProbabilityMeasure.uniform(order.states)
    lp = LinearProgram()
    for s in order.states:
        lp.variable(f"p:{s}")
    lp.variable("delta", upper=Fraction(1))
    lp.constrain({f"p:{s}": Fraction(1) for s in order.states}, "=", Fraction(1))
    for j in order.judgments:
        coeffs: dict[str, Fraction] = {}
        for s in j.right - j.left:
            coeffs[f"p:{s}"] = Fraction(1)
        for s in j.left - j.right:
            coeffs[f"p:{s}"] = Fraction(-1)
        if j.rel == "~":
            if coeffs:
                lp.constrain(coeffs, "=", Fraction(0))
            continue
        if j.rel == "<" and strict:
            coeffs = dict(coeffs)
            coeffs["delta"] = Fraction(-1)
            lp.constrain(coeffs, ">=", Fraction(0))
        else:
            if coeffs:
                lp.constrain(coeffs, ">=", Fraction(0))
            elif j.rel == "<":
                # Strict judgment between events of identical indicator sums
                # (e.g. B < B) can never hold strictly.
                return AgreementFailure(
                    reason=f"judgment {j.describe()} compares an event against itself"
                )
    result = lp.maximize({"delta": Fraction(1)})
    if result.status != "optimal":
        return AgreementFailure(reason="no measure satisfies even the weak versions")
    measure = ProbabilityMeasure(
        order.states, tuple((s, result.values[f"p:{s}"]) for s in order.states)
    )
    if not strict or result.values["delta"] > 0:
        if strict:
            return measure
        failures = measure_agreement_failures(measure, order, strict=False)
        if failures:  # pragma: no cover - the LP enforces weak constraints
            return AgreementFailure(reason="internal: weak fit failed recheck")
        return measure
    tight = tuple(
        j
        for j in order.judgments
        if j.rel == "<" and measure.of(j.left) == measure.of(j.right)
    )
    return AgreementFailure(
        reason="strict judgments cannot all hold with positive margin",
        margin=result.values["delta"],
        almost=measure,
        tight=tight,
    )


def measure_agreement_failures(
    measure: ProbabilityMeasure, order: EventOrder, strict: bool = True
) -> list[OrderJudgment]:
    """Judgments the measure fails to reproduce (strictness included by default)."""
    failures = []
    for j in order.judgments:
        left, right = measure.of(j.left), measure.of(j.right)
        if j.rel == "~":
            ok = left == right
        elif j.rel == "<" and strict:
            ok = left < right
        else:
            ok = left <= right
        if not ok:
            failures.append(j)
    return failures


# ---------------------------------------------------------------------------
# Conditioning
# ---------------------------------------------------------------------------


def conditional_order(order: EventOrder, given: Union[frozenset, Iterable[str]]) -> EventOrder:
    """Order events by their traces on ``given``: B is below C iff B∩D is below C∩D.

    Raises if the conditioning event is judged equivalent to the empty
    event.  Pairs whose traces are not comparable in the data are simply
    absent from the result.
    """
    d = frozenset(given)
    stray = d - set(order.states)
    if stray:
        raise ValueError(f"conditioning event references unknown states {sorted(stray)}")
    pre = order.preorder()
    present = set(order.universe())
    empty = frozenset()
    if d in present and pre.compare(d, empty) == EQUIVALENT:
        raise ValueError("conditioning event is null in the order")
    judgments = []
    for b, c in itertools.combinations(order.universe(), 2):
        bd, cd = b & d, c & d
        if bd not in present or cd not in present:
            continue
        rel = pre.compare(bd, cd)
        if rel == LESS:
            judgments.append((b, c, "<"))
        elif rel == GREATER:
            judgments.append((c, b, "<"))
        elif rel == EQUIVALENT:
            judgments.append((b, c, "~"))
    return EventOrder.build(order.states, judgments)
