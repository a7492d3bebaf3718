"""Lottery scoring under expected utility and decision-weighted utility.

A lottery lists (probability, dollar payoff) branches; unlisted mass pays
0.  ``eu_score`` is the plain expectation of a utility of money.  The
weighted variant replaces each branch probability with a decision weight
before multiplying, which breaks the expectation format unless the weight
function is the identity; ``chance_dependent_utility`` rewrites the same
number as an expectation again, at the cost of making utility depend on
the chance of receiving the payoff.  The Allais and Ellsberg analyzers
turn stated binary choices into the inequalities they imply and flag the
choice patterns no single measure-and-utility pair can produce.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence, Union

from .qualitative import (
    AgreementFailure,
    EventOrder,
    OrderJudgment,
    ProbabilityMeasure,
)
from .rational import format_rational, parse_rational
from .simplex import LinearProgram, OPTIMAL

MoneyUtility = Callable[[Fraction], Fraction]


def linear_utility(amount: Fraction) -> Fraction:
    return amount


@dataclass(frozen=True)
class Lottery:
    """Finitely many chance branches; probability mass not listed pays 0."""

    branches: tuple[tuple[Fraction, Fraction], ...]
    name: str = ""

    @staticmethod
    def build(branches: Sequence[tuple], name: str = "") -> "Lottery":
        return Lottery(
            tuple((parse_rational(p), parse_rational(f)) for p, f in branches), name
        )

    def __post_init__(self):
        total = Fraction(0)
        for p, _ in self.branches:
            if p < 0:
                raise ValueError(f"negative branch probability {p}")
            total += p
        if total > 1:
            raise ValueError(f"branch probabilities sum to {total} > 1")

    @property
    def residual(self) -> Fraction:
        return 1 - sum((p for p, _ in self.branches), Fraction(0))


@dataclass(frozen=True)
class WeightFunction:
    """Decision weights from anchor points, linear between them.

    Anchors must include (0,0) and (1,1).  ``at_zero`` and ``at_one`` are
    the one-sided limits just inside the ends, so jumps at 0 and 1 are
    representable; between 0 and 1 the function interpolates through
    (0+, at_zero), the interior anchors, and (1-, at_one).
    """

    anchors: tuple[tuple[Fraction, Fraction], ...]
    at_zero: Fraction = Fraction(0)
    at_one: Fraction = Fraction(1)

    @staticmethod
    def build(anchors: Sequence[tuple], at_zero=0, at_one=1) -> "WeightFunction":
        return WeightFunction(
            tuple(sorted((parse_rational(p), parse_rational(v)) for p, v in anchors)),
            parse_rational(at_zero),
            parse_rational(at_one),
        )

    @staticmethod
    def identity() -> "WeightFunction":
        return WeightFunction(((Fraction(0), Fraction(0)), (Fraction(1), Fraction(1))))

    def __post_init__(self):
        points = list(self.anchors)
        if len(points) < 2 or points[0] != (0, 0) or points[-1] != (1, 1):
            raise ValueError("anchors must run from (0,0) to (1,1)")
        ps = [p for p, _ in points]
        if len(set(ps)) != len(ps):
            raise ValueError("duplicate anchor probabilities")
        nodes = self._nodes()
        for (p, v), (p2, v2) in zip(nodes, nodes[1:]):
            if v2 < v:
                raise ValueError(f"weights decrease between p={p} and p={p2}")
        for p, v in nodes:
            if not 0 <= v <= 1:
                raise ValueError(f"weight {v} at p={p} outside [0, 1]")

    def _nodes(self) -> list[tuple[Fraction, Fraction]]:
        """Interpolation nodes on (0,1): limits stand in for the endpoints."""
        interior = [(p, v) for p, v in self.anchors if 0 < p < 1]
        return [(Fraction(0), self.at_zero)] + interior + [(Fraction(1), self.at_one)]

    def __call__(self, p) -> Fraction:
        p = parse_rational(p)
        if not 0 <= p <= 1:
            raise ValueError(f"probability {p} outside [0, 1]")
        if p == 0:
            return Fraction(0)
        if p == 1:
            return Fraction(1)
        nodes = self._nodes()
        for (p1, v1), (p2, v2) in zip(nodes, nodes[1:]):
            if p1 <= p <= p2:
                if p == p1:
                    return v1
                if p == p2:
                    return v2
                return v1 + (v2 - v1) * (p - p1) / (p2 - p1)
        raise AssertionError("unreachable: nodes span (0,1)")

    def is_identity(self) -> bool:
        return all(p == v for p, v in self._nodes())


def eu_score(lottery: Lottery, utility: Optional[MoneyUtility] = None) -> Fraction:
    """Expected utility; the residual branch pays 0 and is included."""
    u = utility or linear_utility
    total = lottery.residual * u(Fraction(0))
    for p, payoff in lottery.branches:
        total += p * u(payoff)
    return total


def prospect_score(
    lottery: Lottery, utility: Optional[MoneyUtility], weights: WeightFunction
) -> Fraction:
    """Decision-weighted score Σ w(p)·u(payoff) over the nonzero payoffs.

    Requires the u(0)=0 gauge; without it, dropping the zero-payoff
    branches (and the residual) would change the number.
    """
    u = utility or linear_utility
    if u(Fraction(0)) != 0:
        raise ValueError("weighted scoring requires u(0) = 0")
    total = Fraction(0)
    for p, payoff in lottery.branches:
        if payoff == 0 or p == 0:
            continue
        total += weights(p) * u(payoff)
    return total


def chance_dependent_utility(
    p, payoff, utility: Optional[MoneyUtility], weights: WeightFunction
) -> Fraction:
    """w(p)·u(payoff)/p: the utility that restores the expectation format.

    Multiplying back by p and summing over branches reproduces
    :func:`prospect_score`, so a weighted scorer behaves like an expected-
    utility maximizer whose utility depends on the chance of the payoff.
    """
    p = parse_rational(p)
    if p <= 0:
        raise ValueError("chance-dependent utility needs a positive probability")
    u = utility or linear_utility
    return weights(p) * u(parse_rational(payoff)) / p


def subcertainty_check(weights: WeightFunction, p) -> bool:
    """True when w(p) + w(1-p) < 1 (strict) at interior p."""
    p = parse_rational(p)
    if not 0 < p < 1:
        raise ValueError("subcertainty is defined for interior probabilities only")
    return weights(p) + weights(1 - p) < 1


# ---------------------------------------------------------------------------
# The two classic choice problems.

TICKET_STATES = ("ticket-1", "tickets-2-11", "tickets-12-100")
TICKET_PROBS = {
    "ticket-1": Fraction(1, 100),
    "tickets-2-11": Fraction(1, 10),
    "tickets-12-100": Fraction(89, 100),
}


@dataclass(frozen=True)
class MoneyAct:
    """Dollar payoff per cell of a fixed partition (a bet on one draw)."""

    name: str
    states: tuple[str, ...]
    payoffs: tuple[Fraction, ...]

    @staticmethod
    def build(name: str, states: Sequence[str], payoffs: Sequence) -> "MoneyAct":
        return MoneyAct(name, tuple(states), tuple(parse_rational(x) for x in payoffs))

    def __post_init__(self):
        if len(self.states) != len(self.payoffs):
            raise ValueError("one payoff per state required")
        if len(set(self.states)) != len(self.states):
            raise ValueError("duplicate states")

    def payoff(self, state: str) -> Fraction:
        return self.payoffs[self.states.index(state)]

    def as_lottery(self, probabilities: Mapping[str, Fraction]) -> Lottery:
        """Chance distribution over payoffs: equal payoffs pool their mass."""
        pooled: dict[Fraction, Fraction] = {}
        for s, x in zip(self.states, self.payoffs):
            pooled[x] = pooled.get(x, Fraction(0)) + parse_rational(probabilities[s])
        branches = tuple((p, x) for x, p in pooled.items())
        return Lottery(branches, name=self.name)


def combine_simultaneous(bets: Sequence[MoneyAct], name: str = "") -> MoneyAct:
    """Statewise payoff sum of bets settled by one and the same draw."""
    if not bets:
        raise ValueError("nothing to combine")
    states = bets[0].states
    for bet in bets[1:]:
        if bet.states != states:
            raise ValueError(
                f"bet {bet.name!r} is over a different partition than {bets[0].name!r}"
            )
    totals = tuple(
        sum((bet.payoffs[i] for bet in bets), Fraction(0)) for i in range(len(states))
    )
    return MoneyAct(name or " + ".join(b.name for b in bets), states, totals)


def allais_acts() -> dict[str, MoneyAct]:
    """The four 100-ticket bets, payoffs in dollars."""
    k = Fraction(1000)
    return {
        "I": MoneyAct.build("I", TICKET_STATES, (500 * k, 500 * k, 500 * k)),
        "II": MoneyAct.build("II", TICKET_STATES, (0, 2500 * k, 500 * k)),
        "III": MoneyAct.build("III", TICKET_STATES, (500 * k, 500 * k, 0)),
        "IV": MoneyAct.build("IV", TICKET_STATES, (0, 2500 * k, 0)),
    }


def allais_lotteries() -> dict[str, Lottery]:
    return {name: act.as_lottery(TICKET_PROBS) for name, act in allais_acts().items()}


@dataclass(frozen=True)
class ImpliedInequality:
    """a·u(x) vs b·u(y), with the side the stated choice forces."""

    choice: str
    rejected: str
    left_coeff: Fraction
    left_payoff: Fraction
    right_coeff: Fraction
    right_payoff: Fraction
    left_value: Fraction
    right_value: Fraction

    @property
    def holds(self) -> bool:
        return self.left_value > self.right_value

    def describe(self) -> str:
        return (
            f"choosing {self.choice} over {self.rejected} requires "
            f"{format_rational(self.left_coeff)}*u({format_rational(self.left_payoff)})"
            f" > {format_rational(self.right_coeff)}*u({format_rational(self.right_payoff)})"
            f" (here {format_rational(self.left_value)} vs {format_rational(self.right_value)})"
        )


@dataclass(frozen=True)
class AllaisReport:
    choices: tuple[str, str]
    inequalities: tuple[ImpliedInequality, ...]
    consistent: bool
    contradiction: Optional[str]
    subcertainty_requirement: Optional[str]

    def to_document(self) -> dict:
        return {
            "choices": list(self.choices),
            "inequalities": [iq.describe() for iq in self.inequalities],
            "consistent": self.consistent,
            "contradiction": self.contradiction,
            "subcertainty_requirement": self.subcertainty_requirement,
        }


def allais_analysis(
    choices: Mapping[str, str], utility: Optional[MoneyUtility] = None
) -> AllaisReport:
    """Inequalities implied by the two stated choices, and their clash.

    The first situation offers I against II, the second III against IV.
    With u(0)=0 each choice pins the order of 11/100·u(500,000) against
    1/10·u(2,500,000); the mixed patterns pin it both ways at once, which
    no utility can do, so they are flagged as sure-thing violations.  The
    mixed pattern (I, IV) can still be scored consistently by weighting
    chances, but only if the weights satisfy w(89/100) + w(11/100) < 1;
    that requirement is reported alongside the flag.
    """
    u = utility or linear_utility
    if u(Fraction(0)) != 0:
        raise ValueError("the implied inequalities assume the u(0) = 0 gauge")
    s1 = choices.get("S1")
    s2 = choices.get("S2")
    if s1 not in ("I", "II") or s2 not in ("III", "IV"):
        raise ValueError("choices must give S1 in {I, II} and S2 in {III, IV}")
    sure = Fraction(500_000)
    big = Fraction(2_500_000)
    c_sure = Fraction(11, 100)
    c_big = Fraction(1, 10)
    lhs = c_sure * u(sure)
    rhs = c_big * u(big)

    def ineq(choice, rejected, wants_sure: bool) -> ImpliedInequality:
        if wants_sure:
            return ImpliedInequality(choice, rejected, c_sure, sure, c_big, big, lhs, rhs)
        return ImpliedInequality(choice, rejected, c_big, big, c_sure, sure, rhs, lhs)

    first = ineq(s1, "II" if s1 == "I" else "I", wants_sure=(s1 == "I"))
    second = ineq(s2, "IV" if s2 == "III" else "III", wants_sure=(s2 == "III"))
    consistent = (s1 == "I") == (s2 == "III")
    contradiction = None
    subcertainty_requirement = None
    if not consistent:
        a = f"{format_rational(c_sure)}*u({format_rational(sure)})"
        b = f"{format_rational(c_big)}*u({format_rational(big)})"
        if s1 == "I":
            contradiction = f"{a} > {b} > {a}"
        else:
            contradiction = f"{b} > {a} > {b}"
        subcertainty_requirement = "w(89/100) + w(11/100) < 1"
    return AllaisReport(
        (s1, s2), (first, second), consistent, contradiction, subcertainty_requirement
    )


def rationalizes_allais(
    weights: WeightFunction, utility: Optional[MoneyUtility] = None
) -> bool:
    """Do these decision weights score I above II and IV above III?"""
    u = utility or linear_utility
    bets = allais_lotteries()
    v = {name: prospect_score(lot, u, weights) for name, lot in bets.items()}
    return v["I"] > v["II"] and v["IV"] > v["III"]


ELLSBERG_STATES = ("red", "black", "yellow")
ELLSBERG_BETS = {
    "I": frozenset({"red"}),
    "II": frozenset({"black"}),
    "III": frozenset({"red", "yellow"}),
    "IV": frozenset({"black", "yellow"}),
}


@dataclass(frozen=True)
class EllsbergReport:
    choices: tuple[str, str]
    pattern: str
    event_order: EventOrder
    agreement: Union[ProbabilityMeasure, AgreementFailure]

    @property
    def consistent(self) -> bool:
        return isinstance(self.agreement, ProbabilityMeasure)

    def to_document(self) -> dict:
        doc = {
            "choices": list(self.choices),
            "pattern": self.pattern,
            "event_order": [j.describe() for j in self.event_order.judgments],
            "consistent": self.consistent,
        }
        if isinstance(self.agreement, ProbabilityMeasure):
            doc["measure"] = {
                s: format_rational(m) for s, m in self.agreement.masses.items()
            }
        else:
            doc["failure"] = self.agreement.reason
        return doc


def ellsberg_analysis(choices: Mapping[str, str]) -> EllsbergReport:
    """Event order implied by the two urn choices, tested against P(red)=1/3.

    The urn holds 30 red balls and 60 of unknown black/yellow split.  Bet I
    pays on red, II on black, III on red-or-yellow, IV on black-or-yellow.
    Each choice says its winning event is the more probable one; the
    resulting order is fed to an LP that also pins P(red) = 1/3 (the known
    composition).  The two mixed patterns leave no agreeing measure: one
    subtracts the shared yellow mass from each side of an inequality and
    flips it, which additivity forbids.
    """
    s1 = choices.get("S1")
    s2 = choices.get("S2")
    if s1 not in ("I", "II") or s2 not in ("III", "IV"):
        raise ValueError("choices must give S1 in {I, II} and S2 in {III, IV}")
    loser1 = "II" if s1 == "I" else "I"
    loser2 = "IV" if s2 == "III" else "III"
    judgments = [
        OrderJudgment(ELLSBERG_BETS[loser1], ELLSBERG_BETS[s1], "<"),
        OrderJudgment(ELLSBERG_BETS[loser2], ELLSBERG_BETS[s2], "<"),
    ]
    order = EventOrder(tuple(ELLSBERG_STATES), tuple(judgments))
    if (s1, s2) == ("I", "IV"):
        pattern = "ambiguity-averse"
    elif (s1, s2) == ("II", "III"):
        pattern = "ambiguity-seeking"
    else:
        pattern = "consistent"

    lp = LinearProgram()
    for s in ELLSBERG_STATES:
        lp.variable(f"p:{s}")
    lp.variable("delta", upper=Fraction(1))
    lp.constrain({f"p:{s}": Fraction(1) for s in ELLSBERG_STATES}, "=", Fraction(1))
    lp.constrain({"p:red": Fraction(1)}, "=", Fraction(1, 3))
    for j in judgments:
        coeffs: dict[str, Fraction] = {}
        for s in j.right:
            coeffs[f"p:{s}"] = coeffs.get(f"p:{s}", Fraction(0)) + 1
        for s in j.left:
            coeffs[f"p:{s}"] = coeffs.get(f"p:{s}", Fraction(0)) - 1
        coeffs = {k: v for k, v in coeffs.items() if v}
        coeffs["delta"] = Fraction(-1)
        lp.constrain(coeffs, ">=", Fraction(0))
    result = lp.maximize({"delta": Fraction(1)})
    if result.status == OPTIMAL and result.values["delta"] > 0:
        agreement: Union[ProbabilityMeasure, AgreementFailure] = ProbabilityMeasure(
            ELLSBERG_STATES,
            tuple((s, result.values[f"p:{s}"]) for s in ELLSBERG_STATES),
        )
    else:
        agreement = AgreementFailure(
            reason=(
                "no measure with P(red) = 1/3 ranks the chosen events above "
                "the rejected ones"
            ),
            margin=result.values.get("delta") if result.status == OPTIMAL else None,
        )
    return EllsbergReport((s1, s2), pattern, order, agreement)
