"""Betting prices, Dutch-Book search, and the coherence test.

An agent posts prices for $1 bets on events.  An adversary may take any
stake vector the offers permit; the stake on an offer is signed, positive
when the adversary buys the bet from the agent.  ``dutch_book_search``
maximizes the adversary's worst-state profit with an exact LP and reports a
book exactly when that optimum is positive.  ``coherence_check`` asks the
dual question: is there a probability measure reproducing the prices?  The
two answers disagree on no input; that equivalence is what makes posted
prices testable.  Money is treated linearly throughout: stakes are small
enough that the dollar is the utility unit.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .problem import Event, ProblemFormatError, StateSpace
from .qualitative import ProbabilityMeasure
from .rational import format_rational, parse_rational
from .simplex import LinearProgram, OPTIMAL

BUY = "buy"
SELL = "sell"


@dataclass(frozen=True)
class BetOffer:
    """A posted price for a $1 bet on an event.

    ``price`` is dollars per winning dollar, in [0, 1].  ``bound`` caps the
    absolute stake the agent will accept on this offer.  A two-sided offer
    lets the adversary pick either role; a one-sided offer fixes the
    agent's role (side SELL: the agent only sells the bet, side BUY: the
    agent only buys it).
    """

    event: Event
    price: Fraction
    bound: Fraction
    two_sided: bool = True
    side: Optional[str] = None

    @staticmethod
    def build(
        event,
        price,
        bound,
        two_sided: bool = True,
        side: Optional[str] = None,
    ) -> "BetOffer":
        if not isinstance(event, Event):
            event = Event.of(event)
        return BetOffer(event, parse_rational(price), parse_rational(bound), two_sided, side)

    def __post_init__(self):
        if not 0 <= self.price <= 1:
            raise ValueError(f"price {self.price} outside [0, 1]")
        if self.bound <= 0:
            raise ValueError(f"stake bound {self.bound} must be positive")
        if self.two_sided:
            if self.side is not None:
                raise ValueError("a two-sided offer has no fixed side")
        elif self.side not in (BUY, SELL):
            raise ValueError(f"one-sided offer needs side {BUY!r} or {SELL!r}")

    def stake_range(self) -> tuple[Fraction, Fraction]:
        """Permitted adversary stakes (positive = buy from the agent)."""
        if self.two_sided:
            return (-self.bound, self.bound)
        if self.side == SELL:
            return (Fraction(0), self.bound)
        return (-self.bound, Fraction(0))

    def describe(self) -> str:
        sided = "two-sided" if self.two_sided else f"{self.side}-only"
        return (
            f"{self.event.describe()} at {format_rational(self.price)}"
            f" (bound {format_rational(self.bound)}, {sided})"
        )


@dataclass(frozen=True)
class PriceSystem:
    """All offers one agent posts over a single state space."""

    states: StateSpace
    offers: tuple[BetOffer, ...]

    @staticmethod
    def build(states, offers: Sequence[BetOffer]) -> "PriceSystem":
        if not isinstance(states, StateSpace):
            states = StateSpace(tuple(states))
        return PriceSystem(states, tuple(offers))

    def __post_init__(self):
        ground = frozenset(self.states.labels)
        for offer in self.offers:
            if not offer.event.members <= ground:
                raise ValueError(
                    f"event {offer.event.describe()} mentions states outside the space"
                )

    def scaled(self, factor: Fraction) -> "PriceSystem":
        factor = parse_rational(factor)
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        return PriceSystem(
            self.states,
            tuple(
                BetOffer(o.event, o.price, o.bound * factor, o.two_sided, o.side)
                for o in self.offers
            ),
        )

    def to_document(self) -> dict:
        doc_offers = []
        for o in self.offers:
            entry = {
                "event": o.event.sorted_members(),
                "price": format_rational(o.price),
                "bound": format_rational(o.bound),
                "two_sided": o.two_sided,
            }
            if not o.two_sided:
                entry["side"] = o.side
            doc_offers.append(entry)
        return {"states": list(self.states.labels), "offers": doc_offers}

    @staticmethod
    def from_document(doc: Mapping) -> "PriceSystem":
        if "states" not in doc or "offers" not in doc:
            raise ProblemFormatError("price system needs 'states' and 'offers'")
        offers = []
        for i, entry in enumerate(doc["offers"]):
            extra = set(entry) - {"event", "price", "bound", "two_sided", "side"}
            if extra:
                raise ProblemFormatError(
                    f"unknown offer keys {sorted(extra)}", location=f"offers[{i}]"
                )
            try:
                offers.append(
                    BetOffer.build(
                        frozenset(entry["event"]),
                        entry["price"],
                        entry["bound"],
                        entry.get("two_sided", True),
                        entry.get("side"),
                    )
                )
            except (KeyError, ValueError) as exc:
                raise ProblemFormatError(str(exc), location=f"offers[{i}]") from exc
        return PriceSystem.build(doc["states"], offers)


def fair_price(p) -> Fraction:
    """Price per unit payoff for a bet judged to win with probability p."""
    p = parse_rational(p)
    if not 0 <= p <= 1:
        raise ValueError(f"probability {p} outside [0, 1]")
    return p


def exposure(p, q) -> Fraction:
    """Worst-case loss per unit payoff when betting at q against belief p."""
    return abs(parse_rational(p) - parse_rational(q))


@dataclass(frozen=True)
class DutchBook:
    """A stake vector with positive profit in every state."""

    system: PriceSystem
    stakes: tuple[Fraction, ...]
    guaranteed: Fraction
    per_state: tuple[tuple[str, Fraction], ...]

    @property
    def profits(self) -> dict[str, Fraction]:
        return dict(self.per_state)

    def outlay(self) -> Fraction:
        """Net premium the adversary pays up front (negative = collects)."""
        return sum(
            (x * o.price for x, o in zip(self.stakes, self.system.offers)),
            Fraction(0),
        )

    def ledger(self) -> list[str]:
        lines = []
        for x, offer in zip(self.stakes, self.system.offers):
            if not x:
                continue
            action = "buy" if x > 0 else "sell"
            lines.append(
                f"{action} {format_rational(abs(x))} of {offer.event.describe()}"
                f" at {format_rational(offer.price)}"
                f" (premium {format_rational(abs(x) * offer.price)})"
            )
        for state, profit in self.per_state:
            lines.append(f"if {state}: profit {format_rational(profit)}")
        lines.append(f"guaranteed profit {format_rational(self.guaranteed)}")
        return lines

    def to_document(self) -> dict:
        return {
            "stakes": [format_rational(x) for x in self.stakes],
            "guaranteed": format_rational(self.guaranteed),
            "per_state": {s: format_rational(v) for s, v in self.per_state},
        }


def _state_profit(system: PriceSystem, stakes: Sequence[Fraction], state: str) -> Fraction:
    total = Fraction(0)
    for x, offer in zip(stakes, system.offers):
        indicator = Fraction(1) if state in offer.event.members else Fraction(0)
        total += x * (indicator - offer.price)
    return total


def evaluate_book(system: PriceSystem, stakes: Sequence[Fraction]) -> dict[str, Fraction]:
    """Per-state adversary profit for an arbitrary stake vector."""
    stakes = [parse_rational(x) for x in stakes]
    if len(stakes) != len(system.offers):
        raise ValueError("one stake per offer required")
    for x, offer in zip(stakes, system.offers):
        lo, hi = offer.stake_range()
        if not lo <= x <= hi:
            raise ValueError(
                f"stake {x} outside the permitted range [{lo}, {hi}] for "
                f"{offer.describe()}"
            )
    return {s: _state_profit(system, stakes, s) for s in system.states.labels}


def dutch_book_search(system: PriceSystem) -> Optional[DutchBook]:
    """Stake vector with positive profit in every state, if one exists.

    Maximizes the minimum per-state profit subject to the stake bounds; a
    book exists exactly when the optimum is positive.
    """
    if not system.offers:
        return None
    lp = LinearProgram()
    for i, offer in enumerate(system.offers):
        lo, hi = offer.stake_range()
        lp.variable(f"x:{i}", lower=lo, upper=hi)
    lp.variable("floor", free=True)
    for state in system.states.labels:
        coeffs: dict[str, Fraction] = {"floor": Fraction(-1)}
        for i, offer in enumerate(system.offers):
            indicator = Fraction(1) if state in offer.event.members else Fraction(0)
            gap = indicator - offer.price
            if gap:
                coeffs[f"x:{i}"] = gap
        lp.constrain(coeffs, ">=", Fraction(0))
    result = lp.maximize({"floor": Fraction(1)})
    if result.status != OPTIMAL or result.values["floor"] <= 0:
        return None
    stakes = tuple(result.values[f"x:{i}"] for i in range(len(system.offers)))
    per_state = tuple(
        (s, _state_profit(system, stakes, s)) for s in system.states.labels
    )
    return DutchBook(system, stakes, min(v for _, v in per_state), per_state)


@dataclass(frozen=True)
class IncoherenceCertificate:
    """No measure reproduces the prices; carries an exploiting book."""

    reason: str
    book: Optional[DutchBook]


def coherence_check(system: PriceSystem) -> Union[ProbabilityMeasure, IncoherenceCertificate]:
    """Measure reproducing the prices, or a certificate that none exists.

    Two-sided offers pin P(event) to the price; an offer where the agent
    only sells demands P(event) ≤ price, only buys demands P(event) ≥
    price.  When infeasible the certificate carries the Dutch Book that the
    mispricing funds.
    """
    lp = LinearProgram()
    for s in system.states.labels:
        lp.variable(f"p:{s}")
    lp.constrain({f"p:{s}": Fraction(1) for s in system.states.labels}, "=", Fraction(1))
    for offer in system.offers:
        coeffs = {f"p:{s}": Fraction(1) for s in offer.event.members}
        if offer.two_sided:
            sense = "="
        elif offer.side == SELL:
            sense = "<="
        else:
            sense = ">="
        if coeffs:
            lp.constrain(coeffs, sense, offer.price)
        else:
            # Empty event: P(∅)=0 always, so the offer itself decides.
            empty_ok = (
                offer.price == 0
                if offer.two_sided
                else (offer.price >= 0 if offer.side == SELL else offer.price <= 0)
            )
            if not empty_ok:
                return IncoherenceCertificate(
                    reason=f"nonzero price on the empty event: {offer.describe()}",
                    book=dutch_book_search(system),
                )
    result = lp.maximize({})
    if result.status == OPTIMAL:
        return ProbabilityMeasure(
            tuple(system.states.labels),
            tuple((s, result.values[f"p:{s}"]) for s in system.states.labels),
        )
    return IncoherenceCertificate(
        reason="no probability measure reproduces the posted prices",
        book=dutch_book_search(system),
    )


def two_agent_dutch_book(price_a, price_b, stake) -> Optional[DutchBook]:
    """Book against two agents quoting different prices for the same event.

    Both agents trade either side of a $1 bet on the same two-state event
    at their own price, up to ``stake`` units.  When the prices differ the
    outside party buys from the cheaper agent and sells to the dearer one,
    collecting the spread no matter what happens; equal prices close the
    gap and the search reports none.
    """
    price_a = fair_price(price_a)
    price_b = fair_price(price_b)
    stake = parse_rational(stake)
    if stake <= 0:
        raise ValueError("stake must be positive")
    states = StateSpace(("event-occurs", "event-fails"))
    event = Event.of(("event-occurs",), name="the event")
    system = PriceSystem.build(
        states,
        (
            BetOffer(event, price_a, stake),
            BetOffer(event, price_b, stake),
        ),
    )
    return dutch_book_search(system)
