import json
from fractions import Fraction
from importlib.resources import files

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seu.coherence import (
    BUY,
    SELL,
    BetOffer,
    DutchBook,
    IncoherenceCertificate,
    PriceSystem,
    coherence_check,
    dutch_book_search,
    evaluate_book,
    exposure,
    fair_price,
    two_agent_dutch_book,
)
from seu.problem import Event, ProblemFormatError
from seu.qualitative import ProbabilityMeasure


def ellsberg_system() -> PriceSystem:
    doc = json.loads(files("seu").joinpath("corpus", "ellsberg.json").read_text())
    return PriceSystem.from_document(doc)


class TestBetOffer:
    def test_build_coerces_members_and_numbers(self):
        offer = BetOffer.build({"a"}, "1/3", 2)
        assert offer.event == Event.of({"a"})
        assert offer.price == Fraction(1, 3)
        assert offer.bound == Fraction(2)

    def test_price_outside_unit_interval_rejected(self):
        with pytest.raises(ValueError, match="outside"):
            BetOffer.build({"a"}, "3/2", 1)

    def test_bound_must_be_positive(self):
        with pytest.raises(ValueError, match="positive"):
            BetOffer.build({"a"}, "1/2", 0)

    def test_two_sided_offer_has_no_side(self):
        with pytest.raises(ValueError, match="no fixed side"):
            BetOffer.build({"a"}, "1/2", 1, two_sided=True, side=SELL)

    def test_one_sided_offer_needs_a_valid_side(self):
        with pytest.raises(ValueError, match="side"):
            BetOffer.build({"a"}, "1/2", 1, two_sided=False, side="short")

    def test_stake_ranges(self):
        two = BetOffer.build({"a"}, "1/2", 3)
        sell = BetOffer.build({"a"}, "1/2", 3, two_sided=False, side=SELL)
        buy = BetOffer.build({"a"}, "1/2", 3, two_sided=False, side=BUY)
        assert two.stake_range() == (Fraction(-3), Fraction(3))
        assert sell.stake_range() == (Fraction(0), Fraction(3))
        assert buy.stake_range() == (Fraction(-3), Fraction(0))

    def test_describe(self):
        offer = BetOffer.build({"a"}, "1/2", 3, two_sided=False, side=SELL)
        assert offer.describe() == "{a} at 1/2 (bound 3, sell-only)"


class TestPriceSystem:
    def test_event_outside_space_rejected(self):
        with pytest.raises(ValueError, match="outside the space"):
            PriceSystem.build(["a", "b"], [BetOffer.build({"c"}, "1/2", 1)])

    def test_scaled_multiplies_bounds_only(self):
        system = ellsberg_system().scaled(Fraction(1, 10))
        assert [o.bound for o in system.offers] == [Fraction(10), Fraction(10)]
        assert [o.price for o in system.offers] == [Fraction(3, 10), Fraction(13, 20)]

    def test_scaled_rejects_nonpositive_factor(self):
        with pytest.raises(ValueError, match="positive"):
            ellsberg_system().scaled(Fraction(0))

    def test_document_round_trip(self):
        system = PriceSystem.build(
            ["a", "b"],
            [
                BetOffer.build({"a"}, "1/3", 2),
                BetOffer.build({"b"}, "1/4", 1, two_sided=False, side=BUY),
            ],
        )
        again = PriceSystem.from_document(system.to_document())
        assert again == system

    def test_unknown_offer_keys_rejected_with_location(self):
        doc = {
            "states": ["a"],
            "offers": [{"event": ["a"], "price": "1/2", "bound": "1", "memo": "x"}],
        }
        with pytest.raises(ProblemFormatError, match=r"offers\[0\]"):
            PriceSystem.from_document(doc)

    def test_bad_offer_value_carries_location(self):
        doc = {"states": ["a"], "offers": [{"event": ["a"], "price": "2", "bound": "1"}]}
        with pytest.raises(ProblemFormatError, match=r"offers\[0\]"):
            PriceSystem.from_document(doc)

    def test_extra_document_keys_are_tolerated(self):
        # Corpus files carry descriptions and recorded choices alongside.
        assert isinstance(ellsberg_system(), PriceSystem)


def test_fair_price_is_the_probability():
    assert fair_price("1/4") == Fraction(1, 4)
    with pytest.raises(ValueError):
        fair_price("5/4")


def test_exposure_is_the_price_gap():
    assert exposure("1/4", "3/20") == Fraction(1, 10)
    assert exposure("3/20", "1/4") == Fraction(1, 10)


class TestEvaluateBook:
    def test_per_state_profit(self):
        system = ellsberg_system()
        profits = evaluate_book(system, [100, 100])
        assert profits == {
            "red": Fraction(5),
            "black": Fraction(5),
            "yellow": Fraction(5),
        }

    def test_stake_count_must_match(self):
        with pytest.raises(ValueError, match="one stake per offer"):
            evaluate_book(ellsberg_system(), [100])

    def test_stake_outside_bound_rejected(self):
        with pytest.raises(ValueError, match="outside the permitted range"):
            evaluate_book(ellsberg_system(), [101, 0])

    def test_one_sided_range_enforced(self):
        system = PriceSystem.build(
            ["a", "b"],
            [BetOffer.build({"a"}, "1/2", 5, two_sided=False, side=SELL)],
        )
        assert evaluate_book(system, [5]) == {
            "a": Fraction(5, 2),
            "b": Fraction(-5, 2),
        }
        with pytest.raises(ValueError, match="outside the permitted range"):
            evaluate_book(system, [-1])


class TestDutchBookSearch:
    def test_underpriced_partition_is_booked(self):
        book = dutch_book_search(ellsberg_system())
        assert book is not None
        assert book.stakes == (Fraction(100), Fraction(100))
        assert book.guaranteed == Fraction(5)
        assert book.outlay() == Fraction(95)
        assert book.profits == {
            "red": Fraction(5),
            "black": Fraction(5),
            "yellow": Fraction(5),
        }

    def test_ledger_narrates_the_trades(self):
        lines = dutch_book_search(ellsberg_system()).ledger()
        assert "buy 100 of {black} at 3/10 (premium 30)" in lines
        assert "buy 100 of {red,yellow} at 13/20 (premium 65)" in lines
        assert "if red: profit 5" in lines
        assert lines[-1] == "guaranteed profit 5"

    def test_book_document(self):
        doc = dutch_book_search(ellsberg_system()).to_document()
        assert doc["guaranteed"] == "5"
        assert doc["stakes"] == ["100", "100"]
        assert doc["per_state"]["yellow"] == "5"

    def test_fair_prices_admit_no_book(self):
        system = PriceSystem.build(
            ["a", "b", "c"],
            [
                BetOffer.build({"a"}, "1/6", 10),
                BetOffer.build({"a", "b"}, "1/2", 10),
                BetOffer.build({"c"}, "1/2", 10),
            ],
        )
        assert dutch_book_search(system) is None

    def test_no_offers_no_book(self):
        assert dutch_book_search(PriceSystem.build(["a"], [])) is None

    def test_one_sided_mispricing_only_exploitable_against_the_agent(self):
        # The agent only sells {a} at 9/10: overpriced sells hurt the buyer,
        # so no book; flip the side and the agent buys at 9/10, which the
        # adversary books by selling.
        sell_only = PriceSystem.build(
            ["a", "b"],
            [BetOffer.build({"a"}, "9/10", 10, two_sided=False, side=SELL)],
        )
        assert dutch_book_search(sell_only) is None
        buy_only = PriceSystem.build(
            ["a", "b"],
            [
                BetOffer.build({"a"}, "9/10", 10, two_sided=False, side=BUY),
                BetOffer.build({"b"}, "9/10", 10, two_sided=False, side=BUY),
            ],
        )
        book = dutch_book_search(buy_only)
        assert book is not None
        assert all(x <= 0 for x in book.stakes)
        assert book.guaranteed == Fraction(8)


class TestCoherenceCheck:
    def test_two_sided_prices_pin_the_measure(self):
        system = PriceSystem.build(
            ["a", "b", "c"],
            [
                BetOffer.build({"a"}, "1/6", 10),
                BetOffer.build({"a", "b"}, "1/2", 10),
            ],
        )
        measure = coherence_check(system)
        assert isinstance(measure, ProbabilityMeasure)
        assert measure.of({"a"}) == Fraction(1, 6)
        assert measure.of({"a", "b"}) == Fraction(1, 2)

    def test_incoherent_prices_yield_certificate_with_book(self):
        result = coherence_check(ellsberg_system())
        assert isinstance(result, IncoherenceCertificate)
        assert "no probability measure" in result.reason
        assert isinstance(result.book, DutchBook)
        assert result.book.guaranteed == Fraction(5)

    def test_sell_only_price_is_an_upper_bound(self):
        system = PriceSystem.build(
            ["a", "b"],
            [
                BetOffer.build({"a"}, "1/10", 1, two_sided=False, side=SELL),
                BetOffer.build({"b"}, "1/10", 1, two_sided=False, side=SELL),
            ],
        )
        # P(a) <= 1/10 and P(b) <= 1/10 cannot sum to 1.
        result = coherence_check(system)
        assert isinstance(result, IncoherenceCertificate)
        system_ok = PriceSystem.build(
            ["a", "b"],
            [BetOffer.build({"a"}, "9/10", 1, two_sided=False, side=SELL)],
        )
        assert isinstance(coherence_check(system_ok), ProbabilityMeasure)

    def test_buy_only_price_is_a_lower_bound(self):
        system = PriceSystem.build(
            ["a", "b"],
            [
                BetOffer.build({"a"}, "9/10", 1, two_sided=False, side=BUY),
                BetOffer.build({"b"}, "9/10", 1, two_sided=False, side=BUY),
            ],
        )
        result = coherence_check(system)
        assert isinstance(result, IncoherenceCertificate)
        assert result.book is not None

    def test_priced_empty_event(self):
        zero = PriceSystem.build(["a"], [BetOffer.build(frozenset(), "0", 1)])
        assert isinstance(coherence_check(zero), ProbabilityMeasure)
        paid = PriceSystem.build(["a"], [BetOffer.build(frozenset(), "1/2", 1)])
        result = coherence_check(paid)
        assert isinstance(result, IncoherenceCertificate)
        assert "empty event" in result.reason
        assert result.book is not None
        assert result.book.guaranteed == Fraction(1, 2)

    def test_buying_a_priced_empty_event_is_the_agents_loss(self):
        # Agent only sells the worthless bet: adversary has no move.
        system = PriceSystem.build(
            ["a"],
            [BetOffer.build(frozenset(), "1/2", 1, two_sided=False, side=SELL)],
        )
        assert isinstance(coherence_check(system), ProbabilityMeasure)


class TestTwoAgentBook:
    def test_price_gap_is_collected_from_both_sides(self):
        book = two_agent_dutch_book("1/4", "3/20", 100)
        assert book is not None
        assert book.stakes == (Fraction(-100), Fraction(100))
        assert book.profits == {
            "event-occurs": Fraction(10),
            "event-fails": Fraction(10),
        }
        assert book.guaranteed == Fraction(10)

    def test_equal_prices_close_the_gap(self):
        assert two_agent_dutch_book("1/4", "1/4", 100) is None

    def test_stake_must_be_positive(self):
        with pytest.raises(ValueError, match="positive"):
            two_agent_dutch_book("1/4", "3/20", 0)


# ---------------------------------------------------------------------------
# Property: the book search and the measure search answer the same question.

unit_fraction = st.fractions(
    min_value=Fraction(0), max_value=Fraction(1), max_denominator=12
)


@st.composite
def price_systems(draw):
    n = draw(st.integers(min_value=2, max_value=4))
    states = [f"s{i}" for i in range(n)]
    subsets = [
        frozenset(s for s, bit in zip(states, format(mask, f"0{n}b")) if bit == "1")
        for mask in range(1, 2**n)
    ]
    n_offers = draw(st.integers(min_value=1, max_value=4))
    offers = []
    for _ in range(n_offers):
        event = draw(st.sampled_from(subsets))
        price = draw(unit_fraction)
        sided = draw(st.sampled_from(["two", SELL, BUY]))
        if sided == "two":
            offers.append(BetOffer.build(event, price, 10))
        else:
            offers.append(BetOffer.build(event, price, 10, two_sided=False, side=sided))
    return PriceSystem.build(states, offers)


@settings(max_examples=80, deadline=None)
@given(price_systems())
def test_book_exists_iff_no_agreeing_measure(system):
    book = dutch_book_search(system)
    check = coherence_check(system)
    if book is None:
        assert isinstance(check, ProbabilityMeasure)
        # The measure must actually honor every offer's constraint.
        for offer in system.offers:
            p = check.of(offer.event.members)
            if offer.two_sided:
                assert p == offer.price
            elif offer.side == SELL:
                assert p <= offer.price
            else:
                assert p >= offer.price
    else:
        assert isinstance(check, IncoherenceCertificate)
        assert book.guaranteed > 0
        # Replaying the stakes through the evaluator reproduces the profits.
        assert evaluate_book(system, book.stakes) == book.profits
