import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seu.qualitative import (
    AgreementFailure,
    EventOrder,
    OrderJudgment,
    ProbabilityMeasure,
    check_qp_axioms,
    conditional_order,
    event_order_from_document,
    find_agreeing_measure,
    measure_agreement_failures,
)
from seu.reports import SATISFIED, VIOLATED


class TestOrderJudgment:
    def test_describe_is_deterministic(self):
        j = OrderJudgment(frozenset({"b", "a"}), frozenset({"c"}), "<")
        assert j.describe() == "{a,b} ≺ {c}"

    def test_relation_symbols(self):
        a, b = frozenset({"a"}), frozenset({"b"})
        assert OrderJudgment(a, b, "~").describe() == "{a} ≈ {b}"
        assert OrderJudgment(a, b, "<=").describe() == "{a} ⪯ {b}"

    def test_unknown_relation_rejected(self):
        with pytest.raises(ValueError):
            OrderJudgment(frozenset(), frozenset(), "<<")

    def test_members_coerced_to_frozensets(self):
        j = OrderJudgment({"a"}, {"b"}, "<")
        assert isinstance(j.left, frozenset)


class TestEventOrder:
    def test_build_from_triples(self):
        order = EventOrder.build("ab", [(["a"], ["b"], "<")])
        assert order.judgments[0].left == frozenset({"a"})

    def test_unknown_states_rejected(self):
        with pytest.raises(ValueError, match="unknown states"):
            EventOrder.build("ab", [(["a"], ["z"], "<")])

    def test_duplicate_states_rejected(self):
        with pytest.raises(ValueError):
            EventOrder(("a", "a"), ())

    def test_universe_adds_empty_and_sure(self):
        order = EventOrder.build("ab", [(["a"], ["b"], "<")])
        assert frozenset() in order.universe()
        assert frozenset({"a", "b"}) in order.universe()

    def test_from_document(self):
        order = event_order_from_document(
            ["a", "b"], [{"left": ["a"], "right": ["b"], "rel": "<"}]
        )
        assert order == EventOrder.build("ab", [(["a"], ["b"], "<")])


class TestProbabilityMeasure:
    def test_masses_must_sum_to_one(self):
        with pytest.raises(ValueError, match="sum to"):
            ProbabilityMeasure.build({"a": "1/2", "b": "1/3"})

    def test_negative_mass_rejected(self):
        with pytest.raises(ValueError, match="negative"):
            ProbabilityMeasure.build({"a": "3/2", "b": "-1/2"})

    def test_of_sums_members(self):
        m = ProbabilityMeasure.build({"a": "1/6", "b": "1/3", "c": "1/2"})
        assert m.of({"a", "c"}) == Fraction(2, 3)
        assert m.of(set()) == 0

    def test_of_rejects_unknown_states(self):
        m = ProbabilityMeasure.uniform(["a", "b"])
        with pytest.raises(ValueError):
            m.of({"z"})

    def test_uniform(self):
        m = ProbabilityMeasure.uniform(["a", "b", "c"])
        assert m.mass("b") == Fraction(1, 3)

    def test_document_round_trip(self):
        m = ProbabilityMeasure.build({"a": "1/6", "b": "5/6"})
        assert ProbabilityMeasure.from_document(m.to_document()) == m

    def test_induced_order_is_total_on_the_pool(self):
        m = ProbabilityMeasure.build({"a": "1/6", "b": "1/3", "c": "1/2"})
        pool = [{"a"}, {"b"}, {"a", "b"}]
        order = m.induced_order(pool)
        assert len(order.judgments) == 3
        assert not measure_agreement_failures(m, order)

    def test_induced_order_refuses_huge_enumerations(self):
        m = ProbabilityMeasure.uniform([f"s{i}" for i in range(13)])
        with pytest.raises(ValueError):
            m.induced_order()


ELLSBERG_PATTERN = [
    ({"black"}, {"red"}, "<"),
    ({"red", "yellow"}, {"black", "yellow"}, "<"),
    # The check only quantifies over declared events, so the shared part
    # must itself appear in the order for the mismatch to be visible.
    ((), {"yellow"}, "<="),
]


class TestQpAxioms:
    def test_additivity_mismatch_witnessed(self):
        order = EventOrder.build(["red", "black", "yellow"], ELLSBERG_PATTERN)
        report = check_qp_axioms(order)
        assert report.verdict == VIOLATED
        kinds = {w.kind for w in report.witnesses}
        assert "additivity-mismatch" in kinds
        w = next(w for w in report.witnesses if w.kind == "additivity-mismatch")
        assert w.get("disjoint") == ["yellow"]

    def test_strict_cycle_witnessed(self):
        order = EventOrder.build(
        "ab", [(["a"], ["b"], "<"), (["b"], ["a"], "<=")]
        )
        report = check_qp_axioms(order)
        assert any(w.kind == "strict-cycle" for w in report.witnesses)

    def test_below_empty_witnessed(self):
        order = EventOrder.build("ab", [(["a"], [], "<")])
        report = check_qp_axioms(order)
        assert any(w.kind == "below-empty" for w in report.witnesses)

    def test_measure_induced_order_passes(self):
        m = ProbabilityMeasure.build({"a": "1/6", "b": "1/3", "c": "1/2"})
        order = m.induced_order()
        assert check_qp_axioms(order).verdict == SATISFIED


class TestAgreement:
    def test_agreeing_measure_found_and_correct(self):
        order = EventOrder.build(
            "ab", [(["a"], ["b"], "<"), ([], ["a"], "<")]
        )
        measure = find_agreeing_measure(order)
        assert isinstance(measure, ProbabilityMeasure)
        assert 0 < measure.of({"a"}) < measure.of({"b"})
        assert not measure_agreement_failures(measure, order)

    def test_empty_order_yields_uniform(self):
        measure = find_agreeing_measure(EventOrder.build("abc", []))
        assert measure == ProbabilityMeasure.uniform(("a", "b", "c"))

    def test_blatant_contradiction_is_infeasible(self):
        order = EventOrder.build(
            "ab",
            [(["a"], ["b"], "<"), (["b"], ["a"], "<"), (["a"], ["b"], "~")],
        )
        failure = find_agreeing_measure(order)
        assert isinstance(failure, AgreementFailure)

    def test_cancelling_strict_judgments_almost_agree(self):
        # p(b) < p(a) and p(a)+p(c) < p(b)+p(c) cancel exactly: every weak
        # relaxation is satisfiable, never both strict inequalities.
        order = EventOrder.build(
            "abc",
            [(["b"], ["a"], "<"), (["a", "c"], ["b", "c"], "<")],
        )
        failure = find_agreeing_measure(order)
        assert isinstance(failure, AgreementFailure)
        assert failure.almost_agrees
        assert failure.margin == 0
        assert set(failure.tight) == set(order.judgments)
        assert not measure_agreement_failures(failure.almost, order, strict=False)

    def test_agreement_is_stronger_than_the_axiom_check(self):
        # The axiom check cannot see the cancellation because the witnessing
        # union events are absent from the declared universe.
        order = EventOrder.build(
            "abc",
            [(["b"], ["a"], "<"), (["a", "c"], ["b", "c"], "<")],
        )
        assert check_qp_axioms(order).verdict == SATISFIED
        assert isinstance(find_agreeing_measure(order), AgreementFailure)

    def test_self_comparison_rejected_weakly(self):
        order = EventOrder.build("ab", [(["a"], ["a"], "<")])
        failure = find_agreeing_measure(order, strict=False)
        assert isinstance(failure, AgreementFailure)
        assert "against itself" in failure.reason

    def test_weak_fit_ignores_strictness(self):
        order = EventOrder.build(
            "abc",
            [(["b"], ["a"], "<"), (["a", "c"], ["b", "c"], "<")],
        )
        measure = find_agreeing_measure(order, strict=False)
        assert isinstance(measure, ProbabilityMeasure)
        assert measure.of({"a"}) == measure.of({"b"})


class TestConditionalOrder:
    def full_order(self):
        m = ProbabilityMeasure.build({"a": "1/6", "b": "1/3", "c": "1/2"})
        return m, m.induced_order()

    def test_traces_follow_the_conditioned_measure(self):
        from seu.bayes import condition
        from seu.problem import Event

        m, order = self.full_order()
        given = frozenset({"a", "b"})
        cond = conditional_order(order, given)
        conditioned = condition(m, Event(given))
        for j in cond.judgments:
            left, right = conditioned.of(j.left), conditioned.of(j.right)
            if j.rel == "<":
                assert left < right
            else:
                assert left == right

    def test_null_conditioning_event_rejected(self):
        order = EventOrder.build("ab", [(["a"], [], "~")])
        with pytest.raises(ValueError, match="null"):
            conditional_order(order, {"a"})

    def test_unknown_states_rejected(self):
        _, order = self.full_order()
        with pytest.raises(ValueError):
            conditional_order(order, {"z"})

    def test_missing_traces_are_skipped(self):
        order = EventOrder.build("abc", [(["a"], ["b"], "<")])
        cond = conditional_order(order, {"a", "c"})
        # The trace {b} n {a,c} is empty, which the universe contains, but
        # {a} n {a,c} = {a} is compared against it only where decidable.
        for j in cond.judgments:
            assert j.left <= frozenset("abc")


# ---------------------------------------------------------------------------
# Property: orders induced by a measure are always agreed with, exactly.

@st.composite
def measure_and_pool(draw):
    n = draw(st.integers(min_value=2, max_value=3))
    states = [f"s{i}" for i in range(n)]
    parts = draw(
        st.lists(
            st.integers(min_value=0, max_value=6), min_size=n, max_size=n
        ).filter(lambda xs: sum(xs) > 0)
    )
    total = sum(parts)
    measure = ProbabilityMeasure(
        tuple(states), tuple((s, Fraction(k, total)) for s, k in zip(states, parts))
    )
    subsets = [
        frozenset(c)
        for r in range(n + 1)
        for c in itertools.combinations(states, r)
    ]
    pool = draw(
        st.lists(st.sampled_from(subsets), min_size=1, max_size=5, unique=True)
    )
    return measure, pool


@settings(max_examples=60, deadline=None)
@given(measure_and_pool())
def test_induced_orders_always_admit_agreement(data):
    measure, pool = data
    order = measure.induced_order(pool)
    found = find_agreeing_measure(order)
    assert isinstance(found, ProbabilityMeasure)
    assert not measure_agreement_failures(found, order)
