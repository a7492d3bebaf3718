import json
import threading
from fractions import Fraction
from importlib.resources import files

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seu.elicit import (
    ABANDONED,
    ACTIVE,
    BOOKIE,
    CONVERGED,
    INDIFFERENT,
    PLAYER,
    ElicitationSession,
    SessionError,
    SessionStore,
    abandon,
    create_session,
    next_query,
    record_preference,
    report,
    run_script,
    scripted_respondent,
    session_to_document,
    submit_answer,
)
from seu.problem import DecisionProblem
from seu.reports import VIOLATED


def allais_doc(empty_preferences=False) -> dict:
    doc = json.loads(files("seu").joinpath("corpus", "allais.json").read_text())
    if empty_preferences:
        doc["preferences"] = {"mode": "raw", "judgments": []}
    return doc


def fresh(width="1/1024", scale=1, **kwargs) -> ElicitationSession:
    return create_session("the home team wins", width, scale, **kwargs)


class TestCreateSession:
    def test_defaults(self):
        s = fresh()
        assert s.status == ACTIVE
        assert (s.lo, s.hi) == (Fraction(0), Fraction(1))
        assert s.width == 1
        assert s.estimate is None and s.fair_price is None
        assert len(s.session_id) == 32

    def test_width_must_be_interior(self):
        for bad in ("0", "1", "3/2"):
            with pytest.raises(ValueError, match="target width"):
                fresh(width=bad)

    def test_scale_must_be_positive(self):
        with pytest.raises(ValueError, match="positive"):
            fresh(scale=0)

    def test_problem_document_is_parsed(self):
        s = fresh(problem=allais_doc())
        assert isinstance(s.problem, DecisionProblem)

    def test_explicit_session_id(self):
        assert fresh(session_id="abc").session_id == "abc"


class TestBisection:
    def test_first_query_is_the_midpoint(self):
        q = next_query(fresh())
        assert q.price == Fraction(1, 2)
        assert "the home team wins" in q.framing
        assert "1/2" in q.framing

    def test_framing_quotes_money_amounts(self):
        q = next_query(fresh(scale=100))
        assert "50" in q.framing and "100" in q.framing

    def test_player_raises_the_floor(self):
        s = submit_answer(fresh(), PLAYER)
        assert (s.lo, s.hi) == (Fraction(1, 2), Fraction(1))

    def test_bookie_lowers_the_ceiling(self):
        s = submit_answer(fresh(), BOOKIE)
        assert (s.lo, s.hi) == (Fraction(0), Fraction(1, 2))

    def test_indifference_converges_at_once(self):
        s = submit_answer(fresh(), INDIFFERENT)
        assert s.status == CONVERGED
        assert s.estimate == Fraction(1, 2)
        assert s.width == 0

    def test_unknown_response_rejected(self):
        with pytest.raises(ValueError, match="unknown response"):
            submit_answer(fresh(), "maybe")

    def test_no_query_after_convergence(self):
        s = submit_answer(fresh(), INDIFFERENT)
        with pytest.raises(SessionError, match="converged"):
            next_query(s)
        with pytest.raises(SessionError, match="converged"):
            submit_answer(s, PLAYER)

    def test_width_halves_per_answer(self):
        s = fresh(width=Fraction(1, 2**20))
        for k in range(1, 11):
            s = submit_answer(s, PLAYER if k % 2 else BOOKIE)
            assert s.width == Fraction(1, 2**k)

    def test_convergence_needs_exactly_ten_answers_at_the_default_width(self):
        s = run_script(fresh(), scripted_respondent("1/3"))
        assert s.status == CONVERGED
        assert len(s.transcript) == 10
        assert s.width == Fraction(1, 1024)

    def test_estimate_is_the_final_midpoint_scaled_by_the_payoff(self):
        s = run_script(fresh(scale=100), scripted_respondent("1/4"))
        assert s.status == CONVERGED
        # 1/2 -> bookie, 1/4 -> indifferent: two answers suffice.
        assert len(s.transcript) == 2
        assert s.estimate == Fraction(1, 4)
        assert s.fair_price == Fraction(25)


class TestScriptedBattery:
    @pytest.mark.parametrize("p", ["0", "1/4", "1/3", "9/10", "1"])
    def test_interval_always_traps_the_hidden_probability(self, p):
        hidden = Fraction(p)
        s = fresh()
        respond = scripted_respondent(p)
        while s.status == ACTIVE:
            s = submit_answer(s, respond(next_query(s).price))
            assert s.lo <= hidden <= s.hi
        assert s.status == CONVERGED
        assert s.width <= Fraction(1, 1024)
        assert len(s.transcript) <= 12
        assert abs(s.estimate - hidden) <= Fraction(1, 1024)

    def test_hidden_probability_must_be_a_probability(self):
        with pytest.raises(ValueError, match="outside"):
            scripted_respondent("3/2")

    def test_run_script_respects_the_answer_budget(self):
        s = run_script(fresh(width=Fraction(1, 2**30)), scripted_respondent("1/3"), 5)
        assert s.status == ACTIVE
        assert len(s.transcript) == 5


class TestAbandon:
    def test_abandoned_sessions_answer_nothing(self):
        s = abandon(fresh())
        assert s.status == ABANDONED
        with pytest.raises(SessionError, match="abandoned"):
            next_query(s)
        with pytest.raises(SessionError, match="already abandoned"):
            abandon(s)


class TestLiveChecks:
    def test_requires_a_problem(self):
        with pytest.raises(SessionError, match="no decision problem"):
            record_preference(fresh(), "I", "II", "<")

    def test_unknown_act_rejected(self):
        s = fresh(problem=allais_doc(empty_preferences=True))
        with pytest.raises(ValueError, match="unknown act"):
            record_preference(s, "I", "V", "<")

    def test_consistent_judgments_keep_the_feed_empty(self):
        s = fresh(problem=allais_doc(empty_preferences=True))
        s = record_preference(s, "II", "I", "<")
        s = record_preference(s, "IV", "III", "<")
        assert s.violations == ()

    def test_sure_thing_flip_surfaces_as_soon_as_entailed(self):
        s = fresh(problem=allais_doc(empty_preferences=True))
        s = record_preference(s, "II", "I", "<")
        assert s.violations == ()
        s = record_preference(s, "III", "IV", "<")
        kinds = [v.axiom for v in s.violations]
        assert kinds.count("P2") == 1
        assert all(v.verdict == VIOLATED for v in s.violations)

    def test_repeating_a_judgment_does_not_duplicate_the_report(self):
        s = fresh(problem=allais_doc(empty_preferences=True))
        s = record_preference(s, "II", "I", "<")
        s = record_preference(s, "III", "IV", "<")
        before = len(s.violations)
        s = record_preference(s, "III", "IV", "<")
        assert len(s.violations) == before

    def test_preference_cycle_trips_the_ordering_check(self):
        doc = {
            "states": ["s", "t"],
            "consequences": [{"label": "x"}, {"label": "y"}, {"label": "z"}],
            "acts": [
                {"name": "f", "assignment": {"s": "x", "t": "x"}},
                {"name": "g", "assignment": {"s": "y", "t": "y"}},
                {"name": "h", "assignment": {"s": "z", "t": "z"}},
            ],
            "events": {},
            "preferences": {"mode": "raw", "judgments": []},
        }
        s = fresh(problem=doc)
        s = record_preference(s, "f", "g", "<")
        s = record_preference(s, "g", "h", "<")
        assert s.violations == ()
        s = record_preference(s, "h", "f", "<")
        assert any(v.axiom == "P1-transitive" for v in s.violations)

    def test_judgments_show_up_in_the_report(self):
        s = fresh(problem=allais_doc(empty_preferences=True))
        s = record_preference(s, "II", "I", "<")
        doc = report(s)
        assert doc["judgments"] == [{"left": "II", "right": "I", "rel": "<"}]


class TestReport:
    def test_active_session_report(self):
        s = submit_answer(fresh(), PLAYER)
        doc = report(s)
        assert doc["status"] == ACTIVE
        assert doc["interval"] == {"lo": "1/2", "hi": "1"}
        assert doc["width"] == "1/2"
        assert doc["target_width"] == "1/1024"
        assert doc["answers"] == 1
        assert doc["transcript"] == [{"price": "1/2", "response": PLAYER}]
        assert doc["estimate"] is None and doc["fair_price"] is None
        assert doc["violations"] == []
        assert "judgments" not in doc

    def test_converged_report_carries_prices(self):
        s = run_script(fresh(scale=100), scripted_respondent("1/4"))
        doc = report(s)
        assert doc["estimate"] == "1/4"
        assert doc["fair_price"] == "25"

    def test_report_is_json_serializable(self):
        s = run_script(
            fresh(problem=allais_doc(empty_preferences=True)),
            scripted_respondent("1/3"),
        )
        json.dumps(report(s))

    def test_session_document_embeds_the_problem(self):
        s = fresh(problem=allais_doc(empty_preferences=True))
        doc = session_to_document(s)
        assert doc["problem"]["states"] == [
            "ticket-1",
            "tickets-2-11",
            "tickets-12-100",
        ]
        assert "problem" not in report(s)


def test_replaying_a_transcript_reproduces_the_session():
    first = run_script(fresh(session_id="one"), scripted_respondent("9/10"))
    second = fresh(session_id="one")
    for _, response in first.transcript:
        second = submit_answer(second, response)
    assert second == first


class TestSessionStore:
    def test_add_get_ids(self):
        store = SessionStore()
        s = store.add(fresh(session_id="a"))
        store.add(fresh(session_id="b"))
        assert store.get("a") == s
        assert store.ids() == ["a", "b"]

    def test_duplicate_and_missing_ids(self):
        store = SessionStore()
        store.add(fresh(session_id="a"))
        with pytest.raises(KeyError, match="already exists"):
            store.add(fresh(session_id="a"))
        with pytest.raises(KeyError, match="no session"):
            store.get("zzz")

    def test_updates_are_atomic_across_threads(self):
        store = SessionStore()
        store.add(fresh(session_id="race", width=Fraction(1, 2**200)))
        per_thread, n_threads = 25, 8

        def worker():
            for _ in range(per_thread):
                store.update("race", lambda s: submit_answer(s, PLAYER))

        threads = [threading.Thread(target=worker) for _ in range(n_threads)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        final = store.get("race")
        assert len(final.transcript) == per_thread * n_threads
        assert final.status == CONVERGED
        assert final.width == Fraction(1, 2**200)


# ---------------------------------------------------------------------------
# Property: k non-indifferent answers leave a dyadic interval of width 2^-k
# nested inside every earlier interval.

@settings(max_examples=100, deadline=None)
@given(st.lists(st.sampled_from([PLAYER, BOOKIE]), min_size=0, max_size=10))
def test_intervals_are_nested_dyadics(responses):
    s = fresh(width=Fraction(1, 2**11))
    previous = (s.lo, s.hi)
    for k, response in enumerate(responses, start=1):
        s = submit_answer(s, response)
        assert s.width == Fraction(1, 2**k)
        assert previous[0] <= s.lo <= s.hi <= previous[1]
        assert s.lo.denominator <= 2**k and s.hi.denominator <= 2**k
        previous = (s.lo, s.hi)
