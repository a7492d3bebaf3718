import json
from fractions import Fraction
from importlib.resources import files

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seu.problem import problem_from_document
from seu.qualitative import ProbabilityMeasure
from seu.representation import (
    FitFailure,
    Representation,
    UtilityFunction,
    expected_utility,
    fit_joint,
    fit_probability,
    fit_utility,
    verify_agreement,
)


def corpus(name: str) -> dict:
    return json.loads(files("seu").joinpath("corpus", f"{name}.json").read_text())


def simple_problem(judgments):
    doc = {
        "states": ["a", "b"],
        "consequences": [{"label": "x"}, {"label": "y"}],
        "acts": [
            {"name": "f", "assignment": {"a": "x", "b": "y"}},
            {"name": "g", "assignment": {"a": "y", "b": "x"}},
            {"name": "f2", "assignment": {"a": "x", "b": "y"}},
            {"name": "g2", "assignment": {"a": "y", "b": "x"}},
        ],
        "events": {},
        "preferences": {
            "mode": "raw",
            "judgments": [
                {"left": l, "right": r, "rel": rel} for l, r, rel in judgments
            ],
        },
    }
    return problem_from_document(doc)


class TestUtilityFunction:
    def test_lookup(self):
        u = UtilityFunction.build({"x": "1/2", "y": 1})
        assert u("x") == Fraction(1, 2)
        assert "y" in u and "z" not in u
        with pytest.raises(KeyError):
            u("z")

    def test_duplicates_rejected(self):
        with pytest.raises(ValueError):
            UtilityFunction((("x", Fraction(1)), ("x", Fraction(2))))

    def test_normalized_maps_onto_unit_interval(self):
        u = UtilityFunction.build({"x": -2, "y": 0, "z": 6}).normalized()
        assert u("x") == 0
        assert u("y") == Fraction(1, 4)
        assert u("z") == 1

    def test_normalized_of_constant_is_zero(self):
        u = UtilityFunction.build({"x": 5, "y": 5}).normalized()
        assert u("x") == u("y") == 0

    def test_transformed_requires_positive_scale(self):
        u = UtilityFunction.build({"x": 1})
        with pytest.raises(ValueError):
            u.transformed(Fraction(0), Fraction(1))

    def test_affine_transform_preserves_score_order(self):
        problem = simple_problem([("f", "g", "<")])
        measure = ProbabilityMeasure.build({"a": "1/4", "b": "3/4"})
        u = UtilityFunction.build({"x": 0, "y": 1})
        v = u.transformed(Fraction(7, 2), Fraction(-3))
        f, g = problem.act("f"), problem.act("g")
        assert expected_utility(measure, u, f) > expected_utility(measure, u, g)
        assert expected_utility(measure, v, f) > expected_utility(measure, v, g)


def test_expected_utility_is_the_mass_weighted_sum():
    problem = simple_problem([])
    measure = ProbabilityMeasure.build({"a": "1/3", "b": "2/3"})
    u = UtilityFunction.build({"x": "1", "y": "1/2"})
    assert expected_utility(measure, u, problem.act("f")) == Fraction(2, 3)


def test_representation_document_round_trip():
    rep = Representation(
        ProbabilityMeasure.build({"a": "1/3", "b": "2/3"}),
        UtilityFunction.build({"x": "1", "y": "1/2"}),
    )
    again = Representation.from_document(rep.to_document())
    assert again.measure == rep.measure
    assert again.utility.values == rep.utility.values


class TestVerifyAgreement:
    def rep(self, pa="1/4"):
        return Representation(
            ProbabilityMeasure.build({"a": pa, "b": str(Fraction(1) - Fraction(pa))}),
            UtilityFunction.build({"x": 1, "y": 0}),
        )

    def test_strict_judgment_must_score_strictly(self):
        problem = simple_problem([("f", "g", "<")])
        # P(a)=1/4: EU(f)=1/4 < EU(g)=3/4.
        assert verify_agreement(problem, self.rep()).ok

    def test_wrong_direction_witnessed(self):
        problem = simple_problem([("g", "f", "<")])
        report = verify_agreement(problem, self.rep())
        assert not report.ok
        w = report.witnesses[0]
        assert w.kind == "score-mismatch"
        assert w.get("left_score") == "3/4"
        assert w.get("right_score") == "1/4"

    def test_tie_fails_a_strict_judgment(self):
        problem = simple_problem([("f", "g", "<")])
        assert not verify_agreement(problem, self.rep(pa="1/2")).ok

    def test_indifference_requires_exact_equality(self):
        problem = simple_problem([("f", "g", "~")])
        assert verify_agreement(problem, self.rep(pa="1/2")).ok
        assert not verify_agreement(problem, self.rep(pa="1/4")).ok


class TestFitProbability:
    def test_recovers_a_measure_for_the_race_data(self):
        problem = problem_from_document(corpus("horses"))
        utility = UtilityFunction.build(
            {c: problem.consequences.value(c) for c in problem.consequences}
        ).normalized()
        measure = fit_probability(problem, utility)
        assert isinstance(measure, ProbabilityMeasure)
        assert verify_agreement(problem, Representation(measure, utility)).ok

    def test_identical_profiles_cannot_be_separated(self):
        problem = simple_problem([("f", "f2", "<")])
        utility = UtilityFunction.build({"x": 0, "y": 1})
        failure = fit_probability(problem, utility)
        assert isinstance(failure, FitFailure)
        assert "identical" in failure.reason

    def test_opposed_strict_judgments_leave_zero_margin(self):
        problem = simple_problem([("f", "g", "<"), ("g2", "f2", "<")])
        utility = UtilityFunction.build({"x": 0, "y": 1})
        failure = fit_probability(problem, utility)
        assert isinstance(failure, FitFailure)
        assert failure.margin == 0

    def test_indifference_constrains_exactly(self):
        problem = simple_problem([("f", "g", "~")])
        utility = UtilityFunction.build({"x": 0, "y": 1})
        measure = fit_probability(problem, utility)
        assert isinstance(measure, ProbabilityMeasure)
        assert measure.of({"a"}) == measure.of({"b"}) == Fraction(1, 2)


class TestFitUtility:
    def test_recovers_a_utility(self):
        problem = simple_problem([("f", "g", "<")])
        measure = ProbabilityMeasure.build({"a": "1/4", "b": "3/4"})
        utility = fit_utility(problem, measure)
        assert isinstance(utility, UtilityFunction)
        assert verify_agreement(problem, Representation(measure, utility)).ok
        assert all(0 <= v <= 1 for v in utility.values.values())

    def test_almost_sure_coincidence_cannot_be_separated(self):
        doc = {
            "states": ["a", "b"],
            "consequences": [{"label": "x"}, {"label": "y"}],
            "acts": [
                {"name": "f", "assignment": {"a": "x", "b": "x"}},
                {"name": "g", "assignment": {"a": "x", "b": "y"}},
            ],
            "events": {},
            "preferences": [{"left": "f", "right": "g", "rel": "<"}],
        }
        problem = problem_from_document(doc)
        measure = ProbabilityMeasure.build({"a": "1", "b": "0"})
        failure = fit_utility(problem, measure)
        assert isinstance(failure, FitFailure)
        assert "almost surely" in failure.reason


class TestFitJoint:
    def test_race_data_admits_a_joint_fit(self):
        problem = problem_from_document(corpus("horses"))
        rep = fit_joint(problem)
        assert rep is not None
        assert verify_agreement(problem, rep).ok

    def test_mixed_ticket_choices_admit_none(self):
        # II < I forces the sure 500k above the gamble's conditional part,
        # III < IV forces the reverse of the same inequality; no measure
        # and utility can satisfy both, whatever the ticket masses.
        problem = problem_from_document(corpus("allais"))
        assert fit_joint(problem) is None

    def test_size_cap_enforced(self):
        problem = problem_from_document(corpus("horses"))
        with pytest.raises(ValueError, match="cap"):
            fit_joint(problem, cap=8)


# ---------------------------------------------------------------------------
# Property: judgments generated by a representation are always refittable.

small_fraction = st.fractions(
    min_value=Fraction(0), max_value=Fraction(1), max_denominator=8
)


@st.composite
def random_models(draw):
    n_states = draw(st.integers(min_value=2, max_value=3))
    states = [f"s{i}" for i in range(n_states)]
    masses = draw(
        st.lists(
            st.integers(min_value=0, max_value=5),
            min_size=n_states,
            max_size=n_states,
        ).filter(lambda xs: sum(xs) > 0)
    )
    total = sum(masses)
    measure = ProbabilityMeasure(
        tuple(states),
        tuple((s, Fraction(k, total)) for s, k in zip(states, masses)),
    )
    labels = ["c0", "c1", "c2"]
    utility = UtilityFunction.build(
        {c: draw(small_fraction) for c in labels}
    )
    n_acts = draw(st.integers(min_value=2, max_value=4))
    rows = [
        [draw(st.sampled_from(labels)) for _ in states] for _ in range(n_acts)
    ]
    return measure, utility, states, labels, rows


@settings(max_examples=50, deadline=None)
@given(random_models())
def test_generated_judgments_are_refittable(model):
    measure, utility, states, labels, rows = model
    doc = {
        "states": states,
        "consequences": [{"label": c} for c in labels],
        "acts": [
            {"name": f"a{i}", "assignment": dict(zip(states, row))}
            for i, row in enumerate(rows)
        ],
        "events": {},
        "preferences": [],
    }
    problem = problem_from_document(doc)
    judgments = []
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            left = expected_utility(measure, utility, problem.act(f"a{i}"))
            right = expected_utility(measure, utility, problem.act(f"a{j}"))
            if left < right:
                judgments.append({"left": f"a{i}", "right": f"a{j}", "rel": "<"})
            elif right < left:
                judgments.append({"left": f"a{j}", "right": f"a{i}", "rel": "<"})
            else:
                judgments.append({"left": f"a{i}", "right": f"a{j}", "rel": "~"})
    doc["preferences"] = judgments
    problem = problem_from_document(doc)

    fitted = fit_probability(problem, utility)
    assert isinstance(fitted, ProbabilityMeasure)
    assert verify_agreement(problem, Representation(fitted, utility)).ok
