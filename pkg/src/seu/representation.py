"""Expected-utility representations: evaluation, verification, fitting.

A representation is a probability measure over states and a utility over
consequences; an act is scored by the expectation of the utility of its
outcomes.  ``verify_agreement`` replays declared judgments against the
scores (strict judgments must score strictly, indifferences exactly).  The
``fit_*`` functions invert the direction: from judgments to a measure, a
utility, or both.  The one-sided fits are complete (an exact LP decides
them); the joint fit alternates the one-sided fits from several seeds and
falls back to a rational grid over utilities, so a ``None`` answer means
"not found", never "impossible".
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .problem import Act, DecisionProblem, STRICTLY_LESS
from .qualitative import ProbabilityMeasure
from .rational import format_rational, parse_rational
from .reports import Witness, build_report, ViolationReport
from .simplex import LinearProgram, OPTIMAL

EU_AGREEMENT = "expected-utility-agreement"


@dataclass(frozen=True)
class UtilityFunction:
    """Exact utility values for every consequence label."""

    _values: tuple[tuple[str, Fraction], ...]

    @staticmethod
    def build(values: Mapping[str, Union[Fraction, int, str]]) -> "UtilityFunction":
        return UtilityFunction(tuple((c, parse_rational(v)) for c, v in values.items()))

    def __post_init__(self):
        labels = [c for c, _ in self._values]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate consequence labels")

    def __call__(self, label: str) -> Fraction:
        for c, v in self._values:
            if c == label:
                return v
        raise KeyError(label)

    def __contains__(self, label: str) -> bool:
        return any(c == label for c, _ in self._values)

    @property
    def values(self) -> dict[str, Fraction]:
        return dict(self._values)

    def normalized(self) -> "UtilityFunction":
        """Affinely rescale onto [0, 1] (identity when all values coincide)."""
        vals = [v for _, v in self._values]
        lo, hi = min(vals), max(vals)
        if lo == hi:
            return UtilityFunction(tuple((c, Fraction(0)) for c, _ in self._values))
        span = hi - lo
        return UtilityFunction(tuple((c, (v - lo) / span) for c, v in self._values))

    def transformed(self, scale: Fraction, shift: Fraction) -> "UtilityFunction":
        if scale <= 0:
            raise ValueError("scale must be positive to preserve the order")
        return UtilityFunction(
            tuple((c, scale * v + shift) for c, v in self._values)
        )


def expected_utility(
    measure: ProbabilityMeasure, utility: UtilityFunction, act: Act
) -> Fraction:
    total = Fraction(0)
    for state in measure.states:
        total += measure.mass(state) * utility(act.payoff(state))
    return total


@dataclass(frozen=True)
class Representation:
    measure: ProbabilityMeasure
    utility: UtilityFunction

    def expected(self, act: Act) -> Fraction:
        return expected_utility(self.measure, self.utility, act)

    def to_document(self) -> dict:
        return {
            "measure": {s: format_rational(m) for s, m in self.measure.masses.items()},
            "utility": {c: format_rational(v) for c, v in self.utility.values.items()},
        }

    @staticmethod
    def from_document(doc: Mapping) -> "Representation":
        return Representation(
            ProbabilityMeasure.build(doc["measure"]),
            UtilityFunction.build(doc["utility"]),
        )


def verify_agreement(problem: DecisionProblem, representation: Representation) -> ViolationReport:
    """Check every declared judgment against the representation's scores.

    Both directions of the intended equivalence are enforced on the data we
    have: a strict judgment must come out strictly, an indifference exactly.
    """
    witnesses = []
    decided = 0
    for j in problem.preferences:
        left = representation.expected(problem.act(j.left))
        right = representation.expected(problem.act(j.right))
        decided += 1
        if j.rel == STRICTLY_LESS:
            ok = left < right
        else:
            ok = left == right
        if not ok:
            witnesses.append(
                Witness.build(
                    "score-mismatch",
                    {
                        "left": j.left,
                        "right": j.right,
                        "rel": j.rel,
                        "left_score": format_rational(left),
                        "right_score": format_rational(right),
                    },
                    note=(
                        f"judgment {j.left} {j.rel} {j.right} scores "
                        f"{left} vs {right}"
                    ),
                )
            )
    return build_report(EU_AGREEMENT, witnesses, decided=decided)


@dataclass(frozen=True)
class FitFailure:
    """No exact fit exists for the requested side (the LP says so)."""

    reason: str
    margin: Optional[Fraction] = None


def fit_probability(
    problem: DecisionProblem, utility: UtilityFunction
) -> Union[ProbabilityMeasure, FitFailure]:
    """Measure making expected utility reproduce the judgments, if one exists."""
    lp = LinearProgram()
    for s in problem.states:
        lp.variable(f"p:{s}")
    lp.variable("delta", upper=Fraction(1))
    lp.constrain({f"p:{s}": Fraction(1) for s in problem.states}, "=", Fraction(1))
    for j in problem.preferences:
        f = problem.act(j.left)
        g = problem.act(j.right)
        coeffs: dict[str, Fraction] = {}
        for s in problem.states:
            gap = utility(g.payoff(s)) - utility(f.payoff(s))
            if gap:
                coeffs[f"p:{s}"] = gap
        if j.rel == STRICTLY_LESS:
            if not coeffs:
                return FitFailure(
                    reason=(
                        f"acts {j.left!r} and {j.right!r} have identical utility "
                        f"profiles, so no measure can separate them"
                    )
                )
            coeffs["delta"] = Fraction(-1)
            lp.constrain(coeffs, ">=", Fraction(0))
        elif coeffs:
            lp.constrain(coeffs, "=", Fraction(0))
    result = lp.maximize({"delta": Fraction(1)})
    if result.status != OPTIMAL:
        return FitFailure(reason="no measure reproduces even the weak inequalities")
    if result.values["delta"] == 0:
        return FitFailure(
            reason="strict judgments cannot all hold with positive margin",
            margin=Fraction(0),
        )
    return ProbabilityMeasure(
        tuple(problem.states.labels),
        tuple((s, result.values[f"p:{s}"]) for s in problem.states),
    )


def fit_utility(
    problem: DecisionProblem, measure: ProbabilityMeasure
) -> Union[UtilityFunction, FitFailure]:
    """Utility making expected utility reproduce the judgments, normalized to [0, 1]."""
    lp = LinearProgram()
    for c in problem.consequences:
        lp.variable(f"u:{c}", upper=Fraction(1))
    lp.variable("delta", upper=Fraction(1))
    for j in problem.preferences:
        f = problem.act(j.left)
        g = problem.act(j.right)
        coeffs: dict[str, Fraction] = {}
        for s in problem.states:
            mass = measure.mass(s)
            if not mass:
                continue
            coeffs[f"u:{g.payoff(s)}"] = coeffs.get(f"u:{g.payoff(s)}", Fraction(0)) + mass
            coeffs[f"u:{f.payoff(s)}"] = coeffs.get(f"u:{f.payoff(s)}", Fraction(0)) - mass
        coeffs = {k: v for k, v in coeffs.items() if v}
        if j.rel == STRICTLY_LESS:
            if not coeffs:
                return FitFailure(
                    reason=(
                        f"acts {j.left!r} and {j.right!r} coincide almost surely "
                        f"under the measure, so no utility can separate them"
                    )
                )
            coeffs["delta"] = Fraction(-1)
            lp.constrain(coeffs, ">=", Fraction(0))
        elif coeffs:
            lp.constrain(coeffs, "=", Fraction(0))
    result = lp.maximize({"delta": Fraction(1)})
    if result.status != OPTIMAL:
        return FitFailure(reason="no utility reproduces even the weak inequalities")
    if result.values["delta"] == 0:
        return FitFailure(
            reason="strict judgments cannot all hold with positive margin",
            margin=Fraction(0),
        )
    utility = UtilityFunction(
        tuple((c, result.values[f"u:{c}"]) for c in problem.consequences)
    )
    return utility.normalized()


def fit_joint(
    problem: DecisionProblem,
    cap: int = 64,
    grid_steps: int = 4,
    max_rounds: int = 6,
) -> Optional[Representation]:
    """Search for a measure and utility fitting the judgments jointly.

    Tries utility seeds (monetary values, an even spread, coarse rational
    grids) against :func:`fit_probability`, alternates the two one-sided
    fits, then exhausts a rational utility grid when the consequence set is
    small.  Sound but not complete: a found representation is verified
    before being returned, and ``None`` only means the search failed.
    """
    n_states = len(problem.states)
    n_cons = len(problem.consequences)
    if n_states * n_cons > cap:
        raise ValueError(
            f"joint fit over {n_states} states x {n_cons} consequences exceeds "
            f"the cap {cap}; fit with a fixed utility or fixed measure instead"
        )

    def finish(measure, utility) -> Optional[Representation]:
        rep = Representation(measure, utility)
        if verify_agreement(problem, rep).ok:
            return rep
        return None

    labels = problem.consequences.labels
    seeds: list[UtilityFunction] = []
    values = problem.consequences.values
    if len(values) == len(labels) and len(set(values.values())) > 1:
        seeds.append(UtilityFunction.build(values).normalized())
    if len(labels) > 1:
        seeds.append(
            UtilityFunction.build(
                {c: Fraction(i, len(labels) - 1) for i, c in enumerate(labels)}
            )
        )
        seeds.append(
            UtilityFunction.build(
                {c: Fraction(i, len(labels) - 1) for i, c in enumerate(reversed(labels))}
            )
        )
    else:
        seeds.append(UtilityFunction.build({labels[0]: Fraction(1)}))

    for seed in seeds:
        measure = fit_probability(problem, seed)
        if isinstance(measure, ProbabilityMeasure):
            rep = finish(measure, seed)
            if rep:
                return rep

    # Alternate between the two one-sided fits from a uniform start.
    measure: Optional[ProbabilityMeasure] = ProbabilityMeasure.uniform(problem.states.labels)
    for _ in range(max_rounds):
        utility = fit_utility(problem, measure)
        if isinstance(utility, FitFailure):
            break
        refined = fit_probability(problem, utility)
        if isinstance(refined, FitFailure):
            break
        rep = finish(refined, utility)
        if rep:
            return rep
        if refined.masses == measure.masses:
            break
        measure = refined

    # Rational grid over utilities, coarse by design.
    grid = [Fraction(k, grid_steps) for k in range(grid_steps + 1)]
    if len(grid) ** n_cons <= 4096:
        for combo in itertools.product(grid, repeat=n_cons):
            utility = UtilityFunction(tuple(zip(labels, combo)))
            measure = fit_probability(problem, utility)
            if isinstance(measure, ProbabilityMeasure):
                rep = finish(measure, utility)
                if rep:
                    return rep
    return None
