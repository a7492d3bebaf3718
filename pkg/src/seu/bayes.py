"""Exact conditioning, posterior updating, and the uniform-composition urn.

Everything here is finite and rational: conditioning renormalizes within
the conditioning event, posteriors multiply priors by iid likelihoods, and
the urn model puts equal weight on every possible count of black balls in
the unknown part.  ``conglomerability_bound`` exposes the finite-partition
sanity law: the unconditional probability of an event always lies between
its smallest and largest conditional probability across a partition.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .problem import Event, ProblemFormatError
from .qualitative import ProbabilityMeasure
from .rational import format_rational, parse_rational


def condition(measure: ProbabilityMeasure, given: Event) -> ProbabilityMeasure:
    """Renormalize within ``given``; states outside drop to mass zero."""
    members = given.members if isinstance(given, Event) else frozenset(given)
    total = measure.of(members)
    if total == 0:
        raise ValueError("conditioning on a probability-zero event")
    return ProbabilityMeasure(
        measure.states,
        tuple(
            (s, measure.mass(s) / total if s in members else Fraction(0))
            for s in measure.states
        ),
    )


@dataclass(frozen=True)
class FiniteModel:
    """Finitely many hypotheses with iid observation likelihoods."""

    hypotheses: tuple[tuple[str, Fraction], ...]
    likelihoods: tuple[tuple[str, tuple[tuple[str, Fraction], ...]], ...]

    @staticmethod
    def build(
        hypotheses: Sequence[tuple[str, object]],
        likelihoods: Mapping[str, Mapping[str, object]],
    ) -> "FiniteModel":
        return FiniteModel(
            tuple((label, parse_rational(prior)) for label, prior in hypotheses),
            tuple(
                (label, tuple((obs, parse_rational(p)) for obs, p in table.items()))
                for label, table in likelihoods.items()
            ),
        )

    def __post_init__(self):
        labels = [label for label, _ in self.hypotheses]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate hypothesis labels")
        total = Fraction(0)
        for label, prior in self.hypotheses:
            if prior < 0:
                raise ValueError(f"negative prior on {label!r}")
            total += prior
        if total != 1:
            raise ValueError(f"priors sum to {total}, expected 1")
        tables = dict(self.likelihoods)
        for label in labels:
            if label not in tables:
                raise ValueError(f"no likelihood table for {label!r}")
            row = dict(tables[label])
            row_sum = Fraction(0)
            for obs, p in row.items():
                if p < 0:
                    raise ValueError(f"negative likelihood for {obs!r} under {label!r}")
                row_sum += p
            if row_sum != 1:
                raise ValueError(
                    f"likelihoods under {label!r} sum to {row_sum}, expected 1"
                )

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.hypotheses)

    def prior(self, label: str) -> Fraction:
        for l, p in self.hypotheses:
            if l == label:
                return p
        raise KeyError(label)

    def likelihood(self, label: str, observation: str) -> Fraction:
        for l, table in self.likelihoods:
            if l == label:
                for obs, p in table:
                    if obs == observation:
                        return p
                raise KeyError(observation)
        raise KeyError(label)

    def to_document(self) -> dict:
        return {
            "hypotheses": [
                {"label": l, "prior": format_rational(p)} for l, p in self.hypotheses
            ],
            "likelihoods": {
                l: {obs: format_rational(p) for obs, p in table}
                for l, table in self.likelihoods
            },
        }

    @staticmethod
    def from_document(doc: Mapping) -> "FiniteModel":
        try:
            hypotheses = [(h["label"], h["prior"]) for h in doc["hypotheses"]]
            likelihoods = doc["likelihoods"]
        except (KeyError, TypeError) as exc:
            raise ProblemFormatError(f"malformed model document: {exc}") from exc
        return FiniteModel.build(hypotheses, likelihoods)


def posterior(model: FiniteModel, observations: Sequence[str]) -> list[Fraction]:
    """Posterior masses over hypotheses after iid observations, in order."""
    weights = []
    for label, prior in model.hypotheses:
        w = prior
        for obs in observations:
            w *= model.likelihood(label, obs)
        weights.append(w)
    total = sum(weights, Fraction(0))
    if total == 0:
        raise ValueError("observed sequence has probability zero under every hypothesis")
    return [w / total for w in weights]


@dataclass(frozen=True)
class UrnModel:
    """Unknown black/other split with a uniform prior over the counts.

    ``n_unknown`` balls are each black or not; every count k = 0..n is
    equally likely.  A draw from the unknown part alone is black with
    probability 1/2 regardless of n; adding ``fixed_red`` known red balls
    dilutes the expectation over the whole urn.
    """

    n_unknown: int

    def __post_init__(self):
        if self.n_unknown < 0:
            raise ValueError("need a non-negative number of unknown balls")

    @property
    def compositions(self) -> range:
        return range(self.n_unknown + 1)

    def composition_probability(self, k: int) -> Fraction:
        if k not in self.compositions:
            raise ValueError(f"no composition with {k} black balls")
        return Fraction(1, self.n_unknown + 1)

    def expected_black(self) -> Fraction:
        return Fraction(self.n_unknown, 2)

    def marginal_black(self) -> Fraction:
        """Chance a draw from the unknown part is black: exactly 1/2."""
        if self.n_unknown == 0:
            raise ValueError("no unknown balls to draw from")
        total = Fraction(0)
        for k in self.compositions:
            total += self.composition_probability(k) * Fraction(k, self.n_unknown)
        return total

    def full_urn_marginal(self, fixed_red: int) -> Fraction:
        """Chance a draw from the whole urn (red part included) is black."""
        if fixed_red < 0:
            raise ValueError("fixed red count must be non-negative")
        size = fixed_red + self.n_unknown
        if size == 0:
            raise ValueError("empty urn")
        total = Fraction(0)
        for k in self.compositions:
            total += self.composition_probability(k) * Fraction(k, size)
        return total

    def as_model(self) -> FiniteModel:
        """Hypotheses k = 0..n with draw likelihoods k/n black, (n-k)/n other."""
        if self.n_unknown == 0:
            raise ValueError("draw likelihoods need at least one unknown ball")
        n = self.n_unknown
        return FiniteModel.build(
            [(f"k={k}", Fraction(1, n + 1)) for k in self.compositions],
            {
                f"k={k}": {"black": Fraction(k, n), "other": Fraction(n - k, n)}
                for k in self.compositions
            },
        )


def laplace_urn(n_unknown: int) -> UrnModel:
    return UrnModel(n_unknown)


def conglomerability_bound(
    measure: ProbabilityMeasure, event: Event, partition: Sequence[Event]
) -> tuple[Fraction, Fraction, bool]:
    """(min, max) of P(event | cell) over the partition, and the sandwich test.

    The partition must cover the space with disjoint positive-mass cells.
    For finite partitions the unconditional P(event) always lands inside
    the bracket; the boolean is returned so the law stays a checked fact.
    """
    cells = [e.members if isinstance(e, Event) else frozenset(e) for e in partition]
    if not cells:
        raise ValueError("empty partition")
    seen: set[str] = set()
    for members in cells:
        if members & seen:
            raise ValueError("partition cells overlap")
        seen |= members
    if seen != set(measure.states):
        raise ValueError("partition does not cover the state space")
    target = event.members if isinstance(event, Event) else frozenset(event)
    ratios = []
    for members in cells:
        mass = measure.of(members)
        if mass == 0:
            raise ValueError("partition cell has probability zero")
        ratios.append(measure.of(target & members) / mass)
    lo, hi = min(ratios), max(ratios)
    p = measure.of(target)
    return lo, hi, lo <= p <= hi
