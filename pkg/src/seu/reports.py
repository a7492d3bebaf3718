"""Check reports: verdicts plus re-checkable witnesses.

A check never invents data.  Its verdict is

* ``violated`` when it found at least one witness (and every witness can be
  re-evaluated against the problem it came from),
* ``not-decidable-from-data`` when instances of the check existed but none
  of them could be decided from the declared judgments,
* ``satisfied`` otherwise, including vacuously (no instances at all).

``undecided`` lists the instances that were skipped for missing judgments,
so a ``satisfied`` verdict is transparent about how much it actually saw.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

SATISFIED = "satisfied"
VIOLATED = "violated"
NOT_DECIDABLE = "not-decidable-from-data"


@dataclass(frozen=True)
class Witness:
    """One concrete counterexample, with enough detail to re-check it."""

    kind: str
    detail: tuple[tuple[str, object], ...]
    note: str = ""

    @staticmethod
    def build(kind: str, detail: Mapping[str, object], note: str = "") -> "Witness":
        return Witness(kind, tuple(detail.items()), note)

    def get(self, key: str):
        for k, v in self.detail:
            if k == key:
                return v
        raise KeyError(key)

    def to_document(self) -> dict:
        doc: dict = {"kind": self.kind}
        doc.update({k: v for k, v in self.detail})
        if self.note:
            doc["note"] = self.note
        return doc


@dataclass(frozen=True)
class ViolationReport:
    axiom: str
    verdict: str
    witnesses: tuple[Witness, ...] = ()
    undecided: tuple[dict, ...] = ()
    detail: dict = field(default_factory=dict, compare=False)

    @property
    def ok(self) -> bool:
        return self.verdict == SATISFIED

    def to_document(self) -> dict:
        doc = {
            "axiom": self.axiom,
            "verdict": self.verdict,
            "witnesses": [w.to_document() for w in self.witnesses],
        }
        if self.undecided:
            doc["undecided"] = list(self.undecided)
        if self.detail:
            doc["detail"] = dict(self.detail)
        return doc


def build_report(
    axiom: str,
    witnesses: Sequence[Witness],
    decided: int,
    undecided: Sequence[dict] = (),
    detail: Optional[dict] = None,
) -> ViolationReport:
    """Apply the verdict policy described in the module docstring."""
    if witnesses:
        verdict = VIOLATED
    elif undecided and decided == 0:
        verdict = NOT_DECIDABLE
    else:
        verdict = SATISFIED
    return ViolationReport(
        axiom=axiom,
        verdict=verdict,
        witnesses=tuple(witnesses),
        undecided=tuple(undecided),
        detail=detail or {},
    )
