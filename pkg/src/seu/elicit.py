"""Interactive probability elicitation by price bisection, with live checks.

The respondent faces a $1-scale bet on a described event and a sequence of
candidate prices.  At each price they may pay it (so their probability is
at least the price, since the bookie could profitably reverse the roles
otherwise), take the bookie side (probability at most the price), or
declare indifference (the price is their fair one).  Each answer halves
the candidate interval, so the width after k answers is 2^-k and the true
subjective probability never escapes the interval.

Sessions are immutable snapshots: every operation returns a new session,
and replaying a transcript reproduces the final state exactly.  A session
may also carry a decision problem; judgments recorded against it re-run
the ordering, sure-thing, and dominance checks and surface any violation
as soon as it is entailed.
"""
from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Union

from .axioms import check_p1_transitivity, check_p2, check_p7
from .problem import (
    DecisionProblem,
    Judgment,
    problem_from_document,
    problem_to_document,
)
from .rational import format_rational, parse_rational
from .reports import ViolationReport, VIOLATED

PLAYER = "player"
BOOKIE = "bookie"
INDIFFERENT = "indifferent"
RESPONSES = (PLAYER, BOOKIE, INDIFFERENT)

ACTIVE = "active"
CONVERGED = "converged"
ABANDONED = "abandoned"


class SessionError(Exception):
    """Operation incompatible with the session's current status."""


@dataclass(frozen=True)
class ElicitationSession:
    session_id: str
    event_description: str
    target_width: Fraction
    payoff_scale: Fraction
    lo: Fraction
    hi: Fraction
    transcript: tuple[tuple[Fraction, str], ...]
    status: str
    problem: Optional[DecisionProblem] = None
    violations: tuple[ViolationReport, ...] = ()

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def estimate(self) -> Optional[Fraction]:
        """Point estimate, available once converged."""
        if self.status != CONVERGED:
            return None
        return (self.lo + self.hi) / 2

    @property
    def fair_price(self) -> Optional[Fraction]:
        """Estimate scaled to the payoff: the money price of the bet."""
        estimate = self.estimate
        if estimate is None:
            return None
        return estimate * self.payoff_scale


def create_session(
    event_description: str,
    target_width,
    payoff_scale=1,
    problem: Optional[Union[DecisionProblem, Mapping]] = None,
    session_id: Optional[str] = None,
) -> ElicitationSession:
    width = parse_rational(target_width)
    if not 0 < width < 1:
        raise ValueError(f"target width {width} must be strictly between 0 and 1")
    scale = parse_rational(payoff_scale)
    if scale <= 0:
        raise ValueError("payoff scale must be positive")
    if problem is not None and not isinstance(problem, DecisionProblem):
        problem = problem_from_document(problem)
    return ElicitationSession(
        session_id=session_id or uuid.uuid4().hex,
        event_description=event_description,
        target_width=width,
        payoff_scale=scale,
        lo=Fraction(0),
        hi=Fraction(1),
        transcript=(),
        status=ACTIVE,
        problem=problem,
    )


@dataclass(frozen=True)
class Query:
    price: Fraction
    framing: str


def next_query(session: ElicitationSession) -> Query:
    """The pending price question: always the midpoint of the interval."""
    if session.status != ACTIVE:
        raise SessionError(f"session is {session.status}; no query is pending")
    price = (session.lo + session.hi) / 2
    money = format_rational(price * session.payoff_scale)
    payoff = format_rational(session.payoff_scale)
    framing = (
        f"Would you pay {money} for a bet returning {payoff} if "
        f"{session.event_description}? The bookie may reverse the roles at "
        f"this same price, so answer '{PLAYER}' only if the bet is worth at "
        f"least that to you, '{BOOKIE}' if you would rather sell it, or "
        f"'{INDIFFERENT}' if the price is exactly fair."
    )
    return Query(price, framing)


def submit_answer(session: ElicitationSession, response: str) -> ElicitationSession:
    """Halve the interval according to the response to the pending query."""
    if session.status != ACTIVE:
        raise SessionError(f"session is {session.status}; no query is pending")
    if response not in RESPONSES:
        raise ValueError(f"unknown response {response!r}; expected one of {RESPONSES}")
    price = (session.lo + session.hi) / 2
    lo, hi = session.lo, session.hi
    if response == PLAYER:
        lo = price
    elif response == BOOKIE:
        hi = price
    else:
        lo = hi = price
    status = CONVERGED if hi - lo <= session.target_width else ACTIVE
    return replace(
        session,
        lo=lo,
        hi=hi,
        status=status,
        transcript=session.transcript + ((price, response),),
    )


def abandon(session: ElicitationSession) -> ElicitationSession:
    if session.status != ACTIVE:
        raise SessionError(f"session is already {session.status}")
    return replace(session, status=ABANDONED)


def record_preference(
    session: ElicitationSession, left: str, right: str, rel: str
) -> ElicitationSession:
    """Add a judgment to the session's problem and re-run the live checks.

    Any ordering-cycle, sure-thing, or dominance report that the enlarged
    judgment set newly violates is appended to the violation feed.
    Incompleteness is deliberately not fed back: a session in progress is
    incomplete until the respondent has been asked everything.
    """
    if session.problem is None:
        raise SessionError("session carries no decision problem")
    problem = session.problem
    for name in (left, right):
        if not problem.has_act(name):
            raise ValueError(f"unknown act {name!r}")
    judgment = Judgment(left, right, rel)
    updated = problem.replace_preferences(problem.preferences.with_judgment(judgment))
    feed = list(session.violations)
    for check in (check_p1_transitivity, check_p2, check_p7):
        report = check(updated)
        if report.verdict == VIOLATED and report not in feed:
            feed.append(report)
    return replace(session, problem=updated, violations=tuple(feed))


def report(session: ElicitationSession) -> dict:
    """JSON-ready summary of everything the session knows."""
    doc: dict = {
        "session_id": session.session_id,
        "event_description": session.event_description,
        "status": session.status,
        "interval": {
            "lo": format_rational(session.lo),
            "hi": format_rational(session.hi),
        },
        "width": format_rational(session.width),
        "target_width": format_rational(session.target_width),
        "payoff_scale": format_rational(session.payoff_scale),
        "answers": len(session.transcript),
        "transcript": [
            {"price": format_rational(price), "response": response}
            for price, response in session.transcript
        ],
        "estimate": None,
        "fair_price": None,
        "violations": [v.to_document() for v in session.violations],
    }
    if session.estimate is not None:
        doc["estimate"] = format_rational(session.estimate)
        doc["fair_price"] = format_rational(session.fair_price)
    if session.problem is not None:
        doc["judgments"] = [
            {"left": j.left, "right": j.right, "rel": j.rel}
            for j in session.problem.preferences
        ]
    return doc


def session_to_document(session: ElicitationSession) -> dict:
    doc = report(session)
    if session.problem is not None:
        doc["problem"] = problem_to_document(session.problem)
    return doc


def scripted_respondent(hidden_p) -> Callable[[Fraction], str]:
    """Answers price queries the way an agent with a known probability would."""
    p = parse_rational(hidden_p)
    if not 0 <= p <= 1:
        raise ValueError(f"hidden probability {p} outside [0, 1]")

    def respond(price: Fraction) -> str:
        if price < p:
            return PLAYER
        if price > p:
            return BOOKIE
        return INDIFFERENT

    return respond


def run_script(
    session: ElicitationSession,
    respond: Callable[[Fraction], str],
    max_answers: int = 64,
) -> ElicitationSession:
    """Drive the session with a respondent callback until it converges."""
    for _ in range(max_answers):
        if session.status != ACTIVE:
            break
        session = submit_answer(session, respond(next_query(session).price))
    return session


class SessionStore:
    """In-process session registry; per-session updates are serialized."""

    def __init__(self):
        self._sessions: dict[str, ElicitationSession] = {}
        self._lock = threading.RLock()

    def add(self, session: ElicitationSession) -> ElicitationSession:
        with self._lock:
            if session.session_id in self._sessions:
                raise KeyError(f"session {session.session_id} already exists")
            self._sessions[session.session_id] = session
        return session

    def get(self, session_id: str) -> ElicitationSession:
        with self._lock:
            if session_id not in self._sessions:
                raise KeyError(f"no session {session_id}")
            return self._sessions[session_id]

    def update(
        self,
        session_id: str,
        transition: Callable[[ElicitationSession], ElicitationSession],
    ) -> ElicitationSession:
        """Apply a transition atomically and store the resulting snapshot."""
        with self._lock:
            updated = transition(self.get(session_id))
            self._sessions[session_id] = updated
            return updated

    def ids(self) -> list[str]:
        with self._lock:
            return sorted(self._sessions)
