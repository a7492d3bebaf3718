"""HTTP face of the elicitation sessions.

Thin JSON plumbing over :mod:`seu.elicit`: every endpoint body is a
direct rendering of a session snapshot, with prices and interval
endpoints as exact "p/q" strings.  Session state lives in a per-app
in-process store; answer and preference posts go through the store's
atomic update so concurrent writers to one session serialize.
"""
from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .elicit import (
    ElicitationSession,
    SessionError,
    SessionStore,
    create_session,
    next_query,
    record_preference,
    report,
    submit_answer,
)
from .problem import ProblemFormatError
from .rational import RationalFormatError, format_rational


class SessionConfig(BaseModel):
    event_description: str = Field(min_length=1)
    target_width: str = "1/1024"
    payoff_scale: str = "1"
    problem: Optional[dict] = None


class AnswerBody(BaseModel):
    response: str


class PreferenceBody(BaseModel):
    left: str
    right: str
    rel: str


def create_app(store: Optional[SessionStore] = None) -> FastAPI:
    app = FastAPI(title="betting-price elicitation", version="0.1.0")
    sessions = store if store is not None else SessionStore()
    app.state.sessions = sessions

    def fetch(session_id: str) -> ElicitationSession:
        try:
            return sessions.get(session_id)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"no session {session_id}")

    @app.post("/sessions", status_code=201)
    def create(config: SessionConfig) -> dict:
        try:
            session = create_session(
                event_description=config.event_description,
                target_width=config.target_width,
                payoff_scale=config.payoff_scale,
                problem=config.problem,
            )
        except (ValueError, RationalFormatError, ProblemFormatError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        sessions.add(session)
        return {"id": session.session_id, "report": report(session)}

    @app.get("/sessions/{session_id}/query")
    def query(session_id: str) -> dict:
        session = fetch(session_id)
        try:
            pending = next_query(session)
        except SessionError as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        return {
            "price": format_rational(pending.price),
            "money_price": format_rational(pending.price * session.payoff_scale),
            "payoff": format_rational(session.payoff_scale),
            "framing": pending.framing,
        }

    @app.post("/sessions/{session_id}/answer")
    def answer(session_id: str, body: AnswerBody) -> dict:
        fetch(session_id)
        try:
            session = sessions.update(
                session_id, lambda s: submit_answer(s, body.response)
            )
        except SessionError as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return report(session)

    @app.post("/sessions/{session_id}/preference")
    def preference(session_id: str, body: PreferenceBody) -> dict:
        fetch(session_id)
        try:
            session = sessions.update(
                session_id,
                lambda s: record_preference(s, body.left, body.right, body.rel),
            )
        except SessionError as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        except (ValueError, ProblemFormatError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return report(session)

    @app.get("/sessions/{session_id}/report")
    def session_report(session_id: str) -> dict:
        return report(fetch(session_id))

    return app


app = create_app()
