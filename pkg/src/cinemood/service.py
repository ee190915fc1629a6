"""HTTP facade over the catalog and recommender for the companion UI.

Sessions live in memory; recommendations are recomputed on every read so
weight/threshold what-ifs are reflected immediately.  The recommendation
payload is byte-for-byte the same JSON object the CLI emits under --json,
which keeps the two surfaces impossible to disagree.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, ConfigDict

from cinemood.catalog import Catalog
from cinemood.emotions import ChannelWeights, emotion_set_key, to_emotion_set
from cinemood.recommender import GroupSession, Participant, recommend


class SessionCreateBody(BaseModel):
    model_config = ConfigDict(extra="forbid")
    id: str | None = None
    pool: list[str] | None = None


class ParticipantBody(BaseModel):
    model_config = ConfigDict(extra="forbid")
    id: str
    favorite_movie_id: str


class ParamsBody(BaseModel):
    model_config = ConfigDict(extra="forbid")
    weights: dict[str, float] | None = None
    threshold: float | None = None
    genre_filter: bool | None = None


@dataclass
class SessionStore:
    """In-memory sessions; mutations serialized per session id."""

    catalog: Catalog
    sessions: dict[str, GroupSession] = field(default_factory=dict)
    locks: dict[str, threading.Lock] = field(default_factory=dict)
    store_lock: threading.Lock = field(default_factory=threading.Lock)

    def create(self, session_id: str | None, pool: list[str] | None) -> GroupSession:
        with self.store_lock:
            sid = session_id or uuid.uuid4().hex[:12]
            if sid in self.sessions:
                raise HTTPException(status_code=409, detail=f"session {sid!r} already exists")
            if pool is None:
                pool = list(self.catalog.movies)
            unknown = [m for m in pool if m not in self.catalog.movies]
            if unknown:
                raise HTTPException(status_code=404, detail=f"unknown movie id {unknown[0]!r} in pool")
            if not pool:
                raise HTTPException(status_code=422, detail="pool: must not be empty")
            session = GroupSession(
                id=sid,
                participants=[],
                pool=pool,
                weights=self.catalog.weights,
                threshold=self.catalog.threshold,
            )
            self.sessions[sid] = session
            self.locks[sid] = threading.Lock()
            return session

    def get(self, session_id: str) -> tuple[GroupSession, threading.Lock]:
        with self.store_lock:
            session = self.sessions.get(session_id)
            if session is None:
                raise HTTPException(status_code=404, detail=f"unknown session id {session_id!r}")
            return session, self.locks[session_id]


def _session_view(session: GroupSession) -> dict:
    return {
        "id": session.id,
        "participants": [
            {"id": p.id, "favorite_movie_id": p.favorite_movie_id} for p in session.participants
        ],
        "pool": list(session.pool),
        "weights": session.weights.as_dict(),
        "threshold": session.threshold,
        "genre_filter": session.genre_filter_enabled,
    }


def create_app(catalog: Catalog, cors_origin: str = "*") -> FastAPI:
    app = FastAPI(title="cinemood", version="1")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[cors_origin],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SessionStore(catalog=catalog)
    app.state.store = store

    @app.get("/v1/movies")
    def list_movies() -> list[dict]:
        return [
            {"id": m.id, "title": m.title, "year": m.year, "genres": list(m.genres)}
            for m in catalog.movies.values()
        ]

    @app.get("/v1/movies/{movie_id}")
    def get_movie(movie_id: str) -> dict:
        record = catalog.movies.get(movie_id)
        if record is None:
            raise HTTPException(status_code=404, detail=f"unknown movie id {movie_id!r}")
        return {
            "id": record.id,
            "title": record.title,
            "year": record.year,
            "genres": list(record.genres),
            "description": record.description,
            "channels": {name: profile.as_dict() for name, profile in record.channels.items()},
            "provenance": dict(record.provenance),
            "fused": record.fused.as_dict() if record.fused else None,
            "emotion_set": emotion_set_key(to_emotion_set(record.fused, catalog.threshold))
            if record.fused
            else [],
        }

    @app.post("/v1/sessions", status_code=201)
    def create_session(body: SessionCreateBody) -> dict:
        return _session_view(store.create(body.id, body.pool))

    @app.get("/v1/sessions/{session_id}")
    def get_session(session_id: str) -> dict:
        session, _ = store.get(session_id)
        return _session_view(session)

    @app.post("/v1/sessions/{session_id}/participants", status_code=201)
    def add_participant(session_id: str, body: ParticipantBody) -> dict:
        session, lock = store.get(session_id)
        if body.favorite_movie_id not in catalog.movies:
            raise HTTPException(
                status_code=404, detail=f"unknown movie id {body.favorite_movie_id!r}"
            )
        with lock:
            if any(p.id == body.id for p in session.participants):
                raise HTTPException(status_code=409, detail=f"duplicate participant {body.id!r}")
            session.participants.append(
                Participant(id=body.id, favorite_movie_id=body.favorite_movie_id)
            )
            return _session_view(session)

    @app.delete("/v1/sessions/{session_id}/participants/{participant_id}")
    def remove_participant(session_id: str, participant_id: str) -> dict:
        session, lock = store.get(session_id)
        with lock:
            remaining = [p for p in session.participants if p.id != participant_id]
            if len(remaining) == len(session.participants):
                raise HTTPException(
                    status_code=404, detail=f"unknown participant id {participant_id!r}"
                )
            session.participants[:] = remaining
            return _session_view(session)

    @app.put("/v1/sessions/{session_id}/params")
    def update_params(session_id: str, body: ParamsBody) -> dict:
        session, lock = store.get(session_id)
        with lock:
            if body.weights is not None:
                try:
                    session.weights = ChannelWeights.from_dict(body.weights)
                except ValueError as exc:
                    raise HTTPException(status_code=422, detail=f"weights: {exc}") from exc
            if body.threshold is not None:
                if not 0.0 <= body.threshold < 1.0:
                    raise HTTPException(status_code=422, detail="threshold: must be in [0, 1)")
                session.threshold = body.threshold
            if body.genre_filter is not None:
                session.genre_filter_enabled = body.genre_filter
            return _session_view(session)

    @app.get("/v1/sessions/{session_id}/recommendation")
    def get_recommendation(session_id: str) -> dict:
        session, lock = store.get(session_id)
        with lock:
            if not session.participants:
                raise HTTPException(status_code=422, detail="no participants")
            snapshot = GroupSession(
                id=session.id,
                participants=list(session.participants),
                pool=list(session.pool),
                weights=session.weights,
                threshold=session.threshold,
                genre_filter_enabled=session.genre_filter_enabled,
            )
        try:
            return recommend(snapshot, catalog).as_dict()
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    return app
