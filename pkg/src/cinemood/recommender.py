"""Group sessions: rank candidate movies by emotional fit with the group.

For every candidate movie and every participant, the similarity is the
Jaccard index between the movie's emotion set and the participant's favorite
movie's emotion set (both obtained by thresholding the fused profiles under
the session's weights).  A candidate's consensus score is the mean over ALL
participants; candidates tie-sorted by score then id.  The top set may then
be narrowed to movies sharing a genre with somebody's favorite.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from cinemood.catalog import Catalog, MovieRecord
from cinemood.emotions import (
    DEFAULT_THRESHOLD,
    ChannelWeights,
    DegenerateSetPair,
    Emotion,
    EmotionProfile,
    emotion_set_key,
    jaccard,
    mean_jaccard,
    to_emotion_set,
)


@dataclass(frozen=True)
class Participant:
    id: str
    favorite_movie_id: str


@dataclass
class GroupSession:
    id: str
    participants: list[Participant]
    pool: list[str]
    weights: ChannelWeights = ChannelWeights()
    threshold: float = DEFAULT_THRESHOLD
    genre_filter_enabled: bool = True

    def __post_init__(self) -> None:
        if not self.pool:
            raise ValueError(f"session {self.id!r}: candidate pool is empty")
        ids = [p.id for p in self.participants]
        if len(set(ids)) != len(ids):
            raise ValueError(f"session {self.id!r}: duplicate participant ids")


@dataclass(frozen=True)
class CandidateScore:
    movie_id: str
    title: str
    per_participant: dict[str, float]  # participant id -> jaccard
    aggregated: float
    rank: int  # competition ranking: 1 + number of strictly better scores
    emotion_set: frozenset[Emotion]


@dataclass
class RecommendationResult:
    session_id: str
    weights: ChannelWeights
    threshold: float
    scores: list[CandidateScore]  # sorted by (-aggregated, movie_id)
    top_movie_ids: list[str]  # after genre filtering, ascending id
    genre_filter: dict  # {"enabled", "acted", "removed"}
    degenerate_participants: list[str]
    degenerate_pairs: list[tuple[str, str]]  # (movie_id, participant_id)

    def as_dict(self) -> dict:
        """Stable JSON shape shared by the CLI and the HTTP service."""
        return {
            "session_id": self.session_id,
            "weights": self.weights.as_dict(),
            "threshold": self.threshold,
            "scores": [
                {
                    "movie_id": s.movie_id,
                    "title": s.title,
                    "per_participant": dict(sorted(s.per_participant.items())),
                    "aggregated": s.aggregated,
                    "rank": s.rank,
                    "emotion_set": emotion_set_key(s.emotion_set),
                }
                for s in self.scores
            ],
            "top_movie_ids": list(self.top_movie_ids),
            "genre_filter": dict(self.genre_filter),
            "degenerate_participants": list(self.degenerate_participants),
            "degenerate_pairs": [list(p) for p in self.degenerate_pairs],
        }


def _scoring_set(record: MovieRecord, weights: ChannelWeights, threshold: float) -> frozenset[Emotion]:
    """Threshold the record's fusion under the session's own weights.

    Recomputing from the cached channel profiles (rather than trusting the
    catalog's cached fusion) is what lets a session re-weight channels on the
    fly.
    """
    return to_emotion_set(record.fused_under(weights), threshold)


def filter_by_genre(
    top_set: list[MovieRecord], favorites: list[MovieRecord]
) -> tuple[list[MovieRecord], bool]:
    """Keep top-set movies sharing a genre with any favorite.

    Never empties the recommendation: when nothing overlaps, the unfiltered
    top set comes back and the second return value reports the filter as
    inert.
    """
    if not top_set:
        raise ValueError("empty top set")
    wanted = {g.casefold() for fav in favorites for g in fav.genres}
    kept = [m for m in top_set if any(g.casefold() in wanted for g in m.genres)]
    if not kept or len(kept) == len(top_set):
        return top_set, False
    return kept, True


def recommend(session: GroupSession, catalog: Catalog) -> RecommendationResult:
    """Score, rank and genre-filter the session's candidate pool."""
    candidates = [catalog.get(mid) for mid in session.pool]
    favorites = {p.id: catalog.get(p.favorite_movie_id) for p in session.participants}
    if not session.participants:
        raise ValueError("no participants")

    favorite_sets: dict[str, frozenset[Emotion]] = {}
    degenerate_participants = []
    for p in session.participants:
        fav_set = _scoring_set(favorites[p.id], session.weights, session.threshold)
        favorite_sets[p.id] = fav_set
        if not fav_set:
            degenerate_participants.append(p.id)
    if len(degenerate_participants) == len(session.participants):
        raise ValueError("all participants have degenerate favorites at this threshold")

    degenerate_pairs: list[tuple[str, str]] = []
    rows: list[tuple[str, str, dict[str, float], float, frozenset[Emotion]]] = []
    for movie in candidates:
        movie_set = _scoring_set(movie, session.weights, session.threshold)
        per_participant: dict[str, float] = {}
        for p in session.participants:
            try:
                value = jaccard(movie_set, favorite_sets[p.id])
            except DegenerateSetPair:
                value = 0.0
                degenerate_pairs.append((movie.id, p.id))
            per_participant[p.id] = value
        rows.append((movie.id, movie.title, per_participant, mean_jaccard(per_participant.values()), movie_set))

    rows.sort(key=lambda r: (-r[3], r[0]))
    scores = [
        CandidateScore(
            movie_id=mid,
            title=title,
            per_participant=per,
            aggregated=agg,
            rank=1 + sum(1 for other in rows if other[3] > agg),
            emotion_set=eset,
        )
        for mid, title, per, agg, eset in rows
    ]

    best = scores[0].aggregated
    top_records = [catalog.get(s.movie_id) for s in scores if s.aggregated == best]
    filter_report = {"enabled": session.genre_filter_enabled, "acted": False, "removed": []}
    if session.genre_filter_enabled:
        kept, acted = filter_by_genre(top_records, list(favorites.values()))
        filter_report["acted"] = acted
        filter_report["removed"] = sorted({m.id for m in top_records} - {m.id for m in kept})
        top_records = kept
    top_ids = sorted(m.id for m in top_records)

    return RecommendationResult(
        session_id=session.id,
        weights=session.weights,
        threshold=session.threshold,
        scores=scores,
        top_movie_ids=top_ids,
        genre_filter=filter_report,
        degenerate_participants=degenerate_participants,
        degenerate_pairs=degenerate_pairs,
    )


def load_session(path: str | Path) -> GroupSession:
    """Parse a session file: {id, participants, pool, weights, threshold, genre_filter}."""
    obj = json.loads(Path(path).read_text(encoding="utf-8"))
    try:
        participants = [
            Participant(id=str(p["id"]), favorite_movie_id=str(p["favorite_movie_id"]))
            for p in obj.get("participants", [])
        ]
        weights = (
            ChannelWeights.from_dict(obj["weights"]) if "weights" in obj else ChannelWeights()
        )
        return GroupSession(
            id=str(obj["id"]),
            participants=participants,
            pool=[str(m) for m in obj["pool"]],
            weights=weights,
            threshold=float(obj.get("threshold", DEFAULT_THRESHOLD)),
            genre_filter_enabled=bool(obj.get("genre_filter", True)),
        )
    except KeyError as exc:
        raise ValueError(f"session file {path}: missing field {exc}") from exc


def save_session(session: GroupSession, path: str | Path) -> None:
    payload = {
        "id": session.id,
        "participants": [
            {"id": p.id, "favorite_movie_id": p.favorite_movie_id} for p in session.participants
        ],
        "pool": list(session.pool),
        "weights": session.weights.as_dict(),
        "threshold": session.threshold,
        "genre_filter": session.genre_filter_enabled,
    }
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
