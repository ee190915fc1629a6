"""Prediction-quality checks against survey data.

Surveys give a human emotion profile per movie (proportion of times each
emotion was picked).  The evaluator compares the catalog's fused profiles
with the survey profiles via thresholded-set Jaccard, and correlates each
individual channel against the human scores.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from collections.abc import Sequence
from pathlib import Path

from cinemood.catalog import CHANNELS, Catalog
from cinemood.emotions import (
    DEFAULT_THRESHOLD,
    EMOTIONS,
    DegenerateSetPair,
    EmotionProfile,
    jaccard,
    mean_jaccard,
    to_emotion_set,
)

_SURVEY_SUM_TOLERANCE = 0.02  # printed survey rows are rounded proportions


@dataclass(frozen=True)
class SurveyRecord:
    movie_id: str
    profile: EmotionProfile

    def __post_init__(self) -> None:
        total = sum(self.profile.as_dict().values())
        if abs(total - 1.0) > _SURVEY_SUM_TOLERANCE:
            raise ValueError(
                f"survey row {self.movie_id!r}: proportions sum to {total:.3f}, expected 1 +/- {_SURVEY_SUM_TOLERANCE}"
            )


def load_surveys(path: str | Path) -> list[SurveyRecord]:
    """JSON array of {movie_id, profile}."""
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(raw, list):
        raise ValueError(f"{path}: survey file must be a JSON array")
    records = []
    for obj in raw:
        try:
            records.append(
                SurveyRecord(movie_id=str(obj["movie_id"]), profile=EmotionProfile.from_dict(obj["profile"]))
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"{path}: malformed survey row {obj!r}: {exc}") from exc
    return records


@dataclass
class EvaluationReport:
    per_movie: list[tuple[str, float]]  # survey order
    mean: float
    degenerate_movie_ids: list[str]

    def as_dict(self) -> dict:
        return {
            "per_movie": [{"movie_id": mid, "jaccard": value} for mid, value in self.per_movie],
            "mean": self.mean,
            "degenerate_movie_ids": list(self.degenerate_movie_ids),
        }


def evaluate_predictions(
    catalog: Catalog,
    surveys: Sequence[SurveyRecord],
    threshold: float = DEFAULT_THRESHOLD,
) -> EvaluationReport:
    """Jaccard between predicted (fused) and surveyed emotion sets, per movie."""
    if not surveys:
        raise ValueError("no survey rows")
    per_movie = []
    degenerate = []
    for row in surveys:
        record = catalog.get(row.movie_id)
        if record.fused is None:
            raise ValueError(f"movie {row.movie_id!r} has no fused profile")
        predicted = to_emotion_set(record.fused, threshold)
        human = to_emotion_set(row.profile, threshold)
        try:
            value = jaccard(predicted, human)
        except DegenerateSetPair:
            value = 0.0
            degenerate.append(row.movie_id)
        per_movie.append((row.movie_id, value))
    return EvaluationReport(
        per_movie=per_movie,
        mean=mean_jaccard(v for _, v in per_movie),
        degenerate_movie_ids=degenerate,
    )


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Sample Pearson correlation coefficient."""
    if len(xs) != len(ys):
        raise ValueError(f"series lengths differ: {len(xs)} vs {len(ys)}")
    n = len(xs)
    if n < 2:
        raise ValueError("need at least two points")
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    syy = sum((y - my) ** 2 for y in ys)
    if sxx == 0 or syy == 0:
        raise ValueError("zero variance: a constant series has no correlation")
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    return sxy / math.sqrt(sxx * syy)


@dataclass
class ChannelCorrelations:
    values: dict[str, float]  # channel -> r, only for channels that correlate
    errors: dict[str, str]  # channel -> reason (e.g. zero variance)

    def as_dict(self) -> dict:
        return {"values": dict(self.values), "errors": dict(self.errors)}


def channel_correlations(catalog: Catalog, surveys: Sequence[SurveyRecord]) -> ChannelCorrelations:
    """Per-channel Pearson r against the survey scores.

    Pairs are flattened over (movie, emotion), ordered by movie id then
    canonical emotion order, and correlated channel-score vs human-score.
    """
    rows = sorted(surveys, key=lambda r: r.movie_id)
    values: dict[str, float] = {}
    errors: dict[str, str] = {}
    for channel in CHANNELS:
        xs: list[float] = []
        ys: list[float] = []
        for row in rows:
            record = catalog.get(row.movie_id)
            profile = record.channel(channel)
            if profile is None:
                raise ValueError(f"movie {row.movie_id!r} has no {channel} profile")
            for e in EMOTIONS:
                xs.append(profile.score(e))
                ys.append(row.profile.score(e))
        try:
            values[channel] = pearson(xs, ys)
        except ValueError as exc:
            errors[channel] = str(exc)
    return ChannelCorrelations(values=values, errors=errors)


def format_report(report: EvaluationReport, catalog: Catalog) -> str:
    """Plain-text two-row layout: movie titles, then their Jaccard values."""
    titles = [catalog.get(mid).title for mid, _ in report.per_movie]
    values = [f"{v:.2f}" for _, v in report.per_movie]
    widths = [max(len(t), len(v)) for t, v in zip(titles, values)]
    head = "  ".join(t.ljust(w) for t, w in zip(titles, widths))
    body = "  ".join(v.ljust(w) for v, w in zip(values, widths))
    lines = [
        "Movie    " + head,
        "Jaccard  " + body,
        f"Mean Jaccard similarity: {report.mean:.2f}",
    ]
    if report.degenerate_movie_ids:
        lines.append(
            "Degenerate (both emotion sets empty, scored 0): "
            + ", ".join(report.degenerate_movie_ids)
        )
    return "\n".join(lines)
