"""Core emotion vocabulary and the arithmetic shared by every channel.

Everything downstream (text, poster, soundtrack, recommendation) speaks in
terms of the five emotion categories defined here.  Profiles are plain value
objects; all operations are pure functions, so they are safe to call from any
thread or process.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from collections.abc import Iterable, Mapping

DEFAULT_THRESHOLD = 0.1


class Emotion(enum.Enum):
    """The five emotion categories, in canonical (survey) order."""

    HAPPY = "Happy"
    ANGRY = "Angry"
    SURPRISE = "Surprise"
    SAD = "Sad"
    FEAR = "Fear"

    def __str__(self) -> str:
        return self.value


# Canonical iteration order everywhere: Happy, Angry, Surprise, Sad, Fear.
EMOTIONS: tuple[Emotion, ...] = tuple(Emotion)

_KEY_TO_EMOTION = {e.value: e for e in EMOTIONS}


class DegenerateSetPair(ValueError):
    """Jaccard of two empty sets is 0/0; callers decide the policy."""


@dataclass(frozen=True)
class EmotionProfile:
    """Score in [0, 1] per emotion category.

    Absent emotions are stored as 0.0.  Profiles do NOT have to sum to one:
    text and soundtrack profiles do, poster profiles are per-emotion
    similarities and usually sum to more.
    """

    happy: float = 0.0
    angry: float = 0.0
    surprise: float = 0.0
    sad: float = 0.0
    fear: float = 0.0

    def __post_init__(self) -> None:
        for e in EMOTIONS:
            v = self.score(e)
            if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
                raise ValueError(f"{e.value} score must be a finite number, got {v!r}")
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{e.value} score {v} outside [0, 1]")

    def score(self, emotion: Emotion) -> float:
        return getattr(self, emotion.name.lower())

    def __getitem__(self, emotion: Emotion) -> float:
        return self.score(emotion)

    @property
    def is_zero(self) -> bool:
        """True when no emotion scored at all (the degenerate outcome)."""
        return all(self.score(e) == 0.0 for e in EMOTIONS)

    def as_dict(self) -> dict[str, float]:
        """Serialize with exactly the five canonical keys, canonical order."""
        return {e.value: self.score(e) for e in EMOTIONS}

    @classmethod
    def from_scores(cls, scores: Mapping[Emotion, float]) -> "EmotionProfile":
        return cls(**{e.name.lower(): float(scores.get(e, 0.0)) for e in EMOTIONS})

    @classmethod
    def from_dict(cls, data: Mapping[str, float]) -> "EmotionProfile":
        """Parse the {"Happy": ..., "Fear": ...} wire shape.

        Unknown keys are rejected (catches typos like "Hapy"); missing keys
        are read as 0.0.
        """
        unknown = sorted(set(data) - set(_KEY_TO_EMOTION))
        if unknown:
            raise ValueError(f"unknown emotion keys: {', '.join(unknown)}")
        return cls.from_scores({_KEY_TO_EMOTION[k]: float(v) for k, v in data.items()})


ZERO_PROFILE = EmotionProfile()


@dataclass(frozen=True)
class ChannelWeights:
    """Relative weight of each channel in the fused profile.

    Defaults reflect the observation that the description is the most telling
    channel and the poster the least.
    """

    poster: float = 1.0
    music: float = 2.0
    description: float = 3.0

    def __post_init__(self) -> None:
        for name in ("poster", "music", "description"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0:
                raise ValueError(f"{name} weight must be finite and >= 0, got {v}")
        if self.poster == self.music == self.description == 0:
            raise ValueError("at least one channel weight must be positive")

    def as_dict(self) -> dict[str, float]:
        return {"poster": self.poster, "music": self.music, "description": self.description}

    @classmethod
    def from_dict(cls, data: Mapping[str, float]) -> "ChannelWeights":
        unknown = sorted(set(data) - {"poster", "music", "description"})
        if unknown:
            raise ValueError(f"unknown weight keys: {', '.join(unknown)}")
        return cls(**{k: float(v) for k, v in data.items()})


def fuse_channels(
    poster: EmotionProfile | None,
    music: EmotionProfile | None,
    description: EmotionProfile | None,
    weights: ChannelWeights = ChannelWeights(),
) -> EmotionProfile:
    """Weighted per-emotion average of the channels that are present.

    Absent channels contribute neither to the numerator nor the denominator,
    so a catalog without soundtracks still fuses poster + description.  The
    result is a per-emotion convex combination of the inputs.
    """
    present: list[tuple[float, EmotionProfile]] = []
    for w, profile in (
        (weights.poster, poster),
        (weights.music, music),
        (weights.description, description),
    ):
        if profile is not None:
            present.append((w, profile))
    if not present:
        raise ValueError("no channels: need at least one of poster/music/description")
    total = sum(w for w, _ in present)
    if total == 0:
        raise ValueError("zero total weight across present channels")
    return EmotionProfile.from_scores(
        {e: sum(w * p.score(e) for w, p in present) / total for e in EMOTIONS}
    )


def to_emotion_set(profile: EmotionProfile, threshold: float = DEFAULT_THRESHOLD) -> frozenset[Emotion]:
    """Emotions whose score STRICTLY exceeds the threshold.

    The comparison is deliberately strict: a score of exactly 0.10 stays out.
    Table-entry scores printed at two decimals land exactly on 0.10 often
    enough that the inclusivity choice is observable, and strictness is the
    one that matches the published similarity figures.
    """
    if not 0.0 <= threshold < 1.0:
        raise ValueError(f"threshold must be in [0, 1), got {threshold}")
    return frozenset(e for e in EMOTIONS if profile.score(e) > threshold)


def emotion_set_key(emotions: Iterable[Emotion]) -> list[str]:
    """Serialize an emotion set as category names in canonical order."""
    members = set(emotions)
    return [e.value for e in EMOTIONS if e in members]


def jaccard(a: frozenset[Emotion] | set[Emotion], b: frozenset[Emotion] | set[Emotion]) -> float:
    """|a & b| / |a | b|.  Raises DegenerateSetPair when both are empty."""
    if not a and not b:
        raise DegenerateSetPair("jaccard of two empty emotion sets is undefined")
    return len(a & b) / len(a | b)


def mean_jaccard(values: Iterable[float]) -> float:
    """Arithmetic mean of the per-participant similarity values.

    Summed exactly (math.fsum) so the result is invariant under participant
    reordering down to the last bit.
    """
    values = list(values)
    if not values:
        raise ValueError("no participants: cannot average an empty list")
    return math.fsum(values) / len(values)
