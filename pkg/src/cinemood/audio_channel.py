"""Soundtrack emotion scoring from per-partition class labels.

A 30-second excerpt is split into ten partitions and each partition carries
one class label from an eight-class audio emotion model (ingested as a label
file; the model itself is external).  Labels map to the five core emotions;
the neutral/calm/disgust labels fall outside them and are discarded, and the
profile is each emotion's share of the labels that remain.
"""

from __future__ import annotations

import json
import wave
from dataclasses import dataclass
from collections.abc import Sequence
from pathlib import Path

import numpy as np

from cinemood.emotions import EMOTIONS, Emotion, EmotionProfile

# Eight-class label codes of the upstream audio model.
CLASS_NAMES = {
    0: "neutral",
    1: "calm",
    2: "happy",
    3: "sad",
    4: "angry",
    5: "fearful",
    6: "disgust",
    7: "surprised",
}

# The five codes that land on our emotion categories; the rest are discarded.
CODE_TO_EMOTION = {
    2: Emotion.HAPPY,
    3: Emotion.SAD,
    4: Emotion.ANGRY,
    5: Emotion.FEAR,
    7: Emotion.SURPRISE,
}

DEFAULT_PARTITIONS = 10


@dataclass(frozen=True)
class AudioClip:
    """Mono PCM samples normalized to [-1, 1]."""

    sample_rate: int
    samples: np.ndarray  # 1-d float64

    def __post_init__(self) -> None:
        if self.sample_rate <= 0:
            raise ValueError("sample rate must be positive")
        if self.samples.ndim != 1 or len(self.samples) == 0:
            raise ValueError("clip must contain at least one mono frame")

    @property
    def duration(self) -> float:
        return len(self.samples) / self.sample_rate


def load_wav(path: str | Path) -> AudioClip:
    """Load 16-bit PCM WAV; stereo is averaged down to mono."""
    with wave.open(str(path), "rb") as wf:
        if wf.getsampwidth() != 2:
            raise ValueError(f"{path}: expected 16-bit PCM, got {8 * wf.getsampwidth()}-bit")
        n_channels = wf.getnchannels()
        rate = wf.getframerate()
        raw = wf.readframes(wf.getnframes())
    data = np.frombuffer(raw, dtype="<i2").astype(np.float64) / 32768.0
    if n_channels > 1:
        data = data.reshape(-1, n_channels).mean(axis=1)
    return AudioClip(sample_rate=rate, samples=data)


def partition_clip(clip: AudioClip, n: int = DEFAULT_PARTITIONS) -> list[AudioClip]:
    """Split into n contiguous segments of (nearly) equal frame count.

    The remainder r < n is spread one frame each over the first r segments,
    so concatenating the result reproduces the clip exactly.
    """
    if n < 1:
        raise ValueError("need at least one partition")
    frames = len(clip.samples)
    if frames < n:
        raise ValueError(f"clip too short: {frames} frames cannot fill {n} partitions")
    base, rem = divmod(frames, n)
    segments = []
    start = 0
    for i in range(n):
        size = base + (1 if i < rem else 0)
        segments.append(AudioClip(clip.sample_rate, clip.samples[start : start + size]))
        start += size
    return segments


def prevalence_scores(labels: Sequence[int]) -> EmotionProfile:
    """Share of the kept labels per emotion.

    neutral/calm/disgust (0, 1, 6) are dropped before normalizing: they have
    no slot among the five categories, and shares over the kept labels are
    the only reading consistent with observed whole-third scores on
    ten-partition excerpts.  All labels discarded degenerates to the zero
    profile.
    """
    if not labels:
        raise ValueError("no labels to score")
    for code in labels:
        if code not in CLASS_NAMES:
            raise ValueError(f"invalid audio label code {code!r}; expected 0..7")
    kept = [CODE_TO_EMOTION[c] for c in labels if c in CODE_TO_EMOTION]
    if not kept:
        return EmotionProfile()
    return EmotionProfile.from_scores({e: kept.count(e) / len(kept) for e in EMOTIONS})


def load_label_file(path: str | Path) -> list[int]:
    """JSON array of per-partition label codes."""
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(raw, list) or not all(isinstance(x, int) for x in raw):
        raise ValueError(f"{path}: label file must be a JSON array of integers")
    for code in raw:
        if code not in CLASS_NAMES:
            raise ValueError(f"{path}: invalid audio label code {code}")
    return raw


# stub_classify cutpoints (documented, low fidelity -- demo use only):
#   rms < 0.02                     -> sad (3)
#   rms >= 0.5, zcr >= 0.25        -> angry (4)
#   rms >= 0.5, zcr < 0.25         -> happy (2)
#   0.02 <= rms < 0.5, zcr >= 0.25 -> fearful (5)
#   0.02 <= rms < 0.5, zcr < 0.25  -> surprised (7)
_RMS_QUIET = 0.02
_RMS_LOUD = 0.5
_ZCR_BUSY = 0.25


def stub_classify(segment: AudioClip) -> int:
    """Deterministic two-feature stand-in for a real audio emotion model.

    Exists so the pipeline can run end to end without an external classifier;
    the labels it emits are placeholders, not predictions.
    """
    rms = float(np.sqrt(np.mean(segment.samples**2)))
    if len(segment.samples) > 1:
        signs = np.signbit(segment.samples)
        zcr = float(np.count_nonzero(signs[1:] != signs[:-1])) / (len(segment.samples) - 1)
    else:
        zcr = 0.0
    if rms < _RMS_QUIET:
        return 3
    if rms >= _RMS_LOUD:
        return 4 if zcr >= _ZCR_BUSY else 2
    return 5 if zcr >= _ZCR_BUSY else 7


def classify_clip_with_stub(clip: AudioClip, n: int = DEFAULT_PARTITIONS) -> list[int]:
    """Partition and stub-classify a whole excerpt."""
    return [stub_classify(seg) for seg in partition_clip(clip, n)]
