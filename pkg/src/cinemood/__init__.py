"""cinemood: pick a movie a whole group can feel good about.

Each movie gets a five-emotion profile from three channels (description text,
poster colors, soundtrack labels), fused by weighted average.  A group session
ranks candidate movies by the mean Jaccard similarity between each movie's
emotion set and the emotion sets of the participants' favorite movies.
"""

from cinemood.emotions import (
    DEFAULT_THRESHOLD,
    EMOTIONS,
    ChannelWeights,
    DegenerateSetPair,
    Emotion,
    EmotionProfile,
    fuse_channels,
    jaccard,
    mean_jaccard,
    to_emotion_set,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_THRESHOLD",
    "EMOTIONS",
    "ChannelWeights",
    "DegenerateSetPair",
    "Emotion",
    "EmotionProfile",
    "fuse_channels",
    "jaccard",
    "mean_jaccard",
    "to_emotion_set",
    "__version__",
]
