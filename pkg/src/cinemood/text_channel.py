"""Lexicon-based emotion scoring of movie descriptions.

Counting only: each description token that appears in the lexicon votes for
one emotion, and the profile is the vote share per emotion.  Tokens without a
lexicon entry are ignored, so profiles with any hits always sum to one.

The bundled lexicon is a stand-in wordlist with the same scoring contract as
the dictionary-based tools it replaces; its exact entries (and therefore the
exact scores on any given description) are a data choice, not a contract.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from collections.abc import Iterable, Mapping
from importlib import resources
from pathlib import Path

from cinemood.emotions import EMOTIONS, Emotion, EmotionProfile

_TOKEN_RE = re.compile(r"[a-z0-9]+")


def tokenize(text: str, stopwords: frozenset[str] = frozenset()) -> list[str]:
    """Lowercase tokens split on non-alphanumeric runs, stopwords removed.

    Only ASCII letters and digits count as token characters; anything else
    (punctuation, whitespace, accented characters) separates tokens.
    """
    return [t for t in _TOKEN_RE.findall(text.lower()) if t not in stopwords]


@dataclass(frozen=True)
class EmotionLexicon:
    """token -> emotion wordlist plus the stopwords stripped before matching."""

    entries: Mapping[str, Emotion]
    stopwords: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        for token in self.entries:
            if not _TOKEN_RE.fullmatch(token):
                raise ValueError(f"lexicon token {token!r} is not a lowercase unigram")
        clash = set(self.entries) & self.stopwords
        if clash:
            raise ValueError(f"stopwords also appear as lexicon tokens: {sorted(clash)[:5]}")


def score_text(text: str, lexicon: EmotionLexicon) -> EmotionProfile:
    """Vote-share profile of the lexicon hits in `text`.

    With zero hits the profile is all-zero (profile.is_zero flags the
    degenerate case); otherwise the nonzero scores sum to one.
    """
    counts = {e: 0 for e in EMOTIONS}
    for token in tokenize(text, lexicon.stopwords):
        emotion = lexicon.entries.get(token)
        if emotion is not None:
            counts[emotion] += 1
    total = sum(counts.values())
    if total == 0:
        return EmotionProfile()
    return EmotionProfile.from_scores({e: counts[e] / total for e in EMOTIONS})


def load_lexicon(path: str | Path, stopwords: Iterable[str] = ()) -> EmotionLexicon:
    """Read a `token<TAB>Emotion` file; `#` lines are comments."""
    entries: dict[str, Emotion] = {}
    by_name = {e.value: e for e in EMOTIONS}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ValueError(f"{path}:{lineno}: expected 'token<TAB>Emotion', got {raw!r}")
        token, name = parts[0].strip(), parts[1].strip()
        if name not in by_name:
            raise ValueError(f"{path}:{lineno}: unknown emotion {name!r}")
        if token in entries:
            raise ValueError(f"{path}:{lineno}: duplicate token {token!r}")
        entries[token] = by_name[name]
    return EmotionLexicon(entries=entries, stopwords=frozenset(stopwords))


def load_stopwords(path: str | Path) -> frozenset[str]:
    """One token per line; blank lines and `#` comments skipped."""
    words = set()
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            words.add(line.lower())
    return frozenset(words)


def default_lexicon() -> EmotionLexicon:
    """The lexicon and stopword list bundled with the package."""
    data = resources.files("cinemood") / "data"
    with resources.as_file(data / "stopwords.txt") as p:
        stops = load_stopwords(p)
    with resources.as_file(data / "lexicon.tsv") as p:
        return load_lexicon(p, stopwords=stops)
