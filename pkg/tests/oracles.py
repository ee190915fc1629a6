"""Independent reference implementations used to cross-check the package.

Everything here is deliberately written from the definitions, avoiding the
package's own code paths: counting loops, colorsys, numpy one-liners.  If an
oracle and the implementation agree they are either both right or wrong in
the same way twice, which is the best a test can buy.
"""

from __future__ import annotations

import colorsys
from collections import Counter
from fractions import Fraction

import numpy as np

ASCII_ALNUM = set("abcdefghijklmnopqrstuvwxyz0123456789")

EMOTION_KEYS = ("Happy", "Angry", "Surprise", "Sad", "Fear")


def fuse_oracle(profiles: list[dict[str, float] | None], weights: list[float]) -> dict[str, float]:
    """Per-emotion weighted mean over present channels, via numpy.average."""
    out = {}
    present = [(w, p) for w, p in zip(weights, profiles) if p is not None]
    for key in EMOTION_KEYS:
        values = [p[key] for _, p in present]
        ws = [w for w, _ in present]
        out[key] = float(np.average(values, weights=ws))
    return out


def jaccard_bitmask_oracle(mask_a: int, mask_b: int) -> float:
    """Jaccard over 5-bit set masks by popcount."""
    inter = bin(mask_a & mask_b).count("1")
    union = bin(mask_a | mask_b).count("1")
    return inter / union


def tokenize_oracle(text: str, stopwords: frozenset[str] = frozenset()) -> list[str]:
    """Character-scan splitter: ASCII alphanumeric runs of the lowercased text."""
    tokens = []
    current = []
    for ch in text.lower():
        if ch in ASCII_ALNUM:
            current.append(ch)
        elif current:
            tokens.append("".join(current))
            current = []
    if current:
        tokens.append("".join(current))
    return [t for t in tokens if t not in stopwords]


def text_score_oracle(text: str, entries: dict[str, str], stopwords: frozenset[str]) -> dict[str, float]:
    """Count-and-divide scorer over the oracle tokenizer."""
    counts = Counter()
    for token in tokenize_oracle(text, stopwords):
        if token in entries:
            counts[entries[token]] += 1
    total = sum(counts.values())
    if total == 0:
        return {k: 0.0 for k in EMOTION_KEYS}
    return {k: counts[k] / total for k in EMOTION_KEYS}


def hsl_oracle(r: int, g: int, b: int) -> tuple[float, float, float]:
    """Reference HSL via the stdlib colorsys (which returns h, l, s in [0,1]).

    colorsys computes saturation as range/(2 - sum) whose float rounding can
    overshoot 1.0 by an ulp; saturation is <= 1 by definition, so clamp.
    """
    h, l, s = colorsys.rgb_to_hls(r / 255.0, g / 255.0, b / 255.0)
    return h * 360.0, min(s, 1.0), l


def trapezoid_oracle(h: float, corners: tuple[float, float, float, float]) -> float:
    a, b, c, d = corners
    best = 0.0
    for x in (h - 360.0, h, h + 360.0):
        if not a <= x <= d:
            continue
        if x < b:
            v = 0.0 if b == a else (x - a) / (b - a)
        elif x <= c:
            v = 1.0
        else:
            v = 0.0 if d == c else (d - x) / (d - c)
        best = max(best, v)
    return best


def membership_oracle(term, h: float, s: float, l: float) -> float:
    if not (term.sat[0] <= s <= term.sat[1] and term.light[0] <= l <= term.light[1]):
        return 0.0
    if term.achromatic:
        return 1.0
    return trapezoid_oracle(h, term.hue)


def classify_oracle(palette, h: float, s: float, l: float) -> str | None:
    """Evaluate every membership; earliest strict maximum wins."""
    best_name, best = None, 0.0
    for term in palette:
        m = membership_oracle(term, h, s, l)
        if m > best:
            best_name, best = term.name, m
    return best_name


def color_set_oracle(pixels, palette, tau: float) -> frozenset[str]:
    """Per-pixel classification histogram, then share > tau filter."""
    counts = Counter()
    n = 0
    for r, g, b in pixels:
        h, s, l = hsl_oracle(int(r), int(g), int(b))
        counts[classify_oracle(palette, h, s, l)] += 1
        n += 1
    return frozenset(name for name, c in counts.items() if Fraction(c, n) > Fraction(tau))


def poster_score_oracle(colors: frozenset[str], kb: dict[str, frozenset[str]]) -> dict[str, float]:
    if not colors:
        return {k: 0.0 for k in EMOTION_KEYS}
    return {
        k: len(colors & kb[k]) / len(colors | kb[k]) for k in EMOTION_KEYS
    }


def prevalence_oracle(labels: list[int]) -> dict[str, float]:
    """Counting oracle for label prevalence with 0/1/6 discarded."""
    name_for = {2: "Happy", 3: "Sad", 4: "Angry", 5: "Fear", 7: "Surprise"}
    kept = [name_for[c] for c in labels if c in name_for]
    if not kept:
        return {k: 0.0 for k in EMOTION_KEYS}
    counts = Counter(kept)
    return {k: counts[k] / len(kept) for k in EMOTION_KEYS}


def pearson_oracle(xs, ys) -> float:
    return float(np.corrcoef(np.asarray(xs, dtype=float), np.asarray(ys, dtype=float))[0, 1])


def group_rank_oracle(
    candidate_sets: dict[str, int],
    favorite_sets: dict[str, int],
) -> tuple[list[tuple[str, Fraction]], list[str]]:
    """Enumerate-and-sort ranking over bitmask emotion sets, exact rationals.

    Returns the ranked (movie_id, aggregated) list (score desc, id asc) and
    the unfiltered top set (ids of maximal score, ascending).
    """
    rows = []
    for movie_id, mset in candidate_sets.items():
        values = []
        for fset in favorite_sets.values():
            if mset == 0 and fset == 0:
                values.append(Fraction(0))
            else:
                inter = bin(mset & fset).count("1")
                union = bin(mset | fset).count("1")
                values.append(Fraction(inter, union))
        rows.append((movie_id, sum(values, Fraction(0)) / len(values)))
    rows.sort(key=lambda r: (-r[1], r[0]))
    best = rows[0][1]
    top = sorted(mid for mid, agg in rows if agg == best)
    return rows, top


def genre_filter_oracle(
    top_ids: list[str],
    genres_by_id: dict[str, tuple[str, ...]],
    favorite_genres: set[str],
) -> list[str]:
    kept = [
        mid
        for mid in top_ids
        if {g.casefold() for g in genres_by_id[mid]} & {g.casefold() for g in favorite_genres}
    ]
    return kept if kept else list(top_ids)
