"""Poster emotion scoring through fuzzy color terms.

A poster is reduced to the set of color terms that dominate it: every pixel is
converted to HSL, assigned to the best-matching fuzzy color term, and a term
enters the poster's color set when it covers more than `dominance_tau` of the
pixels.  Each emotion is then scored by the Jaccard similarity between that
color set and the emotion's color associations from the knowledge base, so
poster scores are per-emotion similarities in [0, 1] with no sum constraint.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from collections.abc import Mapping, Sequence
from importlib import resources
from pathlib import Path

import numpy as np
from PIL import Image

from cinemood.emotions import EMOTIONS, Emotion, EmotionProfile

DEFAULT_DOMINANCE_TAU = 0.05

# Load-time coverage check: every point of this HSL grid must be classifiable.
_COVERAGE_HUES = tuple(10 * k + 5 for k in range(36))
_COVERAGE_LEVELS = (0.1, 0.3, 0.5, 0.7, 0.9)


class PaletteGapError(ValueError):
    """Some HSL color has no fuzzy term with positive membership."""


@dataclass(frozen=True)
class FuzzyColorTerm:
    """A named fuzzy region of HSL space.

    Hue membership is trapezoidal over (a, b, c, d) degrees: 1 on [b, c],
    linear on [a, b] and [c, d], 0 outside.  The trapezoid may wrap around
    360 (e.g. red: 335, 350, 370, 385).  Saturation/lightness bands are crisp
    gates.  Achromatic terms ignore hue entirely and match by band alone.
    """

    name: str
    hue: tuple[float, float, float, float]
    sat: tuple[float, float]
    light: tuple[float, float]
    achromatic: bool = False

    def __post_init__(self) -> None:
        a, b, c, d = self.hue
        if not a <= b <= c <= d:
            raise ValueError(f"term {self.name!r}: hue trapezoid must satisfy a <= b <= c <= d")
        if d - a > 360:
            raise ValueError(f"term {self.name!r}: hue trapezoid wider than a full turn")
        for label, (lo, hi) in (("sat", self.sat), ("light", self.light)):
            if not 0.0 <= lo <= hi <= 1.0:
                raise ValueError(f"term {self.name!r}: {label} band must be 0 <= lo <= hi <= 1")

    def hue_membership(self, h: float) -> float:
        """Trapezoid value at hue h (degrees), handling wrap-around."""
        a, b, c, d = self.hue
        best = 0.0
        for x in (h, h + 360.0, h - 360.0):
            if x <= a or x >= d:
                continue
            if b <= x <= c:
                return 1.0
            if x < b:
                best = max(best, (x - a) / (b - a))
            else:
                best = max(best, (d - x) / (d - c))
        return best

    def membership(self, h: float, s: float, l: float) -> float:
        if not (self.sat[0] <= s <= self.sat[1] and self.light[0] <= l <= self.light[1]):
            return 0.0
        if self.achromatic:
            return 1.0
        return self.hue_membership(h)


@dataclass(frozen=True)
class PosterImage:
    """Decoded 8-bit RGB raster, row-major."""

    width: int
    height: int
    pixels: np.ndarray  # shape (height, width, 3), dtype uint8

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise ValueError("poster must have positive dimensions")
        if self.pixels.shape != (self.height, self.width, 3) or self.pixels.dtype != np.uint8:
            raise ValueError("pixels must be a (height, width, 3) uint8 array")


def rgb_to_hsl(r: int, g: int, b: int) -> tuple[float, float, float]:
    """8-bit RGB to (hue degrees [0, 360), saturation [0, 1], lightness [0, 1]).

    Achromatic colors (max == min) get hue 0 by convention.
    """
    rf, gf, bf = r / 255.0, g / 255.0, b / 255.0
    mx, mn = max(rf, gf, bf), min(rf, gf, bf)
    l = (mx + mn) / 2.0
    if mx == mn:
        return 0.0, 0.0, l
    delta = mx - mn
    s = min(delta / (2.0 - mx - mn) if l > 0.5 else delta / (mx + mn), 1.0)
    if mx == rf:
        h = ((gf - bf) / delta) % 6.0
    elif mx == gf:
        h = (bf - rf) / delta + 2.0
    else:
        h = (rf - gf) / delta + 4.0
    return (h * 60.0) % 360.0, s, l


def _rgb_to_hsl_array(pixels: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized rgb_to_hsl over an (n, 3) uint8 array."""
    rgb = pixels.astype(np.float64) / 255.0
    mx = rgb.max(axis=1)
    mn = rgb.min(axis=1)
    l = (mx + mn) / 2.0
    delta = mx - mn
    chromatic = delta > 0

    s = np.zeros_like(l)
    denom = np.where(l > 0.5, 2.0 - mx - mn, mx + mn)
    np.divide(delta, denom, out=s, where=chromatic)
    np.minimum(s, 1.0, out=s)

    r, g, b = rgb[:, 0], rgb[:, 1], rgb[:, 2]
    h = np.zeros_like(l)
    with np.errstate(invalid="ignore", divide="ignore"):
        h_r = ((g - b) / delta) % 6.0
        h_g = (b - r) / delta + 2.0
        h_b = (r - g) / delta + 4.0
    # max-channel rule with the same precedence as the scalar version: r, g, b
    h = np.where(mx == r, h_r, np.where(mx == g, h_g, h_b))
    h = np.where(chromatic, (h * 60.0) % 360.0, 0.0)
    return h, s, l


def classify_pixel(hsl: tuple[float, float, float], palette: Sequence[FuzzyColorTerm]) -> str:
    """Name of the maximum-membership term; earliest in the palette wins ties."""
    if not palette:
        raise ValueError("empty palette")
    h, s, l = hsl
    best_name, best = None, 0.0
    for term in palette:
        m = term.membership(h, s, l)
        if m > best:
            best_name, best = term.name, m
    if best_name is None:
        raise PaletteGapError(f"no palette term matches hsl=({h:.1f}, {s:.3f}, {l:.3f})")
    return best_name


def _membership_matrix(palette: Sequence[FuzzyColorTerm], h: np.ndarray, s: np.ndarray, l: np.ndarray) -> np.ndarray:
    """(n_pixels, n_terms) membership values, vectorized per term."""
    cols = []
    for term in palette:
        in_band = (
            (s >= term.sat[0]) & (s <= term.sat[1]) & (l >= term.light[0]) & (l <= term.light[1])
        )
        if term.achromatic:
            cols.append(in_band.astype(np.float64))
            continue
        a, b, c, d = term.hue
        m = np.zeros_like(h)
        for x in (h, h + 360.0, h - 360.0):
            inside = (x > a) & (x < d)
            core = inside & (x >= b) & (x <= c)
            rising = inside & (x < b)
            falling = inside & (x > c)
            m = np.maximum(m, np.where(core, 1.0, 0.0))
            if b > a:
                m = np.maximum(m, np.where(rising, (x - a) / (b - a), 0.0))
            if d > c:
                m = np.maximum(m, np.where(falling, (d - x) / (d - c), 0.0))
        cols.append(np.where(in_band, m, 0.0))
    return np.stack(cols, axis=1)


def image_color_set(
    img: PosterImage,
    palette: Sequence[FuzzyColorTerm],
    dominance_tau: float = DEFAULT_DOMINANCE_TAU,
) -> frozenset[str]:
    """Color terms whose pixel share strictly exceeds dominance_tau.

    Classification is vectorized but bit-identical to classify_pixel on every
    pixel (same memberships, same first-wins argmax over palette order).
    """
    if not 0.0 <= dominance_tau < 1.0:
        raise ValueError(f"dominance_tau must be in [0, 1), got {dominance_tau}")
    flat = img.pixels.reshape(-1, 3)
    h, s, l = _rgb_to_hsl_array(flat)
    memberships = _membership_matrix(palette, h, s, l)
    best = memberships.max(axis=1)
    if np.any(best <= 0.0):
        i = int(np.argmax(best <= 0.0))
        raise PaletteGapError(
            f"no palette term matches pixel rgb={tuple(int(v) for v in flat[i])}"
        )
    assigned = memberships.argmax(axis=1)  # first max wins, matching palette order
    counts = np.bincount(assigned, minlength=len(palette))
    total = flat.shape[0]
    return frozenset(
        palette[i].name for i in range(len(palette)) if counts[i] / total > dominance_tau
    )


@dataclass(frozen=True)
class ColorEmotionKB:
    """Emotion -> set of color term names it is associated with.

    The source associations cover more emotions than this engine tracks (love
    in particular); anything beyond the five categories is dropped on load,
    with no renormalization, since poster scores are similarities rather than
    a distribution.
    """

    associations: Mapping[Emotion, frozenset[str]]

    def __post_init__(self) -> None:
        for e in EMOTIONS:
            if not self.associations.get(e):
                raise ValueError(f"knowledge base has no color terms for {e.value}")

    def terms_for(self, emotion: Emotion) -> frozenset[str]:
        return self.associations[emotion]

    def validate_against(self, palette: Sequence[FuzzyColorTerm]) -> None:
        names = {t.name for t in palette}
        for e in EMOTIONS:
            missing = self.associations[e] - names
            if missing:
                raise ValueError(
                    f"knowledge base references unknown color terms for {e.value}: {sorted(missing)}"
                )


def score_poster(
    img: PosterImage,
    palette: Sequence[FuzzyColorTerm],
    kb: ColorEmotionKB,
    dominance_tau: float = DEFAULT_DOMINANCE_TAU,
) -> EmotionProfile:
    """Per-emotion Jaccard between the poster's color set and the KB's.

    An empty color set (everything under tau) degenerates to the zero
    profile.
    """
    colors = image_color_set(img, palette, dominance_tau)
    if not colors:
        return EmotionProfile()
    return EmotionProfile.from_scores(
        {
            e: len(colors & kb.terms_for(e)) / len(colors | kb.terms_for(e))
            for e in EMOTIONS
        }
    )


def load_poster(path: str | Path) -> PosterImage:
    """Decode PNG/JPEG to 8-bit RGB; alpha is composited over white."""
    with Image.open(path) as im:
        if im.mode in ("RGBA", "LA", "PA") or (im.mode == "P" and "transparency" in im.info):
            rgba = im.convert("RGBA")
            background = Image.new("RGBA", rgba.size, (255, 255, 255, 255))
            im = Image.alpha_composite(background, rgba).convert("RGB")
        else:
            im = im.convert("RGB")
        pixels = np.asarray(im, dtype=np.uint8)
    return PosterImage(width=pixels.shape[1], height=pixels.shape[0], pixels=pixels)


def validate_palette(palette: Sequence[FuzzyColorTerm]) -> None:
    """Uniqueness plus full-coverage check on a 36x5x5 HSL grid."""
    if not palette:
        raise ValueError("empty palette")
    seen = set()
    for term in palette:
        if term.name in seen:
            raise ValueError(f"duplicate palette term name {term.name!r}")
        seen.add(term.name)
    for h in _COVERAGE_HUES:
        for s in _COVERAGE_LEVELS:
            for l in _COVERAGE_LEVELS:
                if all(t.membership(h, s, l) <= 0.0 for t in palette):
                    raise PaletteGapError(
                        f"palette gap at hsl=({h}, {s}, {l}); add or widen a term"
                    )


def load_palette(path: str | Path) -> list[FuzzyColorTerm]:
    """Read a palette JSON array and validate coverage."""
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(raw, list):
        raise ValueError("palette file must be a JSON array of term objects")
    palette = []
    for obj in raw:
        try:
            palette.append(
                FuzzyColorTerm(
                    name=obj["name"],
                    hue=tuple(float(x) for x in obj["hue"]),
                    sat=tuple(float(x) for x in obj["sat"]),
                    light=tuple(float(x) for x in obj["light"]),
                    achromatic=bool(obj.get("achromatic", False)),
                )
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed palette term {obj!r}: {exc}") from exc
    validate_palette(palette)
    return palette


def load_color_kb(path: str | Path, palette: Sequence[FuzzyColorTerm] | None = None) -> ColorEmotionKB:
    """Read the emotion -> [term names] JSON object.

    Emotions outside the five categories are dropped here (the load
    boundary), so a file may carry richer associations than the engine uses.
    """
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(raw, dict):
        raise ValueError("knowledge base file must be a JSON object")
    by_name = {e.value: e for e in EMOTIONS}
    associations = {}
    for key, names in raw.items():
        emotion = by_name.get(key)
        if emotion is None:
            continue  # e.g. Love: defined upstream, outside our categories
        associations[emotion] = frozenset(str(n) for n in names)
    kb = ColorEmotionKB(associations=associations)
    if palette is not None:
        kb.validate_against(palette)
    return kb


def default_palette() -> list[FuzzyColorTerm]:
    data = resources.files("cinemood") / "data"
    with resources.as_file(data / "palette.json") as p:
        return load_palette(p)


def default_color_kb(palette: Sequence[FuzzyColorTerm] | None = None) -> ColorEmotionKB:
    data = resources.files("cinemood") / "data"
    with resources.as_file(data / "color_emotion_kb.json") as p:
        return load_color_kb(p, palette=palette)
