"""Movie records, manifest ingestion and the JSON catalog file.

A catalog is a small, diffable JSON snapshot: every movie carries its raw
input references, the per-channel emotion profiles (computed at ingest or
supplied externally), and a cached fused profile.  Writes are atomic
(temp file + rename) and loading re-checks every invariant, including that
the cached fusion still matches the cached channels.
"""

from __future__ import annotations

import dataclasses
import json
import os
import tempfile
from dataclasses import dataclass, field
from collections.abc import Mapping, Sequence
from pathlib import Path

from cinemood import audio_channel, color_channel, text_channel
from cinemood.emotions import (
    DEFAULT_THRESHOLD,
    ChannelWeights,
    EmotionProfile,
    fuse_channels,
)

SCHEMA_VERSION = 1

CHANNELS = ("description", "music", "poster")


class IngestError(ValueError):
    """A manifest entry was rejected; carries the movie id and field."""

    def __init__(self, movie_id: str, fld: str, message: str):
        super().__init__(f"movie {movie_id!r}, field {fld!r}: {message}")
        self.movie_id = movie_id
        self.field = fld


class CatalogError(ValueError):
    """Catalog file failed validation."""


@dataclass(frozen=True)
class MovieRecord:
    id: str
    title: str
    year: int
    genres: tuple[str, ...]
    description: str | None = None
    poster_path: str | None = None
    audio_labels: tuple[int, ...] | None = None
    channels: dict[str, EmotionProfile] = field(default_factory=dict)
    provenance: dict[str, str] = field(default_factory=dict)  # channel -> computed|external
    fused: EmotionProfile | None = None

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("movie id must be non-empty")
        if not self.genres:
            raise ValueError(f"movie {self.id!r}: genres must be non-empty")
        unknown = set(self.channels) - set(CHANNELS)
        if unknown:
            raise ValueError(f"movie {self.id!r}: unknown channels {sorted(unknown)}")

    def channel(self, name: str) -> EmotionProfile | None:
        return self.channels.get(name)

    def fused_under(self, weights: ChannelWeights) -> EmotionProfile:
        """Fuse the cached channel profiles under the given weights."""
        return fuse_channels(
            poster=self.channels.get("poster"),
            music=self.channels.get("music"),
            description=self.channels.get("description"),
            weights=weights,
        )


@dataclass
class Catalog:
    movies: dict[str, MovieRecord] = field(default_factory=dict)
    weights: ChannelWeights = ChannelWeights()
    threshold: float = DEFAULT_THRESHOLD
    schema_version: int = SCHEMA_VERSION

    def add(self, record: MovieRecord) -> None:
        if record.id in self.movies:
            raise IngestError(record.id, "id", "duplicate movie id")
        self.movies[record.id] = record

    def get(self, movie_id: str) -> MovieRecord:
        try:
            return self.movies[movie_id]
        except KeyError:
            raise CatalogError(f"unknown movie id {movie_id!r}") from None


@dataclass(frozen=True)
class ChannelResources:
    """Shared lexicon/palette/KB used while ingesting raw inputs.

    Loaded lazily so profile-only manifests never touch the data files.
    """

    lexicon: text_channel.EmotionLexicon | None = None
    palette: Sequence[color_channel.FuzzyColorTerm] | None = None
    kb: color_channel.ColorEmotionKB | None = None
    dominance_tau: float = color_channel.DEFAULT_DOMINANCE_TAU
    use_audio_stub: bool = False

    def get_lexicon(self) -> text_channel.EmotionLexicon:
        if self.lexicon is None:
            object.__setattr__(self, "lexicon", text_channel.default_lexicon())
        return self.lexicon

    def get_palette(self) -> Sequence[color_channel.FuzzyColorTerm]:
        if self.palette is None:
            object.__setattr__(self, "palette", color_channel.default_palette())
        return self.palette

    def get_kb(self) -> color_channel.ColorEmotionKB:
        if self.kb is None:
            object.__setattr__(self, "kb", color_channel.default_color_kb(self.get_palette()))
        return self.kb


def _parse_profile(movie_id: str, fld: str, data: object) -> EmotionProfile:
    if not isinstance(data, Mapping):
        raise IngestError(movie_id, fld, "profile must be a JSON object")
    try:
        return EmotionProfile.from_dict(data)
    except ValueError as exc:
        raise IngestError(movie_id, fld, str(exc)) from exc


def ingest_movie(
    entry: Mapping[str, object],
    base_dir: Path,
    weights: ChannelWeights,
    resources: ChannelResources | None = None,
) -> MovieRecord:
    """Build a MovieRecord from one manifest entry.

    Channel profiles are computed eagerly from whatever raw inputs the entry
    carries; an entry may instead (or additionally) supply channel profiles
    directly under "profiles", which take precedence and are marked with
    provenance "external".
    """
    resources = resources or ChannelResources()
    movie_id = str(entry.get("id", "")).strip()
    if not movie_id:
        raise IngestError("<missing>", "id", "missing or empty movie id")
    for fld in ("title", "year", "genres"):
        if fld not in entry:
            raise IngestError(movie_id, fld, "missing required field")
    genres = entry["genres"]
    if not isinstance(genres, list) or not genres or not all(isinstance(g, str) for g in genres):
        raise IngestError(movie_id, "genres", "must be a non-empty list of strings")

    supplied = entry.get("profiles", {})
    if not isinstance(supplied, Mapping):
        raise IngestError(movie_id, "profiles", "must be a JSON object")
    unknown = set(supplied) - set(CHANNELS)
    if unknown:
        raise IngestError(movie_id, "profiles", f"unknown channels {sorted(unknown)}")

    channels: dict[str, EmotionProfile] = {}
    provenance: dict[str, str] = {}
    for name in CHANNELS:
        if name in supplied:
            channels[name] = _parse_profile(movie_id, f"profiles.{name}", supplied[name])
            provenance[name] = "external"

    description = entry.get("description")
    if description is not None and not isinstance(description, str):
        raise IngestError(movie_id, "description", "must be a string")
    if description is not None and "description" not in channels:
        channels["description"] = text_channel.score_text(description, resources.get_lexicon())
        provenance["description"] = "computed"

    poster_path = entry.get("poster")
    if poster_path is not None and "poster" not in channels:
        try:
            poster = color_channel.load_poster(base_dir / str(poster_path))
        except (OSError, ValueError) as exc:
            raise IngestError(movie_id, "poster", f"unreadable poster: {exc}") from exc
        channels["poster"] = color_channel.score_poster(
            poster, resources.get_palette(), resources.get_kb(), resources.dominance_tau
        )
        provenance["poster"] = "computed"

    labels: list[int] | None = None
    if "audio_labels" in entry:
        raw = entry["audio_labels"]
        if not isinstance(raw, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in raw):
            raise IngestError(movie_id, "audio_labels", "must be a list of integers")
        bad = [c for c in raw if c not in audio_channel.CLASS_NAMES]
        if bad:
            raise IngestError(movie_id, "audio_labels", f"invalid label code {bad[0]}")
        labels = list(raw)
    elif "audio_labels_path" in entry:
        try:
            labels = audio_channel.load_label_file(base_dir / str(entry["audio_labels_path"]))
        except (OSError, ValueError) as exc:
            raise IngestError(movie_id, "audio_labels_path", str(exc)) from exc
    elif "soundtrack" in entry and resources.use_audio_stub:
        try:
            clip = audio_channel.load_wav(base_dir / str(entry["soundtrack"]))
            labels = audio_channel.classify_clip_with_stub(clip)
        except (OSError, ValueError, EOFError) as exc:
            raise IngestError(movie_id, "soundtrack", str(exc)) from exc

    if labels is not None and "music" not in channels:
        channels["music"] = audio_channel.prevalence_scores(labels)
        provenance["music"] = "computed"

    if not channels:
        raise IngestError(movie_id, "profiles", "no channel inputs: need a description, poster, labels or profiles")

    record = MovieRecord(
        id=movie_id,
        title=str(entry["title"]),
        year=int(entry["year"]),  # type: ignore[arg-type]
        genres=tuple(str(g) for g in genres),
        description=description,
        poster_path=str(poster_path) if poster_path is not None else None,
        audio_labels=tuple(labels) if labels is not None else None,
        channels=channels,
        provenance=provenance,
        fused=None,
    )
    return dataclasses.replace(record, fused=record.fused_under(weights))


def build_catalog(
    manifest_path: str | Path,
    weights: ChannelWeights = ChannelWeights(),
    threshold: float = DEFAULT_THRESHOLD,
    resources: ChannelResources | None = None,
) -> Catalog:
    """Ingest every entry of a manifest (JSON array of movie entries)."""
    manifest_path = Path(manifest_path)
    entries = json.loads(manifest_path.read_text(encoding="utf-8"))
    if not isinstance(entries, list):
        raise CatalogError(f"{manifest_path}: manifest must be a JSON array")
    catalog = Catalog(weights=weights, threshold=threshold)
    resources = resources or ChannelResources()
    for entry in entries:
        catalog.add(ingest_movie(entry, manifest_path.parent, weights, resources))
    return catalog


def _record_to_json(record: MovieRecord) -> dict:
    return {
        "id": record.id,
        "title": record.title,
        "year": record.year,
        "genres": list(record.genres),
        "description": record.description,
        "poster_path": record.poster_path,
        "audio_labels": list(record.audio_labels) if record.audio_labels is not None else None,
        "channels": {
            name: record.channels[name].as_dict() for name in CHANNELS if name in record.channels
        },
        "provenance": dict(record.provenance),
        "fused": record.fused.as_dict() if record.fused is not None else None,
    }


def _record_from_json(obj: Mapping, catalog_dir: Path, weights: ChannelWeights) -> MovieRecord:
    movie_id = obj.get("id", "<missing>")
    try:
        channels = {
            name: EmotionProfile.from_dict(profile)
            for name, profile in obj.get("channels", {}).items()
        }
        fused = EmotionProfile.from_dict(obj["fused"]) if obj.get("fused") is not None else None
        record = MovieRecord(
            id=obj["id"],
            title=obj["title"],
            year=int(obj["year"]),
            genres=tuple(obj["genres"]),
            description=obj.get("description"),
            poster_path=obj.get("poster_path"),
            audio_labels=tuple(obj["audio_labels"]) if obj.get("audio_labels") is not None else None,
            channels=channels,
            provenance=dict(obj.get("provenance", {})),
            fused=fused,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CatalogError(f"movie {movie_id!r}: {exc}") from exc

    if record.poster_path is not None and not (catalog_dir / record.poster_path).exists():
        raise CatalogError(f"movie {movie_id!r}: poster file {record.poster_path!r} not found")
    if record.audio_labels is not None:
        bad = [c for c in record.audio_labels if c not in audio_channel.CLASS_NAMES]
        if bad:
            raise CatalogError(f"movie {movie_id!r}: invalid audio label code {bad[0]}")
    if record.fused is not None:
        if not record.channels:
            raise CatalogError(f"movie {movie_id!r}: fused profile cached without channel profiles")
        expected = record.fused_under(weights).as_dict()
        cached = record.fused.as_dict()
        for key in expected:
            if abs(expected[key] - cached[key]) > 1e-9:
                raise CatalogError(
                    f"movie {movie_id!r}: cached fused profile disagrees with channels ({key})"
                )
    return record


def save_catalog(catalog: Catalog, path: str | Path) -> None:
    """Write the versioned catalog JSON atomically (temp file + rename)."""
    path = Path(path)
    payload = {
        "schema_version": catalog.schema_version,
        "weights": catalog.weights.as_dict(),
        "threshold": catalog.threshold,
        "movies": [_record_to_json(r) for r in catalog.movies.values()],
    }
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_catalog(path: str | Path) -> Catalog:
    """Load and fully validate a catalog file."""
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CatalogError(f"{path}: {exc}") from exc
    version = payload.get("schema_version")
    if version != SCHEMA_VERSION:
        raise CatalogError(f"{path}: unsupported schema_version {version!r} (supported: {SCHEMA_VERSION})")
    try:
        weights = ChannelWeights.from_dict(payload["weights"])
        threshold = float(payload["threshold"])
    except (KeyError, TypeError, ValueError) as exc:
        raise CatalogError(f"{path}: {exc}") from exc
    if not 0.0 <= threshold < 1.0:
        raise CatalogError(f"{path}: threshold {threshold} outside [0, 1)")
    catalog = Catalog(weights=weights, threshold=threshold, schema_version=version)
    for obj in payload.get("movies", []):
        record = _record_from_json(obj, path.parent, weights)
        if record.id in catalog.movies:
            raise CatalogError(f"duplicate movie id {record.id!r}")
        catalog.movies[record.id] = record
    return catalog
