"""Command line entry point: ingest, profile, recommend, evaluate, serve.

Exit codes: 0 success, 1 completed with degeneracy warnings, 2 invalid input.
Human-readable tables round to two decimals; `--json` emits full precision.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from cinemood import __version__
from cinemood.catalog import (
    Catalog,
    CatalogError,
    ChannelResources,
    IngestError,
    build_catalog,
    load_catalog,
    save_catalog,
)
from cinemood.emotions import (
    DEFAULT_THRESHOLD,
    EMOTIONS,
    ChannelWeights,
    to_emotion_set,
)
from cinemood.evaluator import (
    channel_correlations,
    evaluate_predictions,
    format_report,
    load_surveys,
)
from cinemood.recommender import load_session, recommend

CATALOG_ENV = "CINEMOOD_CATALOG"

EXIT_OK = 0
EXIT_DEGENERATE = 1
EXIT_INVALID = 2


def _parse_weights(text: str) -> ChannelWeights:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("weights must be 'poster,music,description'")
    try:
        p, m, d = (float(x) for x in parts)
        return ChannelWeights(poster=p, music=m, description=d)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _fmt_profile(profile) -> str:
    return "  ".join(f"{e.value}={profile.score(e):.2f}" for e in EMOTIONS)


def _catalog_path(args) -> Path:
    path = args.catalog or os.environ.get(CATALOG_ENV)
    if not path:
        raise CatalogError(f"no catalog given: pass --catalog or set {CATALOG_ENV}")
    return Path(path)


def cmd_ingest(args) -> int:
    resources = ChannelResources(use_audio_stub=args.use_audio_stub)
    catalog = build_catalog(
        args.manifest, weights=args.weights, threshold=args.threshold, resources=resources
    )
    save_catalog(catalog, args.catalog_out)
    print(f"ingested {len(catalog.movies)} movies -> {args.catalog_out}")
    for record in catalog.movies.values():
        print(f"  {record.id}: {_fmt_profile(record.fused)}")
    return EXIT_OK


def cmd_profile(args) -> int:
    catalog = load_catalog(_catalog_path(args))
    record = catalog.get(args.movie_id)
    print(f"{record.title} ({record.year})  [{', '.join(record.genres)}]")
    for name in ("description", "music", "poster"):
        profile = record.channel(name)
        origin = record.provenance.get(name, "-")
        if profile is None:
            print(f"  {name:<12} (absent)")
        else:
            print(f"  {name:<12} {_fmt_profile(profile)}  [{origin}]")
    print(f"  {'fused':<12} {_fmt_profile(record.fused)}")
    emotion_set = to_emotion_set(record.fused, catalog.threshold)
    names = [e.value for e in EMOTIONS if e in emotion_set] or ["(empty)"]
    print(f"  emotion set at threshold {catalog.threshold}: {', '.join(names)}")
    return EXIT_OK


def cmd_recommend(args) -> int:
    catalog = load_catalog(_catalog_path(args))
    session = load_session(args.session)
    if args.threshold is not None:
        session.threshold = args.threshold
    if args.no_genre_filter:
        session.genre_filter_enabled = False
    result = recommend(session, catalog)

    if args.json:
        print(json.dumps(result.as_dict(), indent=2, sort_keys=True))
    else:
        participant_ids = [p.id for p in session.participants]
        header = f"{'rank':>4}  {'movie':<24}" + "".join(f"{pid:>8}" for pid in participant_ids) + f"{'score':>8}"
        print(header)
        for s in result.scores:
            row = f"{s.rank:>4}  {s.movie_id:<24}"
            row += "".join(f"{s.per_participant[pid]:>8.2f}" for pid in participant_ids)
            row += f"{s.aggregated:>8.2f}"
            if s.movie_id in result.top_movie_ids:
                row += "  *"
            print(row)
        print(f"top set: {', '.join(result.top_movie_ids)}")
        if result.genre_filter["enabled"]:
            acted = "narrowed the top set" if result.genre_filter["acted"] else "inert"
            print(f"genre filter: {acted}")

    if result.degenerate_participants or result.degenerate_pairs:
        for pid in result.degenerate_participants:
            print(f"warning: participant {pid} has a degenerate favorite (empty emotion set)", file=sys.stderr)
        for movie_id, pid in result.degenerate_pairs:
            print(f"warning: degenerate pair ({movie_id}, {pid}) scored 0", file=sys.stderr)
        return EXIT_DEGENERATE
    return EXIT_OK


def cmd_evaluate(args) -> int:
    catalog = load_catalog(_catalog_path(args))
    surveys = load_surveys(args.survey)
    report = evaluate_predictions(catalog, surveys, catalog.threshold)
    if args.json:
        payload = report.as_dict()
        payload["channel_correlations"] = channel_correlations(catalog, surveys).as_dict()
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(format_report(report, catalog))
        correlations = channel_correlations(catalog, surveys)
        parts = [f"{name}={r:.2f}" for name, r in correlations.values.items()]
        parts += [f"{name}=error({reason})" for name, reason in correlations.errors.items()]
        print("channel correlations vs survey: " + "  ".join(parts))
    if report.degenerate_movie_ids:
        for mid in report.degenerate_movie_ids:
            print(f"warning: movie {mid} degenerate (both emotion sets empty), scored 0", file=sys.stderr)
        return EXIT_DEGENERATE
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from cinemood.service import create_app

    catalog = load_catalog(_catalog_path(args))
    app = create_app(catalog, cors_origin=args.cors_origin)
    host, _, port = args.bind.partition(":")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8765))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cinemood",
        description="Group movie picker driven by five-emotion movie profiles.",
    )
    parser.add_argument("--version", action="version", version=f"cinemood {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="build a catalog from a manifest")
    p.add_argument("manifest")
    p.add_argument("catalog_out")
    p.add_argument("--weights", type=_parse_weights, default=ChannelWeights(),
                   help="poster,music,description (default 1,2,3)")
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.add_argument("--use-audio-stub", action="store_true",
                   help="label WAV soundtracks with the low-fidelity built-in classifier")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("profile", help="show one movie's channel and fused profiles")
    p.add_argument("movie_id")
    p.add_argument("--catalog", help=f"catalog path (default ${CATALOG_ENV})")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("recommend", help="rank a session's candidate pool")
    p.add_argument("--catalog", help=f"catalog path (default ${CATALOG_ENV})")
    p.add_argument("--session", required=True)
    p.add_argument("--threshold", type=float, default=None, help="override the session threshold")
    p.add_argument("--no-genre-filter", action="store_true")
    p.add_argument("--json", action="store_true", help="machine-readable output, full precision")
    p.set_defaults(func=cmd_recommend)

    p = sub.add_parser("evaluate", help="compare fused profiles against survey profiles")
    p.add_argument("--catalog", help=f"catalog path (default ${CATALOG_ENV})")
    p.add_argument("--survey", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--catalog", help=f"catalog path (default ${CATALOG_ENV})")
    p.add_argument("--bind", default="127.0.0.1:8765")
    p.add_argument("--cors-origin", default="*")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (IngestError, CatalogError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
