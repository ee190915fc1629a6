#!/usr/bin/env python3
"""Capture real /v1 payloads for the frontend test suite.

Drives the actual service (in process, via the test client) through the same
flows the UI tests replay, and freezes every response under
frontend/tests/fixtures/.  Re-run after changing the service surface:

    python3 scripts/capture_ui_fixtures.py
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi.testclient import TestClient

from cinemood.catalog import Catalog, MovieRecord, build_catalog
from cinemood.emotions import EmotionProfile
from cinemood.service import create_app

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "frontend" / "tests" / "fixtures"

PARTICIPANTS = [
    ("p1", "the-notebook"),
    ("p2", "split"),
    ("p3", "oppenheimer"),
    ("p4", "barbie"),
]


def g(x: float) -> str:
    return format(float(x), "g")


def signature(participants: list[str], weights: dict, threshold: float, genre_filter: bool) -> str:
    ws = ";".join(f"{k}:{g(weights[k])}" for k in ("poster", "music", "description"))
    return (
        f"participants={','.join(sorted(participants))}"
        f"|weights={ws}|threshold={g(threshold)}|filter={str(genre_filter).lower()}"
    )


def capture_group_flow() -> dict:
    catalog = build_catalog(ROOT / "fixtures" / "reference" / "manifest.json")
    pool = json.loads((ROOT / "fixtures" / "reference" / "session.json").read_text())["pool"]
    client = TestClient(create_app(catalog))

    movies = client.get("/v1/movies").json()
    recommendations: dict[str, dict] = {}

    def snap(participants: list[str], weights: dict, threshold: float, filt: bool) -> None:
        response = client.get("/v1/sessions/movie-night/recommendation")
        assert response.status_code == 200, response.text
        recommendations[signature(participants, weights, threshold, filt)] = response.json()

    assert client.post("/v1/sessions", json={"id": "movie-night", "pool": pool}).status_code == 201
    default_w = {"poster": 1, "music": 2, "description": 3}

    joined: list[str] = []
    for pid, fav in PARTICIPANTS:
        r = client.post(
            "/v1/sessions/movie-night/participants",
            json={"id": pid, "favorite_movie_id": fav},
        )
        assert r.status_code == 201, r.text
        joined.append(pid)
        snap(joined, default_w, 0.1, True)

    scaled = {"poster": 2, "music": 4, "description": 6}
    assert client.put("/v1/sessions/movie-night/params", json={"weights": scaled}).status_code == 200
    snap(joined, scaled, 0.1, True)

    # back to defaults, then a filter-off state for the toggle test
    client.put("/v1/sessions/movie-night/params", json={"weights": default_w})
    client.put("/v1/sessions/movie-night/params", json={"genre_filter": False})
    snap(joined, default_w, 0.1, False)
    client.put("/v1/sessions/movie-night/params", json={"genre_filter": True})

    return {"movies": movies, "pool": pool, "recommendations": recommendations}


def capture_threshold_flip() -> dict:
    """A candidate with a fused score of exactly 0.10: set membership flips
    when the threshold slider lands on 0.10 (strict comparison).

    The profile rides the music channel alone: its default weight is 2, and
    (2 * 0.1) / 2 is exactly 0.1 in floats, unlike the weight-3 description
    path whose rounding lands one ulp above.
    """
    boundary = EmotionProfile.from_dict({"Surprise": 0.1, "Sad": 0.4})
    anchor = EmotionProfile.from_dict({"Surprise": 0.5, "Sad": 0.5})
    catalog = Catalog()
    catalog.add(
        MovieRecord(
            id="boundary", title="Boundary", year=2020, genres=("drama",),
            channels={"music": boundary}, provenance={"music": "external"},
            fused=None,
        )
    )
    catalog.add(
        MovieRecord(
            id="anchor", title="Anchor", year=2021, genres=("drama",),
            channels={"music": anchor}, provenance={"music": "external"},
            fused=None,
        )
    )
    client = TestClient(create_app(catalog))
    assert client.post("/v1/sessions", json={"id": "flip", "pool": ["boundary"]}).status_code == 201
    assert (
        client.post(
            "/v1/sessions/flip/participants", json={"id": "p1", "favorite_movie_id": "anchor"}
        ).status_code
        == 201
    )
    movies = client.get("/v1/movies").json()
    default_w = {"poster": 1, "music": 2, "description": 3}
    recommendations = {}
    for threshold in (0.09, 0.1):
        assert (
            client.put("/v1/sessions/flip/params", json={"threshold": threshold}).status_code == 200
        )
        payload = client.get("/v1/sessions/flip/recommendation").json()
        recommendations[signature(["p1"], default_w, threshold, True)] = payload
    return {"movies": movies, "pool": ["boundary"], "recommendations": recommendations}


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    flow = capture_group_flow()
    (OUT / "group_flow.json").write_text(json.dumps(flow, indent=2, sort_keys=True) + "\n")
    flip = capture_threshold_flip()
    (OUT / "threshold_flip.json").write_text(json.dumps(flip, indent=2, sort_keys=True) + "\n")
    print(f"captured {len(flow['recommendations'])} group-flow payloads, "
          f"{len(flip['recommendations'])} flip payloads -> {OUT}")


if __name__ == "__main__":
    main()
