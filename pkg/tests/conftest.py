from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import settings

settings.register_profile("ci", max_examples=100, derandomize=True, deadline=None)
settings.load_profile("ci")

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures" / "reference"


@pytest.fixture(scope="session")
def fixture_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def reference_catalog():
    from cinemood.catalog import build_catalog

    return build_catalog(FIXTURES / "manifest.json")


@pytest.fixture(scope="session")
def reference_session():
    from cinemood.recommender import load_session

    return load_session(FIXTURES / "session.json")


@pytest.fixture(scope="session")
def reference_surveys():
    from cinemood.evaluator import load_surveys

    return load_surveys(FIXTURES / "surveys.json")


@pytest.fixture(scope="session")
def reference_catalog_file(tmp_path_factory):
    """The fixture catalog ingested and saved once for CLI/service tests."""
    from cinemood.catalog import build_catalog, save_catalog

    path = tmp_path_factory.mktemp("catalog") / "catalog.json"
    save_catalog(build_catalog(FIXTURES / "manifest.json"), path)
    return path
