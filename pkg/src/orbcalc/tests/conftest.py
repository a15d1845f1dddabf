from __future__ import annotations

import json
import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from typer.testing import CliRunner

from orbcalc.main.shared import App
from orbcalc.main.workspace import Workspace


PATH_DATA = Path(__file__).parent / "data"


settings.register_profile(
    "default",
    max_examples=200,
    deadline=None,
)
settings.register_profile(
    "acceptance",
    max_examples=10_000,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


def load_workspace(name: str) -> Workspace:
    return Workspace.from_data(json.loads((PATH_DATA / name).read_text(encoding="utf-8")))


@pytest.fixture(scope="session")
def plane() -> Workspace:
    return load_workspace("plane.json")


@pytest.fixture(scope="session")
def cubic() -> Workspace:
    return load_workspace("cubic.json")


@pytest.fixture(scope="session")
def blowups() -> Workspace:
    return load_workspace("blowups.json")


@pytest.fixture(scope="session")
def fibrations() -> Workspace:
    return load_workspace("fibrations.json")


@pytest.fixture(scope="session")
def coverings() -> Workspace:
    return load_workspace("coverings.json")


@pytest.fixture
def workdir(tmp_path_factory: pytest.TempPathFactory, monkeypatch: pytest.MonkeyPatch) -> Path:
    """An empty home and working directory, so no local `orbcalc.toml` is picked up."""

    home = tmp_path_factory.mktemp("home")
    cwd = tmp_path_factory.mktemp("cwd")

    monkeypatch.setenv("HOME", str(home))
    monkeypatch.setattr(App, "PATH_USER_DATA", home / f".{App.NAME}")
    monkeypatch.chdir(cwd)

    return cwd


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


@pytest.fixture
def data_path() -> Path:
    return PATH_DATA
