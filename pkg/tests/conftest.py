import os
from pathlib import Path
from typing import Generator
from unittest import mock

import pytest
from pytest import MonkeyPatch

from heatvalve.models.sweep import SweepConfig
from heatvalve.sweep.config_loader import load_preset
from tests.fixtures.systems import damped_config


@pytest.fixture(scope="session")
def default_env_vars() -> dict[str, str]:
    """Process settings every CLI test starts from; override per test via `mock_env` params."""
    return {
        "HEATVALVE_LOG_FORMAT": "pretty",
        "HEATVALVE_LOG_LEVEL": "WARNING",
    }


@pytest.fixture()
def mock_env(
    monkeypatch: MonkeyPatch, request: pytest.FixtureRequest, default_env_vars: dict[str, str]
) -> Generator[None, None, None]:
    """
    Runs the test with `default_env_vars` (plus any dict passed as the fixture param) in
    `os.environ`, restoring the original environment afterwards.
    """
    envvars = default_env_vars.copy()
    if hasattr(request, "param") and isinstance(request.param, dict):
        envvars.update(request.param)

    with mock.patch.dict(os.environ, envvars):
        yield


@pytest.fixture(scope="session")
def published_config() -> SweepConfig:
    """
    The bundled ohmic partial secular preset: 3-level resonators, 308 mK / 100 mK baths.

    Session scoped; SweepConfig is immutable, so tests derive variants with `with_updates`.
    """
    return load_preset("fig2_psa")


@pytest.fixture
def small_config() -> SweepConfig:
    """
    Two-level resonators with a flux-tunable transmon and three flux points. Small enough
    for exhaustive invariant checks in every test that needs a full configuration.
    """
    return damped_config()


@pytest.fixture
def csv_path(tmp_path: Path) -> Path:
    """A not-yet-existing CSV file inside the test's temporary directory."""
    return tmp_path / "heat_flow.csv"
