import json
from typing import Generator

import pytest
from loguru import logger

from heatvalve import flux_index, sweep_id
from heatvalve.logging import configure_json_logging, configure_pretty_logging


@pytest.fixture(autouse=True)
def restore_logger() -> Generator[None, None, None]:
    yield
    logger.remove()
    logger.disable("heatvalve")


def test_json_lines_carry_sweep_context(capsys: pytest.CaptureFixture):
    configure_json_logging("INFO")
    token = sweep_id.set("abc12345")
    flux_index.set(7)
    try:
        logger.info("solving")
    finally:
        sweep_id.reset(token)
        flux_index.reset()

    line = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert line["severity"] == "INFO"
    assert line["message"] == "solving"
    assert line["ctx"] == {"sweep_id": "abc12345", "flux_index": 7}


def test_context_is_omitted_outside_a_sweep(capsys: pytest.CaptureFixture):
    configure_json_logging("INFO")
    logger.info("idle")
    line = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert line["ctx"] == {}


def test_pretty_logging_respects_level(capsys: pytest.CaptureFixture):
    configure_pretty_logging("WARNING")
    logger.info("hidden")
    logger.warning("shown")
    err = capsys.readouterr().err
    assert "shown" in err
    assert "hidden" not in err
