import json
import logging
import sys

from loguru import logger
from loguru._handler import Handler

from heatvalve import get_sweep_context


def _patched_serialize_record(text: str, record: dict) -> str:
    """
    Serializes a loguru record into a single JSON line tagged with the current sweep context,
    so lines emitted from worker threads can be traced to their flux point.
    """
    exception = record["exception"]
    if exception is not None:
        exception = {
            "type": None if exception.type is None else exception.type.__name__,
            "value": str(exception.value),
        }

    line = {
        "severity": record["level"].name,
        "message": record["message"],
        "timestamp": record["time"].timestamp(),
        "ctx": get_sweep_context(),
        "logger": record["name"],
        "function": record["function"],
        "line": record["line"],
        "thread": record["thread"].name,
        "exception": exception,
        "extra": record["extra"],
    }
    return json.dumps(line, default=str, ensure_ascii=False) + "\n"


Handler._serialize_record = staticmethod(_patched_serialize_record)  # type: ignore


class InterceptHandler(logging.Handler):
    """
    Default handler from examples in loguru documentation.

    Routes stdlib `logging` records (py.warnings, third-party numerics) into loguru.
    """

    def emit(self, record: logging.LogRecord) -> None:  # pragma: no cover
        try:
            level: str | int = logger.level(record.levelname).name
        except ValueError:
            level = record.levelno

        # Find caller from where originated the logged message
        frame, depth = logging.currentframe(), 2
        while frame.f_code.co_filename == logging.__file__ or frame.f_code.co_filename == __file__:
            frame = frame.f_back  # type: ignore
            depth += 1
        logger.opt(depth=depth, exception=record.exc_info).log(
            level,
            record.getMessage(),
        )


def configure_intercepter(level: int = logging.INFO) -> None:
    """
    Installs an InterceptHandler on the root logger and captures `warnings.warn` output,
    so that quadrature and positivity warnings end up in the same stream as our own logs.
    """
    intercept_handler = InterceptHandler()
    logging.basicConfig(handlers=[intercept_handler], level=level, force=True)
    logging.captureWarnings(True)
    logging.getLogger("py.warnings").handlers = [intercept_handler]


def configure_pretty_logging(level: str = "DEBUG") -> None:
    """
    Enables the 'heatvalve' logger with colourised, human readable output on stderr.
    """
    logger.enable("heatvalve")

    configure_intercepter()

    logger.remove()
    logger.add(
        sys.stderr,
        level=level,
        backtrace=False,
        diagnose=False,
        serialize=False,
        colorize=True,
    )


def configure_json_logging(level: str = "DEBUG") -> None:
    """
    Enables the 'heatvalve' logger with one JSON object per line on stderr.
    """
    logger.enable("heatvalve")

    configure_intercepter()

    logger.remove()
    logger.add(
        sys.stderr,
        format="{message}",
        level=level,
        backtrace=False,
        diagnose=False,
        serialize=True,
    )
