try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from importlib import resources
from pathlib import Path
from typing import Optional, Union

from loguru import logger
from pydantic.v1 import ValidationError

from heatvalve.exceptions import ConfigError
from heatvalve.models.method import parse_method_spec
from heatvalve.models.sweep import FluxGrid, OutputConfig, SweepConfig

PRESET_PACKAGE = "heatvalve.presets"


def _dotted_key(loc) -> Optional[str]:
    parts = [str(part) for part in loc if part != "__root__"]
    if parts and parts[0] == "baths":
        parts[0] = "bath"
    return ".".join(parts) or None


def _config_error(e: ValidationError) -> ConfigError:
    first = e.errors()[0]
    key = _dotted_key(first["loc"])
    message = first["msg"]
    if message == "extra fields not permitted":
        message = "unknown key"
    return ConfigError(message, key=key)


def parse_config(data: dict) -> SweepConfig:
    try:
        return SweepConfig(**data)
    except ValidationError as e:
        raise _config_error(e) from e
    except ValueError as e:
        raise ConfigError(str(e)) from e


def load_config(path: Union[str, Path]) -> SweepConfig:
    path = Path(path)
    try:
        with path.open("rb") as f:
            data = tomllib.load(f)
    except FileNotFoundError as e:
        raise ConfigError(f"config file {path} not found") from e
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"{path} is not valid TOML: {e}") from e
    config = parse_config(data)
    logger.debug(f"Loaded {path} ({config.method.label()}, {config.flux_grid.points} points)")
    return config


def preset_path(name: str) -> Path:
    candidate = resources.files(PRESET_PACKAGE).joinpath(f"{name}.toml")
    if not candidate.is_file():
        raise ConfigError(f"no bundled preset named {name!r}")
    return Path(str(candidate))


def load_preset(name: str) -> SweepConfig:
    return load_config(preset_path(name))


def resolve_config(config: Union[str, Path]) -> SweepConfig:
    """Loads a config file, falling back to a bundled preset of that name."""
    path = Path(config)
    if path.suffix == ".toml" or path.exists():
        return load_config(path)
    return load_preset(str(config))


def apply_overrides(
    config: SweepConfig,
    method: Optional[str] = None,
    points: Optional[int] = None,
    out: Optional[str] = None,
    no_lamb_shift: bool = False,
    parallel: Optional[int] = None,
) -> SweepConfig:
    """Command line flags take precedence over the config file."""
    updates: dict = {}
    if method is not None:
        try:
            updates["method"] = parse_method_spec(method)
        except ValueError as e:
            raise ConfigError(str(e), key="method") from e
    if points is not None:
        try:
            updates["flux_grid"] = FluxGrid(**{**config.flux_grid.dict(), "points": points})
        except ValidationError as e:
            raise ConfigError(e.errors()[0]["msg"], key="flux_grid.points") from e
    if out is not None:
        updates["output"] = OutputConfig(**{**config.output.dict(), "path": out})
    if parallel is not None:
        updates["parallelism"] = parallel
    if no_lamb_shift:
        updates["baths"] = {
            side: spec.with_updates(lamb_shift_enabled=False) for side, spec in config.baths.items()
        }
    if not updates:
        return config
    try:
        return config.with_updates(**updates)
    except ValidationError as e:
        raise _config_error(e) from e
