from enum import Enum
from typing import Literal, Union

from pydantic.v1 import validator

from .model import TypedModel

PUBLISHED_C_PSA = 100.0

AutoClusterWidth = Literal["auto"]


class GeneratorMethodType(str, Enum):
    BASE = "method_base"
    REDFIELD = "method_redfield"
    PARTIAL_SECULAR = "method_partial_secular"
    FULL_SECULAR = "method_full_secular"
    UNIFIED = "method_unified"


class GeneratorMethod(TypedModel, type=GeneratorMethodType.BASE.value):  # type: ignore
    def label(self) -> str:
        raise NotImplementedError


class RedfieldMethod(GeneratorMethod, type=GeneratorMethodType.REDFIELD.value):  # type: ignore
    def label(self) -> str:
        return "redfield"


class PartialSecularMethod(
    GeneratorMethod, type=GeneratorMethodType.PARTIAL_SECULAR.value  # type: ignore
):
    c_psa: float = PUBLISHED_C_PSA

    @validator("c_psa")
    def cutoff_must_be_positive(cls, v):
        if v <= 0:
            raise ValueError("must be positive")
        return v

    def label(self) -> str:
        return f"psa:{self.c_psa:.17g}"


class FullSecularMethod(GeneratorMethod, type=GeneratorMethodType.FULL_SECULAR.value):  # type: ignore
    def label(self) -> str:
        return "full_secular"


class UnifiedMethod(GeneratorMethod, type=GeneratorMethodType.UNIFIED.value):  # type: ignore
    delta_cluster: Union[float, AutoClusterWidth] = "auto"

    @validator("delta_cluster")
    def width_must_be_positive(cls, v):
        if v != "auto" and v <= 0:
            raise ValueError("must be positive or 'auto'")
        return v

    def label(self) -> str:
        if self.delta_cluster == "auto":
            return "unified:auto"
        return f"unified:{self.delta_cluster:.17g}"


def parse_method_spec(spec: str) -> GeneratorMethod:
    """Parses the `NAME[:PARAM]` grammar used on the command line and in CSV files."""
    name, _, param = spec.strip().partition(":")
    name = name.lower()
    if name == "redfield" and not param:
        return RedfieldMethod()
    if name in ("psa", "partial_secular"):
        return PartialSecularMethod(c_psa=float(param)) if param else PartialSecularMethod()
    if name in ("full_secular", "secular") and not param:
        return FullSecularMethod()
    if name == "unified":
        if not param or param == "auto":
            return UnifiedMethod()
        return UnifiedMethod(delta_cluster=float(param))
    raise ValueError(f"Unknown method spec {spec!r}")
