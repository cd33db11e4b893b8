from typing import Any, Dict, Optional

import numpy as np
from pydantic.v1 import root_validator, validator

from heatvalve.constants import (
    DEFAULT_DEGENERACY_TOLERANCE,
    DEFAULT_FLUX_POINTS,
    DEFAULT_OMEGA_L_GHZ,
    DEFAULT_POSITIVITY_TOLERANCE,
    DEFAULT_QUADRATURE_TOLERANCE,
    DEFAULT_SOLVER_TOLERANCE,
    millikelvin_to_natural,
    omega_l_si,
)

from .bath import BathSide, BathSpec
from .circuit import CircuitParams
from .method import GeneratorMethod, PartialSecularMethod, parse_method_spec
from .model import BaseModel


class FluxGrid(BaseModel):
    start: float = 0.0
    stop: float = 1.0
    points: int = DEFAULT_FLUX_POINTS

    @validator("points")
    def at_least_two_points(cls, v):
        if v < 2:
            raise ValueError("must be at least 2")
        return v

    @root_validator(skip_on_failure=True)
    def ordered(cls, values):
        if values["start"] >= values["stop"]:
            raise ValueError("start must be below stop")
        return values

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)

    @property
    def step(self) -> float:
        return (self.stop - self.start) / (self.points - 1)


class Tolerances(BaseModel):
    degeneracy: float = DEFAULT_DEGENERACY_TOLERANCE
    pos_tol: float = DEFAULT_POSITIVITY_TOLERANCE
    solver: float = DEFAULT_SOLVER_TOLERANCE
    quadrature: float = DEFAULT_QUADRATURE_TOLERANCE

    @validator("*")
    def must_be_positive(cls, v):
        if v <= 0:
            raise ValueError("must be positive")
        return v


class OutputConfig(BaseModel):
    path: Optional[str] = None
    overwrite: bool = True


class Units(BaseModel):
    # Ω_L / 2π
    omega_L_GHz: float = DEFAULT_OMEGA_L_GHZ

    @validator("omega_L_GHz")
    def must_be_positive(cls, v):
        if v <= 0:
            raise ValueError("must be positive")
        return v

    @property
    def omega_L_SI(self) -> float:
        return omega_l_si(self.omega_L_GHz)


class SweepConfig(BaseModel):
    circuit: CircuitParams = CircuitParams()
    baths: Dict[BathSide, BathSpec]
    method: GeneratorMethod = PartialSecularMethod()
    flux_grid: FluxGrid = FluxGrid()
    tolerances: Tolerances = Tolerances()
    output: OutputConfig = OutputConfig()
    units: Units = Units()
    parallelism: int = 1

    @root_validator(pre=True)
    def natural_units(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        values = dict(values)
        if "bath" in values:
            if "baths" in values:
                raise ValueError("give either bath or baths, not both")
            values["baths"] = values.pop("bath")
        if isinstance(values.get("method"), str):
            values["method"] = parse_method_spec(values["method"])

        units = values.get("units", {})
        if isinstance(units, Units):
            omega_l_ghz = units.omega_L_GHz
        else:
            omega_l_ghz = units.get("omega_L_GHz", DEFAULT_OMEGA_L_GHZ)

        baths = values.get("baths")
        if isinstance(baths, dict):
            converted = {}
            for side, spec in baths.items():
                if isinstance(spec, dict):
                    spec = dict(spec)
                    spec.setdefault("side", side)
                    if "temperature_mK" in spec:
                        if "temperature" in spec:
                            raise ValueError(
                                f"bath {side} sets both temperature and temperature_mK"
                            )
                        spec["temperature"] = millikelvin_to_natural(
                            spec.pop("temperature_mK"), omega_l_ghz
                        )
                converted[side] = spec
            values["baths"] = converted
        return values

    @validator("baths")
    def both_sides(cls, v):
        if set(v) != {BathSide.LEFT, BathSide.RIGHT}:
            raise ValueError("exactly the L and R baths are required")
        for side, spec in v.items():
            if spec.side != side:
                raise ValueError(f"bath listed under {side.value} declares side {spec.side.value}")
        return v

    @validator("method")
    def method_must_be_concrete(cls, v):
        if type(v) is GeneratorMethod:
            raise ValueError("a concrete method type is required")
        return v

    @validator("parallelism")
    def parallelism_must_be_positive(cls, v):
        if v < 1:
            raise ValueError("must be at least 1")
        return v

    @property
    def bath_L(self) -> BathSpec:
        return self.baths[BathSide.LEFT]

    @property
    def bath_R(self) -> BathSpec:
        return self.baths[BathSide.RIGHT]

    def bath_list(self):
        return [self.bath_L, self.bath_R]

    def with_updates(self, **updates) -> "SweepConfig":
        current = {name: getattr(self, name) for name in self.__fields__}
        return SweepConfig(**{**current, **updates})

    def with_baths(self, **per_side_updates: Dict[str, Any]) -> "SweepConfig":
        """Returns a copy with per-bath field overrides, e.g. `with_baths(R={"alpha": 0.0})`."""
        baths = dict(self.baths)
        for side, updates in per_side_updates.items():
            baths[BathSide(side)] = baths[BathSide(side)].with_updates(**updates)
        return self.with_updates(baths=baths)
