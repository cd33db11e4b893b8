from loguru import logger
from pydantic.v1 import root_validator, validator

from heatvalve.constants import TRANSMON_REGIME_WARNING_RATIO

from .model import BaseModel

# published parameter set of the ohmic partial secular model, in units of Ω_L
PUBLISHED_E_C = 0.15
PUBLISHED_E_J0 = 28.75
PUBLISHED_D_ASYM = 0.385
PUBLISHED_G = 0.015
PUBLISHED_G12 = 0.007
PUBLISHED_N_RES_LEVELS = 3

# the Lorentzian full secular model shares E_C and d but was fitted with these
LORENTZIAN_E_J0 = 27.54
LORENTZIAN_G = 0.0171
LORENTZIAN_G12 = -0.0217


class TransmonParams(BaseModel):
    E_C: float = PUBLISHED_E_C
    E_J0: float = PUBLISHED_E_J0
    d_asym: float = PUBLISHED_D_ASYM

    @validator("E_C", "E_J0")
    def energies_must_be_positive(cls, v):
        if v <= 0:
            raise ValueError("must be positive")
        return v

    @validator("d_asym")
    def asymmetry_in_unit_interval(cls, v):
        if not 0 <= v <= 1:
            raise ValueError("must lie in [0, 1]")
        return v

    @root_validator(skip_on_failure=True)
    def transmon_regime(cls, values):
        ratio = values["E_J0"] / values["E_C"]
        if ratio <= 1:
            raise ValueError(f"E_J0/E_C = {ratio:.3g} is outside the transmon regime")
        if ratio < TRANSMON_REGIME_WARNING_RATIO:
            logger.warning(f"E_J0/E_C = {ratio:.3g} is below {TRANSMON_REGIME_WARNING_RATIO:g}")
        return values


class CircuitParams(BaseModel):
    omega_L: float = 1.0
    omega_R: float = 1.0
    g: float = PUBLISHED_G
    g12: float = PUBLISHED_G12
    transmon: TransmonParams = TransmonParams()
    n_res_levels: int = PUBLISHED_N_RES_LEVELS

    @validator("omega_L", "omega_R")
    def frequencies_must_be_positive(cls, v):
        if v <= 0:
            raise ValueError("must be positive")
        return v

    @validator("n_res_levels")
    def at_least_two_levels(cls, v):
        if v < 2:
            raise ValueError("resonators need at least 2 levels")
        return v

    @root_validator(skip_on_failure=True)
    def dispersive_sanity(cls, values):
        smallest = min(values["omega_L"], values["omega_R"])
        for name in ("g", "g12"):
            if abs(values[name]) >= smallest:
                logger.warning(f"|{name}| = {abs(values[name]):.3g} is not below min(Ω_L, Ω_R)")
        return values
