from enum import Enum

from loguru import logger
from pydantic.v1 import validator

from heatvalve.constants import ALPHA_WARNING_THRESHOLD

from .model import BaseModel, TypedModel

PUBLISHED_ALPHA = 0.04
PUBLISHED_OMEGA_C = 50.0
PUBLISHED_T_L_MK = 308.0
PUBLISHED_T_R_MK = 100.0
LORENTZIAN_Q = 20.0
DEFAULT_CHI = 1.0


class SpectralModelType(str, Enum):
    BASE = "spectral_model_base"
    OHMIC = "spectral_model_ohmic"
    LORENTZIAN = "spectral_model_lorentzian"


class BathSide(str, Enum):
    LEFT = "L"
    RIGHT = "R"


class SpectralModel(TypedModel, type=SpectralModelType.BASE.value):  # type: ignore
    chi: float = DEFAULT_CHI

    @validator("chi")
    def chi_must_be_nonnegative(cls, v):
        if v < 0:
            raise ValueError("must be nonnegative")
        return v

    def scale(self) -> float:
        """Characteristic frequency of the model (cutoff or peak)."""
        raise NotImplementedError


class OhmicSpectralModel(SpectralModel, type=SpectralModelType.OHMIC.value):  # type: ignore
    omega_c: float = PUBLISHED_OMEGA_C

    @validator("omega_c")
    def cutoff_must_be_positive(cls, v):
        if v <= 0:
            raise ValueError("must be positive")
        return v

    def scale(self) -> float:
        return self.omega_c


class LorentzianSpectralModel(
    SpectralModel, type=SpectralModelType.LORENTZIAN.value  # type: ignore
):
    Q: float = LORENTZIAN_Q
    omega_r: float = 1.0

    @validator("Q", "omega_r")
    def must_be_positive(cls, v):
        if v <= 0:
            raise ValueError("must be positive")
        return v

    def scale(self) -> float:
        return self.omega_r


class BathSpec(BaseModel):
    side: BathSide
    model: SpectralModel = OhmicSpectralModel()
    # k_B·T in units of ħΩ_L
    temperature: float
    alpha: float = PUBLISHED_ALPHA
    lamb_shift_enabled: bool = False

    @validator("model")
    def model_must_be_concrete(cls, v):
        if type(v) is SpectralModel:
            raise ValueError("a concrete spectral model type is required")
        return v

    @validator("temperature")
    def temperature_must_be_positive(cls, v):
        if v <= 0:
            raise ValueError("must be positive")
        return v

    @validator("alpha")
    def weak_coupling(cls, v):
        if not 0 <= v < 1:
            raise ValueError("must lie in [0, 1)")
        if v > ALPHA_WARNING_THRESHOLD:
            logger.warning(f"alpha = {v:.3g} is not a weak system-bath coupling")
        return v

    def with_updates(self, **updates) -> "BathSpec":
        return BathSpec(**{**self._field_values(), **updates})

    def _field_values(self) -> dict:
        return {name: getattr(self, name) for name in self.__fields__}
