from typing import Generic, List, TypeVar

import numpy as np

from heatvalve.bath_spectra import BathResponse
from heatvalve.models.method import GeneratorMethod

from .bohr import BohrTerm
from .pairs import PairSet, relaxation_time

GeneratorMethodType = TypeVar("GeneratorMethodType", bound=GeneratorMethod)


class BaseGenerator(Generic[GeneratorMethodType]):
    """
    Decides which (ω, ω′) cross terms of the second-order generator survive for one bath.
    Subclasses implement `select_mask`; the dissipator and Lamb-shift assembly is shared.
    """

    def __init__(self, method: GeneratorMethodType):
        self.method = method

    def get_method(self) -> GeneratorMethod:
        return self.method

    def select_mask(self, omegas: np.ndarray, tau_R: float) -> np.ndarray:
        raise NotImplementedError

    def select_pairs(self, terms: List[BohrTerm], response: BathResponse, alpha: float) -> PairSet:
        if not terms:
            raise ValueError("at least one Bohr term is required")
        omegas = np.array([t.omega for t in terms])
        tau_R = relaxation_time(alpha, response)
        return PairSet(omegas=omegas, mask=self.select_mask(omegas, tau_R), tau_R=tau_R)
