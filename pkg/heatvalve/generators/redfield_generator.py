import numpy as np

from heatvalve.models.method import RedfieldMethod

from .base_generator import BaseGenerator


class RedfieldGenerator(BaseGenerator[RedfieldMethod]):
    def select_mask(self, omegas: np.ndarray, tau_R: float) -> np.ndarray:
        return np.ones((len(omegas), len(omegas)), dtype=bool)
