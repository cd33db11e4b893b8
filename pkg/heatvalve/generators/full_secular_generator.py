import numpy as np

from heatvalve.models.method import FullSecularMethod

from .base_generator import BaseGenerator


class FullSecularGenerator(BaseGenerator[FullSecularMethod]):
    def select_mask(self, omegas: np.ndarray, tau_R: float) -> np.ndarray:
        return np.eye(len(omegas), dtype=bool)
