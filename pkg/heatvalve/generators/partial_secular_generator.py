import numpy as np

from heatvalve.models.method import PartialSecularMethod

from .base_generator import BaseGenerator


class PartialSecularGenerator(BaseGenerator[PartialSecularMethod]):
    """
    Keeps a cross term unless it rotates fast on the relaxation scale, i.e. drops (ω, ω′)
    when C_PSA/|ω − ω′| < τ_R. Diagonal pairs are always kept.
    """

    def select_mask(self, omegas: np.ndarray, tau_R: float) -> np.ndarray:
        detuning = np.abs(omegas[:, np.newaxis] - omegas[np.newaxis, :])
        # C/|Δ| ≥ τ_R  ⇔  |Δ| ≤ C/τ_R
        mask = detuning <= self.method.c_psa / tau_R
        np.fill_diagonal(mask, True)
        return mask
