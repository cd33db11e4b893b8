from typing import List

import numpy as np
from loguru import logger

from heatvalve.bath_spectra import BathResponse
from heatvalve.models.method import UnifiedMethod

from .base_generator import BaseGenerator
from .bohr import BohrTerm
from .pairs import PairSet, relaxation_time, unified_cluster


class UnifiedGenerator(BaseGenerator[UnifiedMethod]):
    """
    Groups nearby Bohr frequencies into clusters; the jump operator of a cluster is the sum
    of its members, evaluated at the cluster mean, which puts the generator in GKSL form.
    """

    def cluster_width(self, tau_R: float) -> float:
        if self.method.delta_cluster == "auto":
            return 1.0 / tau_R
        return float(self.method.delta_cluster)

    def select_pairs(self, terms: List[BohrTerm], response: BathResponse, alpha: float) -> PairSet:
        if not terms:
            raise ValueError("at least one Bohr term is required")
        omegas = np.array([t.omega for t in terms])
        tau_R = relaxation_time(alpha, response)
        clusters = unified_cluster(omegas, self.cluster_width(tau_R))

        labels = np.empty(len(omegas), dtype=int)
        for index, cluster in enumerate(clusters):
            labels[list(cluster.members)] = index
        mask = labels[:, np.newaxis] == labels[np.newaxis, :]
        logger.debug(f"{len(omegas)} Bohr frequencies in {len(clusters)} clusters")
        return PairSet(omegas=omegas, mask=mask, tau_R=tau_R, clusters=clusters)
