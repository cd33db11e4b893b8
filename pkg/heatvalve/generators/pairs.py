import math
from typing import FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from heatvalve.bath_spectra import BathResponse
from heatvalve.models.model import ArrayModel, BaseModel

from .bohr import BohrTerm, group_frequencies


class FrequencyCluster(BaseModel):
    members: Tuple[int, ...]
    representative: float


class PairSet(ArrayModel):
    """
    Retained (ω, ω′) pairs of one bath, as a boolean mask over the Bohr terms it was
    selected from. Cluster-based selections also carry the clusters whose summed
    operators replace the individual terms.
    """

    omegas: np.ndarray
    mask: np.ndarray
    tau_R: float
    clusters: Optional[List[FrequencyCluster]] = None

    @property
    def pairs(self) -> FrozenSet[Tuple[float, float]]:
        rows, cols = np.nonzero(self.mask)
        return frozenset((float(self.omegas[k]), float(self.omegas[l])) for k, l in zip(rows, cols))

    @property
    def size(self) -> int:
        return int(self.mask.sum())

    def issubset(self, other: "PairSet") -> bool:
        return self.pairs <= other.pairs

    def jump_operators(
        self, terms: Sequence[BohrTerm]
    ) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        Frequencies, stacked operators and pair mask entering the dissipator. Without clusters
        these are the Bohr terms themselves; with clusters every cluster contributes the sum of
        its members' operators at the cluster's representative frequency.
        """
        if len(terms) != len(self.omegas):
            raise ValueError("pair set was selected from a different list of Bohr terms")
        if self.clusters is None:
            ops = np.array([t.op for t in terms])
            return self.omegas, ops, self.mask
        omegas = np.array([c.representative for c in self.clusters])
        ops = np.array([sum(terms[k].op for k in c.members) for c in self.clusters])
        return omegas, ops, np.eye(len(self.clusters), dtype=bool)


def relaxation_time(alpha: float, response: BathResponse) -> float:
    """τ_R = α⁻²/max|Γ(ω)| over the bath's Bohr frequencies; infinite without dissipation."""
    fastest = response.max_abs_Gamma()
    if alpha == 0 or fastest == 0:
        return math.inf
    return 1.0 / (alpha**2 * fastest)


def unified_cluster(omegas: Sequence[float], delta_cluster: float) -> List[FrequencyCluster]:
    omegas = np.asarray(omegas, dtype=float)
    if np.any(np.diff(omegas) < 0):
        raise ValueError("Bohr frequencies must be sorted ascending")
    clusters = []
    start = 0
    for group in group_frequencies(omegas, delta_cluster):
        members = tuple(range(start, start + len(group)))
        clusters.append(
            FrequencyCluster(members=members, representative=math.fsum(group) / len(group))
        )
        start += len(group)
    return clusters
