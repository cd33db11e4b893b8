import math
from typing import List

import numpy as np
from loguru import logger

from heatvalve.constants import DEFAULT_DEGENERACY_TOLERANCE, MATRIX_ELEMENT_CUTOFF
from heatvalve.models.model import ArrayModel
from heatvalve.operator_algebra import EigenBasis, check_hermitian


class BohrTerm(ArrayModel):
    """
    One eigenoperator A(ω) = Σ_{ε_j − ε_i = ω} ⟨ε_i|A|ε_j⟩ |ε_i⟩⟨ε_j|, stored in the energy
    eigenbasis. A(ω) lowers the energy by ω, so positive ω pairs with emission into the bath.
    """

    omega: float
    op: np.ndarray


def group_frequencies(values: np.ndarray, tolerance: float) -> List[np.ndarray]:
    """Single-linkage grouping of sorted values: neighbours closer than `tolerance` merge."""
    if len(values) == 0:
        return []
    splits = np.nonzero(np.diff(values) >= tolerance)[0] + 1
    return np.split(values, splits)


def bohr_decompose(
    basis: EigenBasis,
    A: np.ndarray,
    tol_degeneracy: float = DEFAULT_DEGENERACY_TOLERANCE,
) -> List[BohrTerm]:
    check_hermitian(A, "coupling operator")
    if tol_degeneracy <= 0:
        raise ValueError("tol_degeneracy must be positive")

    A_eig = basis.to_eigenbasis(A)
    scale = np.max(np.abs(A_eig)) if A_eig.size else 0.0
    nonzero = np.abs(A_eig) > MATRIX_ELEMENT_CUTOFF * scale
    if scale == 0 or not nonzero.any():
        return []

    # gaps[i, j] = ε_j − ε_i
    energies = basis.energies
    gaps = energies[np.newaxis, :] - energies[:, np.newaxis]

    # grouping on |gap| keeps A(−ω) = A(ω)† exact
    magnitudes = np.unique(np.abs(gaps[nonzero]))
    representative = np.empty_like(gaps)
    for group in group_frequencies(magnitudes, tol_degeneracy):
        value = 0.0 if group[0] < tol_degeneracy else math.fsum(group) / len(group)
        members = np.isin(np.abs(gaps), group) & nonzero
        representative[members] = np.sign(gaps[members]) * value if value else 0.0

    terms = []
    for omega in np.unique(representative[nonzero]):
        members = nonzero & (representative == omega)
        terms.append(BohrTerm(omega=float(omega), op=np.where(members, A_eig, 0.0)))

    logger.debug(f"{len(terms)} Bohr frequencies from {int(nonzero.sum())} matrix elements")
    return terms


def bohr_spectrum(terms: List[BohrTerm]) -> np.ndarray:
    return np.array([t.omega for t in terms])
