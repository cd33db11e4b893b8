from typing import Optional

import numpy as np

from heatvalve.bath_spectra import rate_gamma
from heatvalve.circuit_model import bath_coupling_operator
from heatvalve.constants import DEFAULT_DEGENERACY_TOLERANCE, HBAR
from heatvalve.exceptions import ConsistencyError, DomainError
from heatvalve.generators.bohr import bohr_decompose
from heatvalve.generators.liouvillian import Superoperator
from heatvalve.models.bath import BathSpec
from heatvalve.models.model import ArrayModel
from heatvalve.operator_algebra import EigenBasis, commutator
from heatvalve.steady_state import DensityMatrix

IMAGINARY_TOLERANCE = 1e-12


class GoldenRuleRates(ArrayModel):
    """rates[i, j] is the rate Γ_{i→j} of the jump from eigenstate i to eigenstate j."""

    rates: np.ndarray
    energies: np.ndarray

    @property
    def gaps(self) -> np.ndarray:
        """E[i, j] = ε_i − ε_j."""
        return self.energies[:, np.newaxis] - self.energies[np.newaxis, :]


def golden_rule_rates(
    basis: EigenBasis,
    bath: BathSpec,
    A: Optional[np.ndarray] = None,
    tol_degeneracy: float = DEFAULT_DEGENERACY_TOLERANCE,
) -> GoldenRuleRates:
    """
    Transition rates α²·γ(ω)·|⟨ε_i|A|ε_j⟩|² built from the same Bohr terms as the full secular
    generator, so that γ is evaluated at the merged Bohr frequencies.
    """
    if A is None:
        A = bath_coupling_operator(bath.side, basis.space)
    d = basis.dimension
    rates = np.zeros((d, d))
    for term in bohr_decompose(basis, A, tol_degeneracy):
        # op[i, j] ≠ 0 takes j to i, lowering the energy by ω
        rates += rate_gamma(bath, term.omega) * (np.abs(term.op) ** 2).T
    return GoldenRuleRates(rates=bath.alpha**2 * rates, energies=basis.energies)


def heat_flow_trace(H_S: np.ndarray, D_b: Superoperator, rho: DensityMatrix) -> float:
    """P = Tr[H_S·D_b(ρ)], positive when energy flows from the bath into the system."""
    value = np.trace(H_S @ D_b.apply(rho.matrix))
    scale = np.linalg.norm(H_S) * D_b.norm()
    if abs(value.imag) > IMAGINARY_TOLERANCE * max(scale, 1.0):
        raise ConsistencyError(f"heat flow has an imaginary part {value.imag:.3e}")
    return float(value.real)


def heat_flow_golden_rule(rates: GoldenRuleRates, rho: DensityMatrix) -> float:
    """
    P = Σ_ij Γ_{j→i}·ρ_jj·(ε_i − ε_j): every jump weighted by the population it starts from
    and the energy it brings into the system. `rho` must be given in the energy eigenbasis.
    """
    if rho.d != len(rates.energies):
        raise ConsistencyError(
            f"state of dimension {rho.d} does not match {len(rates.energies)} energy levels"
        )
    populations = np.real(np.diag(rho.matrix))
    # rates[j, i]·ρ_jj·E[i, j]
    return float(np.sum(rates.rates * populations[:, np.newaxis] * rates.gaps.T))


def lamb_shift_heat_defect(H_S: np.ndarray, H_LS: np.ndarray, rho: DensityMatrix) -> float:
    """i·Tr[H_S[H_LS, ρ]], which equals P_L + P_R at the steady state."""
    return float(np.real(1j * np.trace(H_S @ commutator(H_LS, rho.matrix))))


def to_si_power(p_natural: float, omega_L_SI: float) -> float:
    if omega_L_SI <= 0:
        raise DomainError(f"Ω_L must be positive, got {omega_L_SI}")
    return HBAR * omega_L_SI**2 * p_natural
