import numpy as np

from heatvalve.exceptions import LayoutError
from heatvalve.models.bath import BathSide
from heatvalve.models.circuit import CircuitParams, TransmonParams
from heatvalve.operator_algebra import CompositeSpace, annihilation, tensor_embed

RESONATOR_LEFT = "L"
QUBIT = "q"
RESONATOR_RIGHT = "R"


def valve_space(n_res_levels: int) -> CompositeSpace:
    return CompositeSpace(
        dims=(n_res_levels, 2, n_res_levels),
        labels=(RESONATOR_LEFT, QUBIT, RESONATOR_RIGHT),
    )


def josephson_energy(phi, p: TransmonParams):
    """
    Flux-dependent Josephson energy of the asymmetric SQUID, in the form
    E_J0·√(cos²(πφ) + d²·sin²(πφ)) which stays finite at half flux.
    Accepts scalars or arrays of φ.
    """
    c = np.cos(np.pi * np.asarray(phi))
    s = np.sin(np.pi * np.asarray(phi))
    return p.E_J0 * np.sqrt(c * c + p.d_asym**2 * s * s)


def transmon_frequency(phi, p: TransmonParams):
    omega_q = np.sqrt(8.0 * josephson_energy(phi, p) * p.E_C) - p.E_C
    return float(omega_q) if np.ndim(omega_q) == 0 else omega_q


def dag(op: np.ndarray) -> np.ndarray:
    return op.conj().T


def _valve_operators(space: CompositeSpace):
    n_res = space.dims[0]
    a_L = tensor_embed(annihilation(n_res), space.slot(RESONATOR_LEFT), space)
    sigma_minus = tensor_embed(annihilation(2), space.slot(QUBIT), space)
    a_R = tensor_embed(annihilation(n_res), space.slot(RESONATOR_RIGHT), space)
    return a_L, sigma_minus, a_R


def hamiltonian_from_frequencies(c: CircuitParams, omega_q: float) -> np.ndarray:
    """Resonator-qubit-resonator Hamiltonian in rotating-wave form at a given qubit frequency."""
    space = valve_space(c.n_res_levels)
    a_L, sm, a_R = _valve_operators(space)
    H = (
        c.omega_L * dag(a_L) @ a_L
        + c.omega_R * dag(a_R) @ a_R
        + omega_q * dag(sm) @ sm
        + c.g * (a_L @ dag(sm) + dag(a_L) @ sm)
        + c.g * (a_R @ dag(sm) + dag(a_R) @ sm)
        + c.g12 * (a_L @ dag(a_R) + dag(a_L) @ a_R)
    )
    return H


def build_system_hamiltonian(c: CircuitParams, phi: float) -> np.ndarray:
    return hamiltonian_from_frequencies(c, transmon_frequency(phi, c.transmon))


def total_excitation_number(space: CompositeSpace) -> np.ndarray:
    a_L, sm, a_R = _valve_operators(space)
    return dag(a_L) @ a_L + dag(sm) @ sm + dag(a_R) @ a_R


def bath_coupling_operator(side, space: CompositeSpace) -> np.ndarray:
    """Momentum quadrature i(a† − a) of the resonator attached to the given bath."""
    try:
        label = BathSide(side).value
    except ValueError:
        raise LayoutError(f"unknown bath side {side!r}")
    slot = space.slot(label)
    a = annihilation(space.dims[slot])
    return tensor_embed(1j * (dag(a) - a), slot, space)
