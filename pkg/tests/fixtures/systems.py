from typing import List, Tuple

import numpy as np

from heatvalve.bath_spectra import BathResponse
from heatvalve.circuit_model import hamiltonian_from_frequencies, valve_space
from heatvalve.generators.bohr import BohrTerm, bohr_decompose
from heatvalve.models.bath import BathSide, BathSpec, OhmicSpectralModel
from heatvalve.models.circuit import CircuitParams
from heatvalve.models.sweep import SweepConfig
from heatvalve.operator_algebra import CompositeSpace, EigenBasis, eigendecompose_hermitian

QUBIT_SPACE = CompositeSpace(dims=(2,), labels=("L",))
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)


def qubit_basis(omega: float) -> EigenBasis:
    """H = ω σ₊σ₋ on a single two-level system; index 1 is the excited state."""
    return eigendecompose_hermitian(np.diag([0.0, omega]).astype(complex), QUBIT_SPACE)


def qubit_terms(bath: BathSpec, omega: float) -> Tuple[EigenBasis, List[BohrTerm], BathResponse]:
    basis = qubit_basis(omega)
    terms = bohr_decompose(basis, SIGMA_X)
    response = BathResponse.build(bath, [t.omega for t in terms])
    return basis, terms, response


def ohmic_bath(side: str, temperature: float, alpha: float, omega_c: float = 10.0) -> BathSpec:
    return BathSpec(
        side=BathSide(side),
        model=OhmicSpectralModel(chi=1.0, omega_c=omega_c),
        temperature=temperature,
        alpha=alpha,
    )


def damped_circuit(omega_R: float = 1.2) -> CircuitParams:
    """Two-level resonators coupled strongly enough that every mode relaxes quickly."""
    return CircuitParams(omega_L=1.0, omega_R=omega_R, g=0.1, g12=0.05, n_res_levels=2)


def damped_hamiltonian(omega_q: float = 1.1, omega_R: float = 1.2) -> np.ndarray:
    return hamiltonian_from_frequencies(damped_circuit(omega_R), omega_q)


def damped_space() -> CompositeSpace:
    return valve_space(2)


def damped_config(**bath_updates) -> SweepConfig:
    """Flux-tunable version of the damped system, small enough for exhaustive checks."""
    baths = {
        "L": {"temperature": 1.0, "alpha": 0.05, **bath_updates},
        "R": {"temperature": 0.4, "alpha": 0.05, **bath_updates},
    }
    for spec in baths.values():
        spec.setdefault("model", OhmicSpectralModel(chi=1.0, omega_c=10.0))
    return SweepConfig(
        circuit=damped_circuit(),
        baths=baths,
        flux_grid={"start": 0.0, "stop": 1.0, "points": 3},
    )
