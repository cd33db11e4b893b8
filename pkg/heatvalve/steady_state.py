import math
import warnings
from enum import Enum
from typing import Optional

import numpy as np
import scipy.linalg
from loguru import logger

from heatvalve.constants import DEFAULT_POSITIVITY_TOLERANCE, DEFAULT_SOLVER_TOLERANCE
from heatvalve.exceptions import (
    DegenerateKernelError,
    NumericalAccuracyError,
    PositivityWarning,
    StabilityError,
)
from heatvalve.generators.liouvillian import Superoperator
from heatvalve.models.model import ArrayModel, BaseModel
from heatvalve.operator_algebra import check_hermitian, hermiticity_defect, unvec, vec

STATE_TOLERANCE = 1e-12
# pivot ratio of the bordered system below which the kernel is inspected
PIVOT_RATIO_THRESHOLD = 1e-12
KERNEL_TOLERANCE = 1e-12
ODE_STABILITY_FACTOR = 0.1


class StateGrade(str, Enum):
    PASS = "pass"
    WARN = "warn"
    FAIL = "fail"


class StateDiagnostics(BaseModel):
    hermiticity_defect: float
    trace_defect: float
    min_eigenvalue: float
    grade: StateGrade


class DensityMatrix(ArrayModel):
    matrix: np.ndarray
    # ‖L·vec(ρ)‖ / ‖L‖ when the state came out of a solve
    residual: Optional[float] = None

    @property
    def d(self) -> int:
        return self.matrix.shape[0]

    @property
    def diagnostics(self) -> StateDiagnostics:
        return validate_state(self)

    @classmethod
    def maximally_mixed(cls, d: int) -> "DensityMatrix":
        return cls(matrix=np.eye(d, dtype=complex) / d)

    def in_basis(self, vectors: np.ndarray) -> "DensityMatrix":
        """ρ expressed in the basis given by the columns of `vectors`."""
        return DensityMatrix(
            matrix=vectors.conj().T @ self.matrix @ vectors, residual=self.residual
        )


def validate_state(
    rho: DensityMatrix, pos_tol: float = DEFAULT_POSITIVITY_TOLERANCE
) -> StateDiagnostics:
    matrix = rho.matrix
    herm = hermiticity_defect(matrix)
    trace_defect = float(abs(np.trace(matrix) - 1.0))
    min_eig = float(np.min(np.linalg.eigvalsh(0.5 * (matrix + matrix.conj().T))))
    if herm > STATE_TOLERANCE or trace_defect > STATE_TOLERANCE:
        grade = StateGrade.FAIL
    elif min_eig < -pos_tol:
        grade = StateGrade.WARN
    else:
        grade = StateGrade.PASS
    return StateDiagnostics(
        hermiticity_defect=herm,
        trace_defect=trace_defect,
        min_eigenvalue=min_eig,
        grade=grade,
    )


def check_positivity(rho: DensityMatrix, pos_tol: float = DEFAULT_POSITIVITY_TOLERANCE) -> None:
    min_eig = validate_state(rho, pos_tol).min_eigenvalue
    if min_eig < -pos_tol:
        logger.warning(f"steady state has a negative eigenvalue {min_eig:.3e}")
        warnings.warn(PositivityWarning(min_eig), stacklevel=2)


def kernel_dimension(L: Superoperator, tolerance: float = KERNEL_TOLERANCE) -> int:
    singular_values = scipy.linalg.svdvals(L.matrix)
    if singular_values[0] == 0:
        return len(singular_values)
    return int(np.sum(singular_values < tolerance * singular_values[0]))


def _trace_row(L: Superoperator) -> int:
    d = L.d
    populations = np.arange(d) * (d + 1)
    return int(populations[np.argmin(np.abs(np.diag(L.matrix)[populations]))])


def solve_steady_state(
    L: Superoperator,
    pos_tol: float = DEFAULT_POSITIVITY_TOLERANCE,
    tolerance: float = DEFAULT_SOLVER_TOLERANCE,
) -> DensityMatrix:
    """
    Solves L·v = 0 with Σᵢ v[i·d+i] = 1 by replacing one population equation, the one with
    the smallest |L_kk|, with the trace constraint.
    """
    d = L.d
    bordered = np.array(L.matrix, dtype=complex)
    row = _trace_row(L)
    bordered[row, :] = 0.0
    bordered[row, np.arange(d) * (d + 1)] = 1.0
    rhs = np.zeros(d * d, dtype=complex)
    rhs[row] = 1.0

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(bordered)
    pivots = np.abs(np.diag(lu))
    if pivots.max() == 0 or pivots.min() < PIVOT_RATIO_THRESHOLD * pivots.max():
        dimension = kernel_dimension(L)
        if dimension > 1:
            raise DegenerateKernelError(dimension)
    v = scipy.linalg.lu_solve((lu, piv), rhs)

    matrix = unvec(v, d)
    matrix = 0.5 * (matrix + matrix.conj().T)
    matrix = matrix / np.trace(matrix)

    scale = L.norm()
    residual = float(np.linalg.norm(L.matrix @ vec(matrix)) / scale) if scale else 0.0
    if residual > tolerance:
        raise NumericalAccuracyError(
            f"steady-state residual {residual:.3e} exceeds {tolerance:.1e}",
            estimated_error=residual,
        )
    rho = DensityMatrix(matrix=matrix, residual=residual)
    check_positivity(rho, pos_tol)
    return rho


def rk4_step_matrix(L: Superoperator, dt: float) -> np.ndarray:
    """Classic fourth-order Runge-Kutta step of vec(ρ̇) = L·vec(ρ), which is linear in ρ."""
    hL = dt * L.matrix
    identity = np.eye(hL.shape[0], dtype=complex)
    hL2 = hL @ hL
    return identity + hL + hL2 / 2 + hL2 @ hL / 6 + hL2 @ hL2 / 24


def evolve_ode(
    L: Superoperator, rho0: DensityMatrix, t_final: float, dt: float
) -> DensityMatrix:
    """
    Fixed-step RK4 from rho0 to t_final with steps no longer than dt. The step count is
    rounded up so that the steps divide t_final exactly.
    """
    if t_final < 0:
        raise ValueError("t_final must be nonnegative")
    if t_final == 0:
        return rho0
    norm = L.spectral_norm()
    if dt <= 0 or dt * norm >= ODE_STABILITY_FACTOR:
        raise StabilityError(
            f"step {dt:.3g} violates dt < {ODE_STABILITY_FACTOR}/‖L‖ "
            f"= {ODE_STABILITY_FACTOR / norm:.3g}"
        )
    n_steps = math.ceil(t_final / dt)
    step = rk4_step_matrix(L, t_final / n_steps)
    propagator = np.linalg.matrix_power(step, n_steps)
    return DensityMatrix(matrix=unvec(propagator @ vec(rho0.matrix), L.d))


def gibbs_state(H: np.ndarray, T: float) -> DensityMatrix:
    check_hermitian(H, "Hamiltonian")
    energies, vectors = scipy.linalg.eigh(H)
    weights = np.exp(-(energies - energies[0]) / T)
    weights /= weights.sum()
    return DensityMatrix(matrix=(vectors * weights) @ vectors.conj().T)


def relaxation_time(L: Superoperator) -> float:
    """1/|Re λ| of the slowest decaying Liouvillian mode, the stationary eigenvalue excluded."""
    eigenvalues = scipy.linalg.eigvals(L.matrix)
    decaying = np.delete(eigenvalues, np.argmin(np.abs(eigenvalues)))
    rates = np.abs(decaying.real)
    rates = rates[rates > KERNEL_TOLERANCE * max(L.spectral_norm(), 1.0)]
    if len(rates) == 0:
        return math.inf
    return float(1.0 / rates.min())


def trace_distance(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    difference = rho.matrix - sigma.matrix
    return float(0.5 * np.sum(np.abs(np.linalg.eigvalsh(0.5 * (difference + difference.conj().T)))))
