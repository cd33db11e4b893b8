import time
from typing import List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from heatvalve.circuit_model import build_system_hamiltonian, transmon_frequency, valve_space
from heatvalve.exceptions import HeatValveError
from heatvalve.generators.liouvillian import (
    BathTerms,
    GeneratorAssembly,
    assemble_from_terms,
    decompose_baths,
)
from heatvalve.models.bath import BathSide
from heatvalve.models.method import GeneratorMethod
from heatvalve.models.model import ArrayModel
from heatvalve.models.records import HeatFlowRecord, MethodTiming
from heatvalve.models.sweep import SweepConfig
from heatvalve.operator_algebra import EigenBasis, eigendecompose_hermitian
from heatvalve.steady_state import DensityMatrix, solve_steady_state
from heatvalve.thermodynamics import heat_flow_trace, to_si_power


class MethodEvaluation(ArrayModel):
    record: HeatFlowRecord
    timing: Optional[MethodTiming] = None
    assembly: Optional[GeneratorAssembly] = None
    state: Optional[DensityMatrix] = None


class FluxPointEvaluation(ArrayModel):
    """All requested methods at one flux point, sharing one diagonalization of H_S."""

    phi: float
    omega_q: float
    basis: EigenBasis
    bath_terms: List[BathTerms]
    methods: List[MethodEvaluation]


def prepare_flux_point(config: SweepConfig, phi: float) -> Tuple[EigenBasis, List[BathTerms]]:
    space = valve_space(config.circuit.n_res_levels)
    H_S = build_system_hamiltonian(config.circuit, phi)
    basis = eigendecompose_hermitian(H_S, space)
    bath_terms = decompose_baths(
        basis,
        config.bath_list(),
        config.tolerances.degeneracy,
        config.tolerances.quadrature,
    )
    return basis, bath_terms


def evaluate_method(
    config: SweepConfig,
    phi: float,
    omega_q: float,
    basis: EigenBasis,
    bath_terms: Sequence[BathTerms],
    method: GeneratorMethod,
) -> MethodEvaluation:
    tolerances = config.tolerances
    try:
        start = time.perf_counter()
        assembly = assemble_from_terms(basis, bath_terms, method, tolerances.quadrature)
        assembled = time.perf_counter()
        rho = solve_steady_state(assembly.liouvillian, tolerances.pos_tol, tolerances.solver)
        H = assembly.hamiltonian
        P_L = heat_flow_trace(H, assembly.baths[BathSide.LEFT].dissipator, rho)
        P_R = heat_flow_trace(H, assembly.baths[BathSide.RIGHT].dissipator, rho)
        solved = time.perf_counter()
    except (HeatValveError, np.linalg.LinAlgError) as e:
        logger.warning(f"φ = {phi:.6g}, {method.label()}: {e}")
        return MethodEvaluation(record=HeatFlowRecord.failure(phi, omega_q, method, e))

    omega_L_SI = config.units.omega_L_SI
    record = HeatFlowRecord(
        phi=phi,
        omega_q=omega_q,
        P_L=P_L,
        P_R=P_R,
        P_L_SI=to_si_power(P_L, omega_L_SI),
        P_R_SI=to_si_power(P_R, omega_L_SI),
        method=method,
        residual=rho.residual,
        min_eig=rho.diagnostics.min_eigenvalue,
    )
    timing = MethodTiming(assembly_seconds=assembled - start, solve_seconds=solved - assembled)
    return MethodEvaluation(record=record, timing=timing, assembly=assembly, state=rho)


def evaluate_flux_point(
    config: SweepConfig,
    phi: float,
    methods: Optional[Sequence[GeneratorMethod]] = None,
) -> FluxPointEvaluation:
    methods = list(methods) if methods is not None else [config.method]
    omega_q = transmon_frequency(phi, config.circuit.transmon)
    basis, bath_terms = prepare_flux_point(config, phi)
    evaluations = [
        evaluate_method(config, phi, omega_q, basis, bath_terms, method) for method in methods
    ]
    return FluxPointEvaluation(
        phi=phi, omega_q=omega_q, basis=basis, bath_terms=bath_terms, methods=evaluations
    )


def evaluate_record(config: SweepConfig, phi: float) -> HeatFlowRecord:
    """Sweep entry point: one method, failures folded into the record."""
    try:
        return evaluate_flux_point(config, phi).methods[0].record
    except HeatValveError as e:
        omega_q = transmon_frequency(phi, config.circuit.transmon)
        logger.warning(f"φ = {phi:.6g}: {e}")
        return HeatFlowRecord.failure(phi, omega_q, config.method, e)
