import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from heatvalve.bath_spectra import rate_gamma
from heatvalve.circuit_model import transmon_frequency
from heatvalve.generators.liouvillian import assemble_from_terms
from heatvalve.models.bath import BathSide
from heatvalve.models.method import (
    FullSecularMethod,
    GeneratorMethod,
    PartialSecularMethod,
    RedfieldMethod,
    UnifiedMethod,
)
from heatvalve.models.model import BaseModel
from heatvalve.models.sweep import FluxGrid, SweepConfig
from heatvalve.sweep.flux_point import MethodEvaluation, evaluate_method, prepare_flux_point
from heatvalve.thermodynamics import (
    golden_rule_rates,
    heat_flow_golden_rule,
    lamb_shift_heat_defect,
)

DEFAULT_VALIDATION_POINTS = 5
IDENTITY_TOLERANCE = 1e-10
SECULAR_LIMIT_TOLERANCE = 1e-12
GKSL_POSITIVITY_FLOOR = -1e-12
REDFIELD_POSITIVITY_FLOOR = -1e-6
KMS_TOLERANCE = 1e-10
KMS_GRID_POINTS = 100
KMS_MAX_BOLTZMANN_EXPONENT = 50.0
# slack on solver-limited identities: P_L + P_R is Tr[H_S·L(ρ)] up to the unitary part
RESIDUAL_SLACK = 10.0
HUGE_C_PSA = 1e15
TINY_C_PSA = 1e-15


class CheckResult(BaseModel):
    name: str
    passed: bool
    # worst measured defect and the bound it was held to at that point
    defect: float
    bound: float
    detail: Optional[str] = None


class ValidationReport(BaseModel):
    checks: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]


class _Check:
    """Accumulates (defect, bound) measurements and keeps the one closest to failing."""

    def __init__(self, name: str) -> None:
        self.name = name
        self.passed = True
        self.defect = 0.0
        self.bound = math.inf
        self.detail: Optional[str] = None
        self._worst = -math.inf

    def measure(self, defect: float, bound: float, where: str) -> None:
        ratio = defect / bound if bound > 0 else (0.0 if defect == 0 else math.inf)
        if not defect <= bound:
            self.passed = False
        if ratio > self._worst or math.isnan(defect):
            self._worst = ratio if not math.isnan(defect) else math.inf
            self.defect, self.bound, self.detail = defect, bound, where

    def fail(self, where: str, reason: str) -> None:
        self.passed = False
        self.detail = f"{where}: {reason}"
        self._worst = math.inf

    def result(self) -> CheckResult:
        return CheckResult(
            name=self.name,
            passed=self.passed,
            defect=self.defect,
            bound=self.bound,
            detail=self.detail,
        )


def validation_methods(config: SweepConfig) -> List[GeneratorMethod]:
    c_psa = (
        config.method.c_psa
        if isinstance(config.method, PartialSecularMethod)
        else PartialSecularMethod().c_psa
    )
    return [
        RedfieldMethod(),
        PartialSecularMethod(c_psa=c_psa),
        FullSecularMethod(),
        UnifiedMethod(),
    ]


def _lamb_variant(config: SweepConfig, enabled: bool) -> SweepConfig:
    flag = {"lamb_shift_enabled": enabled}
    return config.with_baths(L=flag, R=flag)


def _currents(evaluation: MethodEvaluation) -> Tuple[float, float]:
    return evaluation.record.P_L, evaluation.record.P_R


def _solver_bound(evaluation: MethodEvaluation) -> float:
    """Largest |P_L + P_R| the steady-state residual alone can produce."""
    assert evaluation.assembly is not None and evaluation.state is not None
    H_norm = float(np.linalg.norm(evaluation.assembly.hamiltonian))
    L_norm = evaluation.assembly.liouvillian.norm()
    return RESIDUAL_SLACK * H_norm * L_norm * (evaluation.state.residual or 0.0)


def _check_flux_point(
    config: SweepConfig,
    phi: float,
    lamb: bool,
    methods: Sequence[GeneratorMethod],
    checks: Dict[str, _Check],
) -> None:
    suffix = "lamb on" if lamb else "lamb off"
    variant = _lamb_variant(config, lamb)
    omega_q = transmon_frequency(phi, variant.circuit.transmon)
    basis, bath_terms = prepare_flux_point(variant, phi)
    where = f"φ = {phi:.6g}"

    for method in methods:
        label = method.label()
        evaluation = evaluate_method(variant, phi, omega_q, basis, bath_terms, method)
        first_law = checks.setdefault(
            f"first_law[{label}, {suffix}]", _Check(f"first_law[{label}, {suffix}]")
        )
        positivity = checks.setdefault(f"positivity[{label}]", _Check(f"positivity[{label}]"))
        if evaluation.record.failed:
            first_law.fail(where, evaluation.record.error or "")
            positivity.fail(where, evaluation.record.error or "")
            continue

        P_L, P_R = _currents(evaluation)
        bound = max(IDENTITY_TOLERANCE * max(abs(P_L), abs(P_R)), _solver_bound(evaluation))
        assembly, rho = evaluation.assembly, evaluation.state
        assert assembly is not None and rho is not None
        expected = 0.0
        if lamb:
            expected = lamb_shift_heat_defect(assembly.hamiltonian, assembly.lamb_shift, rho)
        first_law.measure(abs(P_L + P_R - expected), bound, where)

        floor = (
            GKSL_POSITIVITY_FLOOR
            if isinstance(method, (FullSecularMethod, UnifiedMethod))
            else REDFIELD_POSITIVITY_FLOOR
        )
        positivity.measure(max(0.0, -evaluation.record.min_eig), -floor, where)

        if isinstance(method, FullSecularMethod):
            name = f"golden_rule_equivalence[{suffix}]"
            equivalence = checks.setdefault(name, _Check(name))
            for side, P_trace in ((BathSide.LEFT, P_L), (BathSide.RIGHT, P_R)):
                bath = variant.baths[side]
                rates = golden_rule_rates(
                    basis, bath, tol_degeneracy=variant.tolerances.degeneracy
                )
                P_rule = heat_flow_golden_rule(rates, rho)
                equivalence.measure(
                    abs(P_trace - P_rule),
                    IDENTITY_TOLERANCE * max(abs(P_trace), abs(P_rule)),
                    f"{where}, bath {side.value}",
                )


def _check_equilibrium(
    config: SweepConfig, phi: float, methods: Sequence[GeneratorMethod], check: _Check
) -> None:
    T = config.bath_L.temperature
    equilibrium = config.with_baths(R={"temperature": T})
    omega_q = transmon_frequency(phi, equilibrium.circuit.transmon)
    basis, bath_terms = prepare_flux_point(equilibrium, phi)
    H_norm = float(np.linalg.norm(np.diag(basis.energies)))
    for method in methods:
        where = f"φ = {phi:.6g}, {method.label()}"
        evaluation = evaluate_method(equilibrium, phi, omega_q, basis, bath_terms, method)
        if evaluation.record.failed:
            check.fail(where, evaluation.record.error or "")
            continue
        scale = 0.0
        for item in bath_terms:
            gamma_max = float(np.max(item.response.gamma)) if len(item.response.gamma) else 0.0
            scale = max(scale, item.bath.alpha**2 * H_norm * gamma_max)
        bound = max(IDENTITY_TOLERANCE * scale, _solver_bound(evaluation))
        P_L, P_R = _currents(evaluation)
        check.measure(max(abs(P_L), abs(P_R)), bound, where)


def _check_secular_limits(config: SweepConfig, phi: float, checks: Dict[str, _Check]) -> None:
    basis, bath_terms = prepare_flux_point(config, phi)
    tol = config.tolerances.quadrature
    where = f"φ = {phi:.6g}"

    def generator(method: GeneratorMethod) -> np.ndarray:
        return assemble_from_terms(basis, bath_terms, method, tol).liouvillian.matrix

    for name, limit, reference in (
        ("psa_limit[redfield]", HUGE_C_PSA, RedfieldMethod()),
        ("psa_limit[full_secular]", TINY_C_PSA, FullSecularMethod()),
    ):
        psa = generator(PartialSecularMethod(c_psa=limit))
        target = generator(reference)
        check = checks.setdefault(name, _Check(name))
        check.measure(
            float(np.max(np.abs(psa - target))),
            SECULAR_LIMIT_TOLERANCE * max(float(np.max(np.abs(target))), 1.0),
            where,
        )


def _check_kms(config: SweepConfig, check: _Check) -> None:
    for bath in config.bath_list():
        # beyond ω/T ≈ 50 the absorption rate approaches the subnormal range
        top = min(10.0 * bath.model.scale(), KMS_MAX_BOLTZMANN_EXPONENT * bath.temperature)
        omegas = np.linspace(0.01 * top, top, KMS_GRID_POINTS)
        emission = rate_gamma(bath, omegas)
        absorption = rate_gamma(bath, -omegas)
        expected = emission * np.exp(-omegas / bath.temperature)
        nonzero = expected > 0
        defect = np.abs(absorption[nonzero] - expected[nonzero]) / expected[nonzero]
        worst = float(np.max(defect)) if defect.size else 0.0
        check.measure(worst, KMS_TOLERANCE, f"bath {bath.side.value}")


def run_validation(
    config: SweepConfig, points: int = DEFAULT_VALIDATION_POINTS
) -> ValidationReport:
    """
    Runs the invariant suite on a coarse copy of the flux grid, with the Lamb shift both off
    and on, and reports each check with its worst measured defect.
    """
    grid = FluxGrid(start=config.flux_grid.start, stop=config.flux_grid.stop, points=points)
    methods = validation_methods(config)
    checks: Dict[str, _Check] = {}
    equilibrium = checks.setdefault("equilibrium_null_current", _Check("equilibrium_null_current"))

    for phi in grid.values():
        phi = float(phi)
        logger.info(f"Validating φ = {phi:.6g}")
        for lamb in (False, True):
            _check_flux_point(config, phi, lamb, methods, checks)
        _check_equilibrium(_lamb_variant(config, False), phi, methods, equilibrium)
        _check_secular_limits(_lamb_variant(config, False), phi, checks)

    _check_kms(config, checks.setdefault("kms_detailed_balance", _Check("kms_detailed_balance")))

    report = ValidationReport(checks=[check.result() for check in checks.values()])
    for check in report.checks:
        status = "pass" if check.passed else "FAIL"
        log = logger.info if check.passed else logger.error
        log(f"{status} {check.name}: {check.defect:.3e} (bound {check.bound:.3e})")
    return report
