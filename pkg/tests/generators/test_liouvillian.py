import numpy as np
import pytest

from heatvalve.circuit_model import build_system_hamiltonian
from heatvalve.exceptions import InvalidDimensionError
from heatvalve.generators.full_secular_generator import FullSecularGenerator
from heatvalve.generators.liouvillian import (
    Superoperator,
    assemble_from_terms,
    assemble_generator,
    assemble_liouvillian,
    build_dissipator,
    build_lamb_shift,
    kossakowski_matrix,
    psa_filter,
)
from heatvalve.models.bath import BathSide
from heatvalve.models.circuit import CircuitParams
from heatvalve.models.method import (
    FullSecularMethod,
    GeneratorMethod,
    PartialSecularMethod,
    RedfieldMethod,
    UnifiedMethod,
)
from heatvalve.models.sweep import SweepConfig
from heatvalve.operator_algebra import commutator, vec
from heatvalve.sweep.flux_point import prepare_flux_point
from tests.fixtures.systems import damped_hamiltonian, damped_space, ohmic_bath, qubit_terms

ALL_METHODS = [RedfieldMethod(), PartialSecularMethod(), FullSecularMethod(), UnifiedMethod()]
GKSL_METHODS = [FullSecularMethod(), UnifiedMethod()]


@pytest.fixture
def published_point(published_config: SweepConfig):
    """Eigenbasis and per-bath Bohr terms of the published configuration at φ = 0.3."""
    return prepare_flux_point(published_config, 0.3)


def test_superoperator_addition_checks_dimension():
    with pytest.raises(InvalidDimensionError):
        Superoperator.zeros(2) + Superoperator.zeros(3)


def test_dimension_of_published_configuration(published_point):
    basis, bath_terms = published_point
    assembly = assemble_from_terms(basis, bath_terms, PartialSecularMethod())
    assert assembly.liouvillian.matrix.shape == (324, 324)
    assert set(assembly.baths) == {BathSide.LEFT, BathSide.RIGHT}


@pytest.mark.parametrize("method", ALL_METHODS, ids=lambda m: m.label())
def test_trace_preservation(published_point, method: GeneratorMethod):
    basis, bath_terms = published_point
    L = assemble_from_terms(basis, bath_terms, method).liouvillian
    identity = np.eye(basis.dimension)
    assert np.linalg.norm(L.adjoint_apply(identity)) <= 1e-10 * L.norm()


@pytest.mark.parametrize("method", ALL_METHODS, ids=lambda m: m.label())
def test_hermiticity_preservation(published_point, method: GeneratorMethod):
    basis, bath_terms = published_point
    L = assemble_from_terms(basis, bath_terms, method).liouvillian
    rng = np.random.default_rng(1)
    m = rng.normal(size=(18, 18)) + 1j * rng.normal(size=(18, 18))
    rho = m + m.conj().T
    out = L.apply(rho)
    assert np.linalg.norm(out - out.conj().T) <= 1e-12 * L.norm() * np.linalg.norm(rho)


@pytest.mark.parametrize("method", GKSL_METHODS, ids=lambda m: m.label())
def test_gksl_methods_have_positive_kossakowski_matrix(published_point, method: GeneratorMethod):
    _, bath_terms = published_point
    for item in bath_terms:
        pairs = psa_filter(item.terms, method, item.response, item.bath.alpha)
        omegas, _, _ = pairs.jump_operators(item.terms)
        G = kossakowski_matrix(item.terms, pairs, item.response.extended(omegas))
        np.testing.assert_allclose(G, np.diag(np.diag(G)))
        assert np.min(np.linalg.eigvalsh(0.5 * (G + G.conj().T))) >= -1e-12


def test_full_secular_is_the_diagonal_restriction(published_point):
    _, bath_terms = published_point
    item = bath_terms[0]
    full = psa_filter(item.terms, FullSecularMethod(), item.response, item.bath.alpha)
    tiny = psa_filter(item.terms, PartialSecularMethod(c_psa=1e-15), item.response, 0.04)
    D_full = build_dissipator(item.bath, item.terms, full, item.response)
    D_psa = build_dissipator(item.bath, item.terms, tiny, item.response)
    assert np.max(np.abs(D_full.matrix - D_psa.matrix)) <= 1e-14 * max(D_full.norm(), 1.0)


def test_zero_coupling_leaves_pure_commutator():
    H = damped_hamiltonian()
    baths = [ohmic_bath("L", 1.0, 0.0), ohmic_bath("R", 0.5, 0.0)]
    assembly = assemble_generator(H, baths, RedfieldMethod(), damped_space())
    for generator in assembly.baths.values():
        assert not generator.dissipator.matrix.any()

    energies = assembly.basis.energies
    expected = -1j * (energies[:, np.newaxis] - energies[np.newaxis, :])
    eigenvalues = np.linalg.eigvals(assembly.liouvillian.matrix)
    np.testing.assert_allclose(
        np.sort_complex(eigenvalues), np.sort_complex(expected.ravel()), atol=1e-12
    )


def test_original_basis_matches_direct_commutator():
    H = damped_hamiltonian()
    baths = [ohmic_bath("L", 1.0, 0.0), ohmic_bath("R", 0.5, 0.0)]
    L = assemble_liouvillian(H, baths, FullSecularMethod(), damped_space())
    rng = np.random.default_rng(2)
    rho = rng.normal(size=(8, 8)) + 0j
    np.testing.assert_allclose(L.apply(rho), -1j * commutator(H, rho), atol=1e-12)


def test_single_qubit_decay_rates():
    alpha, omega = 0.1, 1.5
    b = ohmic_bath("L", 0.8, alpha)
    _, terms, response = qubit_terms(b, omega)
    pairs = FullSecularGenerator(FullSecularMethod()).select_pairs(terms, response, alpha)
    D = build_dissipator(b, terms, pairs, response)

    down = alpha**2 * response.gammas([omega])[0]
    up = alpha**2 * response.gammas([-omega])[0]
    # populations (g, e) at vec indices 0 and 3, coherences decay at half the total rate
    expected = np.zeros((4, 4), dtype=complex)
    expected[0, 0], expected[3, 0] = -up, up
    expected[3, 3], expected[0, 3] = -down, down
    expected[1, 1] = expected[2, 2] = -(up + down) / 2
    np.testing.assert_allclose(D.matrix, expected, atol=1e-15)


def test_lamb_shift_structure(published_config: SweepConfig):
    lamb = published_config.with_baths(L={"lamb_shift_enabled": True}, R={"lamb_shift_enabled": True})
    basis, bath_terms = prepare_flux_point(lamb, 0.3)
    H = np.diag(basis.energies)
    for method in (FullSecularMethod(), PartialSecularMethod()):
        assembly = assemble_from_terms(basis, bath_terms, method)
        for generator in assembly.baths.values():
            H_LS = generator.lamb_shift
            assert np.linalg.norm(H_LS) > 0
            assert np.linalg.norm(H_LS - H_LS.conj().T) <= 1e-12 * np.linalg.norm(H_LS)
            if isinstance(method, FullSecularMethod):
                defect = np.linalg.norm(commutator(H_LS, H))
                assert defect <= 1e-10 * np.linalg.norm(H) * np.linalg.norm(H_LS)


def test_lamb_shift_disabled_is_zero(published_point):
    _, bath_terms = published_point
    item = bath_terms[0]
    pairs = psa_filter(item.terms, RedfieldMethod(), item.response, item.bath.alpha)
    assert not build_lamb_shift(item.bath, item.terms, pairs, item.response).any()


def test_assembly_is_deterministic():
    H = build_system_hamiltonian(CircuitParams(), 0.1)
    baths = [ohmic_bath("L", 1.2, 0.04, 50.0), ohmic_bath("R", 0.4, 0.04, 50.0)]
    first = assemble_liouvillian(H, baths, PartialSecularMethod())
    second = assemble_liouvillian(H, baths, PartialSecularMethod())
    np.testing.assert_array_equal(first.matrix, second.matrix)
    np.testing.assert_allclose(vec(np.eye(18)) @ first.matrix, 0.0, atol=1e-10 * first.norm())
