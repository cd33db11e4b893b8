from typing import Dict, List, Optional, Sequence

import numpy as np
from loguru import logger

from heatvalve.bath_spectra import BathResponse
from heatvalve.circuit_model import bath_coupling_operator, valve_space
from heatvalve.constants import DEFAULT_DEGENERACY_TOLERANCE, DEFAULT_QUADRATURE_TOLERANCE
from heatvalve.exceptions import InvalidDimensionError
from heatvalve.generators.abstract_factory import AbstractGeneratorFactory
from heatvalve.generators.bohr import BohrTerm, bohr_decompose
from heatvalve.generators.default_factory import DefaultGeneratorFactory
from heatvalve.generators.pairs import PairSet
from heatvalve.models.bath import BathSide, BathSpec
from heatvalve.models.method import GeneratorMethod
from heatvalve.models.model import ArrayModel
from heatvalve.operator_algebra import (
    CompositeSpace,
    EigenBasis,
    commutator_superoperator,
    eigendecompose_hermitian,
    unvec,
    vec,
)


class Superoperator(ArrayModel):
    """d²×d² matrix acting on column-stacked vec(ρ)."""

    matrix: np.ndarray
    d: int

    @classmethod
    def zeros(cls, d: int) -> "Superoperator":
        return cls(matrix=np.zeros((d * d, d * d), dtype=complex), d=d)

    def apply(self, rho: np.ndarray) -> np.ndarray:
        return unvec(self.matrix @ vec(rho), self.d)

    def adjoint_apply(self, op: np.ndarray) -> np.ndarray:
        return unvec(self.matrix.conj().T @ vec(op), self.d)

    def norm(self) -> float:
        return float(np.linalg.norm(self.matrix))

    def spectral_norm(self) -> float:
        return float(np.linalg.norm(self.matrix, 2))

    def transformed(self, vectors: np.ndarray) -> "Superoperator":
        """Re-expresses the map for X ↦ V X V†, e.g. from the eigenbasis back to the basis of H_S."""
        U = np.kron(vectors.conj(), vectors)
        return Superoperator(matrix=U @ self.matrix @ U.conj().T, d=self.d)

    def __add__(self, other: "Superoperator") -> "Superoperator":
        if self.d != other.d:
            raise InvalidDimensionError(f"cannot add superoperators on d={self.d} and d={other.d}")
        return Superoperator(matrix=self.matrix + other.matrix, d=self.d)


def psa_filter(
    terms: List[BohrTerm],
    method: GeneratorMethod,
    response: BathResponse,
    alpha: float,
    factory: Optional[AbstractGeneratorFactory] = None,
) -> PairSet:
    generator = (factory or DefaultGeneratorFactory()).create_generator(method)
    return generator.select_pairs(terms, response, alpha)


def kossakowski_matrix(
    terms: Sequence[BohrTerm], pairs: PairSet, response: BathResponse
) -> np.ndarray:
    """α²·(Γ(ω) + Γ*(ω′)) over the retained pairs of jump operators, zero elsewhere."""
    omegas, _, mask = pairs.jump_operators(terms)
    Gamma = response.Gammas(omegas)
    return response.bath.alpha**2 * mask * (Gamma[:, np.newaxis] + Gamma.conj()[np.newaxis, :])


def build_dissipator(
    b: BathSpec, terms: Sequence[BohrTerm], pairs: PairSet, response: BathResponse
) -> Superoperator:
    """
    D(ρ) = Σ_kl G_kl (T_k ρ T_l† − ½{T_l† T_k, ρ}) with G the Kossakowski matrix. Summing
    over k first gives W_l = Σ_k G_kl T_k, so
    vec D = Σ_l conj(T_l) ⊗ W_l − ½(I ⊗ M + Mᵀ ⊗ I) with M = Σ_l T_l† W_l.
    """
    _, ops, _ = pairs.jump_operators(terms)
    d = ops.shape[-1]
    if b.alpha == 0:
        return Superoperator.zeros(d)
    G = kossakowski_matrix(terms, pairs, response)
    W = np.einsum("kl,kij->lij", G, ops)
    jump = np.einsum("lab,lij->aibj", ops.conj(), W).reshape(d * d, d * d)
    M = np.einsum("lji,ljk->ik", ops.conj(), W)
    identity = np.eye(d)
    anticommutator = np.kron(identity, M) + np.kron(M.T, identity)
    return Superoperator(matrix=jump - 0.5 * anticommutator, d=d)


def build_lamb_shift(
    b: BathSpec, terms: Sequence[BohrTerm], pairs: PairSet, response: BathResponse
) -> np.ndarray:
    """H_LS = α²·Σ_kl [(Γ_k − Γ_l*)/2i]·T_l† T_k over the retained pairs."""
    _, ops, mask = pairs.jump_operators(terms)
    d = ops.shape[-1]
    if not b.lamb_shift_enabled or b.alpha == 0:
        return np.zeros((d, d), dtype=complex)
    omegas, _, _ = pairs.jump_operators(terms)
    Gamma = response.Gammas(omegas)
    c = b.alpha**2 * mask * (Gamma[:, np.newaxis] - Gamma.conj()[np.newaxis, :]) / 2j
    W = np.einsum("kl,kij->lij", c, ops)
    H_LS = np.einsum("lji,ljk->ik", ops.conj(), W)
    return 0.5 * (H_LS + H_LS.conj().T)


class BathTerms(ArrayModel):
    """Bohr decomposition of one bath's coupling operator with its response at those frequencies."""

    bath: BathSpec
    terms: List[BohrTerm]
    response: BathResponse


class BathGenerator(ArrayModel):
    bath: BathSpec
    terms: List[BohrTerm]
    pairs: PairSet
    response: BathResponse
    dissipator: Superoperator
    lamb_shift: np.ndarray


class GeneratorAssembly(ArrayModel):
    """
    Every piece of the generator for one flux point and one method, expressed in the energy
    eigenbasis of H_S (`basis`); `hamiltonian` is diag(ε) there.
    """

    basis: EigenBasis
    method: GeneratorMethod
    baths: Dict[BathSide, BathGenerator]
    liouvillian: Superoperator

    @property
    def hamiltonian(self) -> np.ndarray:
        return np.diag(self.basis.energies).astype(complex)

    @property
    def lamb_shift(self) -> np.ndarray:
        return sum(
            (g.lamb_shift for g in self.baths.values()),
            np.zeros((self.basis.dimension,) * 2, dtype=complex),
        )

    def in_original_basis(self) -> Superoperator:
        return self.liouvillian.transformed(self.basis.vectors)


def _infer_space(H_S: np.ndarray) -> CompositeSpace:
    d = H_S.shape[0]
    n_res = int(round(np.sqrt(d / 2)))
    if 2 * n_res * n_res != d:
        raise InvalidDimensionError(f"dimension {d} is not n_res·2·n_res")
    return valve_space(n_res)


def decompose_baths(
    basis: EigenBasis,
    baths: Sequence[BathSpec],
    tol_degeneracy: float = DEFAULT_DEGENERACY_TOLERANCE,
    tol_quadrature: float = DEFAULT_QUADRATURE_TOLERANCE,
) -> List[BathTerms]:
    decomposed = []
    for bath in baths:
        A = bath_coupling_operator(bath.side, basis.space)
        terms = bohr_decompose(basis, A, tol_degeneracy)
        response = BathResponse.build(bath, [t.omega for t in terms], tol_quadrature)
        decomposed.append(BathTerms(bath=bath, terms=terms, response=response))
    return decomposed


def assemble_from_terms(
    basis: EigenBasis,
    bath_terms: Sequence[BathTerms],
    method: GeneratorMethod,
    tol_quadrature: float = DEFAULT_QUADRATURE_TOLERANCE,
    factory: Optional[AbstractGeneratorFactory] = None,
) -> GeneratorAssembly:
    d = basis.dimension
    H_total = np.diag(basis.energies).astype(complex)
    dissipation = Superoperator.zeros(d)
    generators: Dict[BathSide, BathGenerator] = {}
    for item in bath_terms:
        bath = item.bath
        pairs = psa_filter(item.terms, method, item.response, bath.alpha, factory)
        jump_omegas, _, _ = pairs.jump_operators(item.terms)
        response = item.response.extended(jump_omegas, tol_quadrature)

        D = build_dissipator(bath, item.terms, pairs, response)
        H_LS = build_lamb_shift(bath, item.terms, pairs, response)
        logger.debug(
            f"bath {bath.side.value}: {len(item.terms)} Bohr terms, {pairs.size} retained pairs, "
            f"τ_R = {pairs.tau_R:.4g}"
        )
        dissipation = dissipation + D
        H_total = H_total + H_LS
        generators[bath.side] = BathGenerator(
            bath=bath,
            terms=item.terms,
            pairs=pairs,
            response=response,
            dissipator=D,
            lamb_shift=H_LS,
        )

    liouvillian = Superoperator(matrix=commutator_superoperator(H_total), d=d) + dissipation
    return GeneratorAssembly(basis=basis, method=method, baths=generators, liouvillian=liouvillian)


def assemble_generator(
    H_S: np.ndarray,
    baths: Sequence[BathSpec],
    method: GeneratorMethod,
    space: Optional[CompositeSpace] = None,
    tol_degeneracy: float = DEFAULT_DEGENERACY_TOLERANCE,
    tol_quadrature: float = DEFAULT_QUADRATURE_TOLERANCE,
) -> GeneratorAssembly:
    if not baths:
        raise ValueError("at least one bath is required")
    basis = eigendecompose_hermitian(H_S, space or _infer_space(H_S))
    bath_terms = decompose_baths(basis, baths, tol_degeneracy, tol_quadrature)
    return assemble_from_terms(basis, bath_terms, method, tol_quadrature)


def assemble_liouvillian(
    H_S: np.ndarray,
    baths: Sequence[BathSpec],
    method: GeneratorMethod,
    space: Optional[CompositeSpace] = None,
) -> Superoperator:
    """L = −i[H_S + Σ H_LS, ·] + Σ D_b, in the basis H_S is given in."""
    return assemble_generator(H_S, baths, method, space).in_original_basis()
