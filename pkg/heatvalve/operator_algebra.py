from functools import reduce
from typing import Tuple

import numpy as np
import scipy.linalg
from pydantic.v1 import root_validator, validator

from heatvalve.exceptions import InvalidDimensionError, LayoutError, SymmetryError
from heatvalve.models.model import ArrayModel, BaseModel

HERMITICITY_TOLERANCE = 1e-12


class CompositeSpace(BaseModel):
    dims: Tuple[int, ...]
    labels: Tuple[str, ...]

    @validator("dims")
    def dims_at_least_two(cls, v):
        if not v:
            raise ValueError("at least one subsystem is required")
        if any(d < 2 for d in v):
            raise ValueError("every subsystem needs at least 2 levels")
        return v

    @root_validator(skip_on_failure=True)
    def labels_match_dims(cls, values):
        labels = values["labels"]
        if len(set(labels)) != len(labels):
            raise ValueError("subsystem labels must be unique")
        if len(labels) != len(values["dims"]):
            raise ValueError("one label per subsystem is required")
        return values

    @property
    def dimension(self) -> int:
        return int(np.prod(self.dims))

    def slot(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise LayoutError(f"no subsystem labelled {label!r} in {self.labels}")


class EigenBasis(ArrayModel):
    """Spectral decomposition H = V diag(ε) V† with ε ascending."""

    energies: np.ndarray
    vectors: np.ndarray
    space: CompositeSpace

    @property
    def dimension(self) -> int:
        return len(self.energies)

    def to_eigenbasis(self, op: np.ndarray) -> np.ndarray:
        return self.vectors.conj().T @ op @ self.vectors

    def from_eigenbasis(self, op: np.ndarray) -> np.ndarray:
        return self.vectors @ op @ self.vectors.conj().T


def annihilation(n_levels: int) -> np.ndarray:
    if n_levels < 2:
        raise InvalidDimensionError(f"n_levels must be at least 2, got {n_levels}")
    return np.diag(np.sqrt(np.arange(1, n_levels)), k=1).astype(complex)


def tensor_embed(op: np.ndarray, slot: int, space: CompositeSpace) -> np.ndarray:
    if not 0 <= slot < len(space.dims):
        raise LayoutError(f"slot {slot} out of range for {len(space.dims)} subsystems")
    if op.shape != (space.dims[slot], space.dims[slot]):
        raise LayoutError(
            f"operator of shape {op.shape} does not act on slot {slot} "
            f"({space.labels[slot]}, dimension {space.dims[slot]})"
        )
    factors = [op if i == slot else np.eye(d) for i, d in enumerate(space.dims)]
    return reduce(np.kron, factors).astype(complex)


def hermiticity_defect(op: np.ndarray) -> float:
    return float(np.linalg.norm(op - op.conj().T))


def check_hermitian(op: np.ndarray, what: str = "operator") -> None:
    norm = np.linalg.norm(op)
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise SymmetryError(f"{what} is not square: shape {op.shape}")
    if hermiticity_defect(op) > HERMITICITY_TOLERANCE * max(norm, 1.0):
        raise SymmetryError(f"{what} is not Hermitian (defect {hermiticity_defect(op):.3e})")


def eigendecompose_hermitian(H: np.ndarray, space: CompositeSpace | None = None) -> EigenBasis:
    check_hermitian(H, "Hamiltonian")
    if space is None:
        space = CompositeSpace(dims=(H.shape[0],), labels=("system",))
    if H.shape[0] != space.dimension:
        raise LayoutError(
            f"Hamiltonian dimension {H.shape[0]} != space dimension {space.dimension}"
        )
    energies, vectors = scipy.linalg.eigh(H)

    # largest-magnitude component of every eigenvector made real and positive
    pivots = np.argmax(np.abs(vectors), axis=0)
    phases = vectors[pivots, np.arange(vectors.shape[1])]
    vectors = vectors * (np.abs(phases) / phases)[np.newaxis, :]
    return EigenBasis(energies=energies, vectors=vectors, space=space)


def vec(rho: np.ndarray) -> np.ndarray:
    """Column-stacked vectorization, vec(A X B) = (Bᵀ ⊗ A) vec(X)."""
    return rho.reshape(-1, order="F")


def unvec(v: np.ndarray, d: int | None = None) -> np.ndarray:
    if d is None:
        d = int(round(np.sqrt(v.size)))
    if d * d != v.size:
        raise InvalidDimensionError(f"vector of length {v.size} is not a vectorized square matrix")
    return v.reshape((d, d), order="F")


def left_right_superoperator(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Superoperator of X ↦ left · X · right."""
    return np.kron(right.T, left)


def commutator_superoperator(H: np.ndarray) -> np.ndarray:
    """Superoperator of X ↦ −i[H, X]."""
    identity = np.eye(H.shape[0])
    return -1j * (np.kron(identity, H) - np.kron(H.T, identity))


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a
