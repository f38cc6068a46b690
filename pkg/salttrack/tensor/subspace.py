from dataclasses import dataclass
from typing import Tuple, Optional, Sequence

import numpy as np
from scipy import linalg

from .algebra import Tensor3, unfold, MODES
from ..errors import DimensionError, NumericalError

SubspaceDims = Tuple[int, int, int]

# eigenvalues below this fraction of the largest one count as zero
RANK_TOLERANCE = 1e-12
# residual of an appended row below this fraction of the scale is treated as in-span
SPAN_TOLERANCE = 1e-10


def _rank(values: np.ndarray) -> int:
    if values.size == 0 or values[0] <= 0.0:
        return 0
    return int(np.count_nonzero(values > RANK_TOLERANCE * values[0]))


def top_eigenvectors(covariance: np.ndarray, count: int) -> Tuple[np.ndarray, np.ndarray]:
    """Eigenvectors of a symmetric PSD matrix for its ``count`` largest eigenvalues, rank capped."""
    values, vectors = linalg.eigh(covariance)
    values, vectors = values[::-1], vectors[:, ::-1]
    keep = min(count, _rank(values))
    return np.ascontiguousarray(vectors[:, :keep]), values[:keep]


@dataclass(frozen=True, eq=False)
class RowSpace:
    """Truncated right-singular state of a mode-3 unfolding, updated row by row."""
    vectors: np.ndarray
    singular_values: np.ndarray
    max_rank: int

    @staticmethod
    def empty(length: int, max_rank: int) -> "RowSpace":
        return RowSpace(np.zeros((length, 0)), np.zeros(0), max_rank)

    @property
    def length(self) -> int:
        return self.vectors.shape[0]

    @property
    def rank(self) -> int:
        return self.vectors.shape[1]


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    U1: np.ndarray
    U2: np.ndarray
    U3: np.ndarray
    mode3_singular_values: np.ndarray

    @property
    def dims(self) -> SubspaceDims:
        return self.U1.shape[1], self.U2.shape[1], self.U3.shape[1]

    @property
    def patch_dims(self) -> Tuple[int, int]:
        return self.U1.shape[0], self.U2.shape[0]

    def factor(self, mode: int) -> np.ndarray:
        return (self.U1, self.U2, self.U3)[mode - 1]


def compute_basis(tensor: Tensor3, dims: SubspaceDims) -> SubspaceBasis:
    """Single-pass multilinear basis of ``tensor``.

    Modes 1 and 2 keep the leading eigenvectors of ``A(n) A(n)^T``; mode 3 keeps the leading
    right singular vectors of ``A(3)``. Each requested dimension is capped by the available rank.
    """
    if not np.any(tensor.data):
        raise NumericalError("cannot compute a subspace basis of an all-zero tensor")
    a1, a2, a3 = (unfold(tensor, mode) for mode in MODES)
    u1, _ = top_eigenvectors(a1 @ a1.T, dims[0])
    u2, _ = top_eigenvectors(a2 @ a2.T, dims[1])

    _, sigma, vt = linalg.svd(a3, full_matrices=False)
    keep = min(dims[2], _rank(sigma ** 2))
    return SubspaceBasis(u1, u2, np.ascontiguousarray(vt[:keep].T), sigma[:keep])


def skl_append(state: RowSpace, row: np.ndarray) -> RowSpace:
    """Sequential Karhunen-Loeve update of a row space with one new row, forgetting factor 1."""
    row = np.asarray(row, dtype=np.float64).ravel()
    if row.size != state.length:
        raise DimensionError(f"row of length {row.size} does not match a row space of length {state.length}")

    projection = state.vectors.T @ row
    residual = row - state.vectors @ projection
    residual_norm = float(np.linalg.norm(residual))
    scale = max(float(np.linalg.norm(row)),
                float(state.singular_values[0]) if state.rank > 0 else 0.0)
    if scale == 0.0:
        return state

    k = state.rank
    if residual_norm > SPAN_TOLERANCE * scale:
        extended = np.hstack([state.vectors, (residual / residual_norm)[:, None]])
        middle = np.zeros((k + 1, k + 1))
        middle[:k, :k] = np.diag(state.singular_values)
        middle[k, :k] = projection
        middle[k, k] = residual_norm
    else:
        extended = state.vectors
        middle = np.vstack([np.diag(state.singular_values), projection[None, :]])

    _, sigma, wt = linalg.svd(middle, full_matrices=False)
    keep = min(state.max_rank, _rank(sigma ** 2))
    vectors = extended @ wt[:keep].T
    return RowSpace(vectors, sigma[:keep], state.max_rank)


def principal_angles(first: np.ndarray, second: np.ndarray) -> np.ndarray:
    return linalg.subspace_angles(first, second)


def captured_energy(tensor: Tensor3, basis: SubspaceBasis, mode: int) -> float:
    """Fraction of the Frobenius energy kept by the mode-``mode`` projection."""
    total = float(np.sum(tensor.data ** 2))
    if total == 0.0:
        return 0.0
    matrix = unfold(tensor, mode)
    if mode == 3:
        kept = matrix @ basis.U3
    else:
        kept = basis.factor(mode).T @ matrix
    return float(np.sum(kept ** 2)) / total


def _mode_residuals(patch: np.ndarray, basis: SubspaceBasis, modes: Sequence[int]) -> float:
    error = 0.0
    if 1 in modes:
        error += float(np.sum((patch - basis.U1 @ (basis.U1.T @ patch)) ** 2))
    if 2 in modes:
        error += float(np.sum((patch - (patch @ basis.U2) @ basis.U2.T) ** 2))
    if 3 in modes:
        row = patch.ravel(order="F")
        error += float(np.sum((row - basis.U3 @ (basis.U3.T @ row)) ** 2))
    return error


def _patch_matrix(patch: Tensor3, basis: SubspaceBasis) -> np.ndarray:
    if patch.dims != basis.patch_dims + (1,):
        raise DimensionError(f"patch of dims {patch.dims} does not match a basis for "
                             f"{basis.patch_dims} patches")
    return patch.data[:, :, 0]


def reconstruction_error(patch_s: Tensor3, patch_c: Optional[Tensor3],
                         basis_s: SubspaceBasis, basis_c: Optional[SubspaceBasis],
                         weight_s: float = 1.0, weight_c: float = 1.0,
                         modes: Sequence[int] = MODES) -> float:
    """Weighted squared residual of a patch pair after projection onto each mode subspace.

    A missing contrast patch or basis drops the contrast terms; ``modes`` selects which of the
    three residual terms enter the sum.
    """
    error = weight_s * _mode_residuals(_patch_matrix(patch_s, basis_s), basis_s, modes)
    if patch_c is not None and basis_c is not None and weight_c != 0.0:
        error += weight_c * _mode_residuals(_patch_matrix(patch_c, basis_c), basis_c, modes)
    return error


class IncrementalSubspace:
    """Subspace state of a growing stack of patches.

    Modes 1 and 2 keep exact running sums of ``A(n) A(n)^T``; mode 3 keeps the SKL row space.
    Instances are never mutated: ``extend`` returns the state with one more patch, so a rejected
    trial is rolled back simply by dropping it.
    """

    def __init__(self, patch_dims: Tuple[int, int], dims: SubspaceDims,
                 covariance1: Optional[np.ndarray] = None, covariance2: Optional[np.ndarray] = None,
                 row_space: Optional[RowSpace] = None, members: int = 0):
        self.patch_dims = patch_dims
        self.dims = dims
        self.covariance1 = covariance1 if covariance1 is not None else np.zeros((patch_dims[0],) * 2)
        self.covariance2 = covariance2 if covariance2 is not None else np.zeros((patch_dims[1],) * 2)
        self.row_space = row_space if row_space is not None else \
            RowSpace.empty(patch_dims[0] * patch_dims[1], dims[2])
        self.members = members
        self._basis: Optional[SubspaceBasis] = None

    def extend(self, patch: Tensor3) -> "IncrementalSubspace":
        if patch.dims != self.patch_dims + (1,):
            raise DimensionError(f"patch of dims {patch.dims} does not fit {self.patch_dims} patches")
        matrix = patch.data[:, :, 0]
        return IncrementalSubspace(self.patch_dims, self.dims,
                                   self.covariance1 + matrix @ matrix.T,
                                   self.covariance2 + matrix.T @ matrix,
                                   skl_append(self.row_space, matrix.ravel(order="F")),
                                   self.members + 1)

    def basis(self) -> SubspaceBasis:
        if self._basis is None:
            u1, _ = top_eigenvectors(self.covariance1, self.dims[0])
            u2, _ = top_eigenvectors(self.covariance2, self.dims[1])
            self._basis = SubspaceBasis(u1, u2, self.row_space.vectors, self.row_space.singular_values)
        return self._basis
