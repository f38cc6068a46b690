from typing import Tuple

import numpy as np

from ..errors import DimensionError

Dims = Tuple[int, int, int]
MODES = (1, 2, 3)


class Tensor3:
    """Dense third-order tensor indexed as ``data[i1, i2, i3]``.

    Texture patches are tensors with ``I3 = 1``; stacking patches grows mode 3.
    """

    def __init__(self, data: np.ndarray):
        data = np.asarray(data, dtype=np.float64)
        if data.ndim == 2:
            data = data[:, :, None]
        if data.ndim != 3 or min(data.shape) < 1:
            raise DimensionError(f"a third-order tensor with positive dimensions is required, "
                                 f"got shape {data.shape}")
        self.data = data

    @property
    def dims(self) -> Dims:
        return self.data.shape

    @property
    def size(self) -> int:
        return self.data.size

    def stack(self, other: "Tensor3") -> "Tensor3":
        if self.dims[:2] != other.dims[:2]:
            raise DimensionError(f"cannot stack a {other.dims} tensor onto a {self.dims} tensor")
        return Tensor3(np.concatenate([self.data, other.data], axis=2))

    def slice(self, index: int) -> "Tensor3":
        return Tensor3(self.data[:, :, index:index + 1])

    def norm(self) -> float:
        return float(np.linalg.norm(self.data))

    def __eq__(self, other) -> bool:
        return isinstance(other, Tensor3) and self.dims == other.dims and np.array_equal(self.data, other.data)

    def __repr__(self) -> str:
        return f"Tensor3(dims={self.dims})"


def _check_mode(mode: int) -> int:
    if mode not in MODES:
        raise DimensionError(f"invalid mode {mode}, expected one of 1, 2, 3")
    return mode - 1


def unfold(tensor: Tensor3, mode: int) -> np.ndarray:
    """Mode-n matricization.

    Entry ``t[i1, i2, i3]`` lands in row ``i_n``; the remaining indices, taken in increasing mode
    order, form the column with the first one varying fastest. For mode 1 the column is
    ``i2 + I2 * i3``, for mode 2 ``i1 + I1 * i3`` and for mode 3 ``i1 + I1 * i2``.
    """
    axis = _check_mode(mode)
    return np.moveaxis(tensor.data, axis, 0).reshape(tensor.dims[axis], -1, order="F")


def fold(matrix: np.ndarray, mode: int, dims: Dims) -> Tensor3:
    axis = _check_mode(mode)
    rest = [d for i, d in enumerate(dims) if i != axis]
    if matrix.shape != (dims[axis], rest[0] * rest[1]):
        raise DimensionError(f"a {matrix.shape} matrix is not a mode-{mode} unfolding of {dims}")
    data = matrix.reshape([dims[axis]] + rest, order="F")
    return Tensor3(np.moveaxis(data, 0, axis))


def mode_product(tensor: Tensor3, matrix: np.ndarray, mode: int) -> Tensor3:
    """``tensor x_n matrix``: every mode-n fibre is multiplied by ``matrix``."""
    axis = _check_mode(mode)
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[1] != tensor.dims[axis]:
        raise DimensionError(f"cannot multiply mode {mode} of a {tensor.dims} tensor "
                             f"by a {np.shape(matrix)} matrix")
    dims = list(tensor.dims)
    dims[axis] = matrix.shape[0]
    return fold(matrix @ unfold(tensor, mode), mode, tuple(dims))
