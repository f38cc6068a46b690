import numpy as np
import pytest

from salttrack.errors import DimensionError
from salttrack.tensor import Tensor3, unfold, fold, mode_product


def loop_unfold(data, mode):
    i1, i2, i3 = data.shape
    if mode == 1:
        result = np.zeros((i1, i2 * i3))
        for a in range(i1):
            for b in range(i2):
                for c in range(i3):
                    result[a, b + i2 * c] = data[a, b, c]
    elif mode == 2:
        result = np.zeros((i2, i1 * i3))
        for a in range(i1):
            for b in range(i2):
                for c in range(i3):
                    result[b, a + i1 * c] = data[a, b, c]
    else:
        result = np.zeros((i3, i1 * i2))
        for a in range(i1):
            for b in range(i2):
                for c in range(i3):
                    result[c, a + i1 * b] = data[a, b, c]
    return result


def loop_mode_product(data, matrix, mode):
    dims = list(data.shape)
    dims[mode - 1] = matrix.shape[0]
    result = np.zeros(dims)
    for a in range(dims[0]):
        for b in range(dims[1]):
            for c in range(dims[2]):
                index = [a, b, c]
                total = 0.0
                for k in range(data.shape[mode - 1]):
                    source = list(index)
                    source[mode - 1] = k
                    total += data[tuple(source)] * matrix[index[mode - 1], k]
                result[a, b, c] = total
    return result


def random_tensors(count=100, seed=0):
    rng = np.random.RandomState(seed)
    for _ in range(count):
        dims = tuple(rng.randint(1, high) for high in (7, 6, 5))
        yield rng, Tensor3(rng.normal(size=dims))


class TestTensor3:
    def test_patch(self):
        tensor = Tensor3(np.ones((3, 4)))
        assert tensor.dims == (3, 4, 1)
        assert tensor.size == 12

    def test_invalid(self):
        with pytest.raises(DimensionError):
            Tensor3(np.ones(5))

    def test_stack(self):
        first, second = Tensor3(np.zeros((2, 3))), Tensor3(np.ones((2, 3)))
        stacked = first.stack(second)
        assert stacked.dims == (2, 3, 2)
        assert stacked.slice(1) == second

    def test_stack_mismatch(self):
        with pytest.raises(DimensionError):
            Tensor3(np.zeros((2, 3))).stack(Tensor3(np.zeros((3, 2))))


class TestUnfold:
    def test_example(self):
        data = np.zeros((2, 2, 2))
        for a in range(2):
            for b in range(2):
                for c in range(2):
                    data[a, b, c] = a + 2 * b + 4 * c
        assert np.array_equal(unfold(Tensor3(data), 1)[0], [0, 2, 4, 6])

    def test_patch_row(self):
        patch = Tensor3(np.arange(12.0).reshape(3, 4))
        row = unfold(patch, 3)
        assert row.shape == (1, 12)
        assert np.array_equal(row[0], patch.data[:, :, 0].ravel(order="F"))

    def test_invalid_mode(self):
        with pytest.raises(DimensionError):
            unfold(Tensor3(np.zeros((2, 2, 2))), 4)

    def test_oracle(self):
        for _, tensor in random_tensors():
            for mode in (1, 2, 3):
                matrix = unfold(tensor, mode)
                assert np.array_equal(matrix, loop_unfold(tensor.data, mode))
                assert fold(matrix, mode, tensor.dims) == tensor

    def test_fold_mismatch(self):
        with pytest.raises(DimensionError):
            fold(np.zeros((2, 5)), 1, (2, 2, 2))


class TestModeProduct:
    def test_identity(self):
        tensor = Tensor3(np.random.RandomState(1).normal(size=(3, 4, 2)))
        for mode in (1, 2, 3):
            assert mode_product(tensor, np.eye(tensor.dims[mode - 1]), mode) == tensor

    def test_rank_one(self):
        rng = np.random.RandomState(2)
        a, b, c = rng.normal(size=3), rng.normal(size=4), rng.normal(size=2)
        matrix = rng.normal(size=(5, 3))
        tensor = Tensor3(np.einsum("i,j,k->ijk", a, b, c))
        expected = np.einsum("i,j,k->ijk", matrix @ a, b, c)
        assert np.allclose(mode_product(tensor, matrix, 1).data, expected, atol=1e-12)

    def test_oracle(self):
        for rng, tensor in random_tensors():
            for mode in (1, 2, 3):
                matrix = rng.normal(size=(rng.randint(1, 5), tensor.dims[mode - 1]))
                result = mode_product(tensor, matrix, mode)
                assert np.allclose(result.data, loop_mode_product(tensor.data, matrix, mode), atol=1e-12)

    def test_commuting_modes(self):
        rng = np.random.RandomState(3)
        tensor = Tensor3(rng.normal(size=(3, 4, 2)))
        first, second = rng.normal(size=(2, 3)), rng.normal(size=(5, 4))
        one = mode_product(mode_product(tensor, first, 1), second, 2)
        other = mode_product(mode_product(tensor, second, 2), first, 1)
        assert np.allclose(one.data, other.data, atol=1e-12)

    def test_projection_idempotent(self):
        rng = np.random.RandomState(4)
        tensor = Tensor3(rng.normal(size=(6, 5, 3)))
        basis, _ = np.linalg.qr(rng.normal(size=(6, 2)))
        projector = basis @ basis.T
        once = mode_product(tensor, projector, 1)
        assert np.allclose(mode_product(once, projector, 1).data, once.data, atol=1e-12)

    def test_mismatch(self):
        with pytest.raises(DimensionError):
            mode_product(Tensor3(np.zeros((3, 4, 2))), np.zeros((2, 2)), 2)
