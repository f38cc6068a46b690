import numpy as np
import pytest

from salttrack.errors import DimensionError, NumericalError
from salttrack.tensor import Tensor3, unfold, mode_product, compute_basis, skl_append, RowSpace, \
    reconstruction_error, captured_energy, principal_angles, IncrementalSubspace, SubspaceBasis


def orthonormality_error(matrix):
    return np.linalg.norm(matrix.T @ matrix - np.eye(matrix.shape[1]))


def oracle_error(patch, basis, modes=(1, 2, 3)):
    error = 0.0
    if 1 in modes:
        error += np.linalg.norm((patch.data - mode_product(patch, basis.U1 @ basis.U1.T, 1).data).ravel()) ** 2
    if 2 in modes:
        error += np.linalg.norm((patch.data - mode_product(patch, basis.U2 @ basis.U2.T, 2).data).ravel()) ** 2
    if 3 in modes:
        row = unfold(patch, 3)
        error += np.linalg.norm(row - row @ basis.U3 @ basis.U3.T) ** 2
    return error


def dense_energy(tensor, mode, count):
    sigma = np.linalg.svd(unfold(tensor, mode), compute_uv=False)
    return float(np.sum(sigma[:count] ** 2) / np.sum(sigma ** 2))


class TestComputeBasis:
    def test_orthonormal(self):
        tensor = Tensor3(np.random.RandomState(0).normal(size=(8, 8, 6)))
        basis = compute_basis(tensor, (4, 3, 2))
        assert basis.dims == (4, 3, 2)
        for matrix in (basis.U1, basis.U2, basis.U3):
            assert orthonormality_error(matrix) <= 1e-9

    def test_full_dimensions(self):
        tensor = Tensor3(np.random.RandomState(1).normal(size=(5, 4, 3)))
        basis = compute_basis(tensor, (5, 4, 20))
        assert basis.dims == (5, 4, 3)
        result = mode_product(mode_product(tensor, basis.U1 @ basis.U1.T, 1), basis.U2 @ basis.U2.T, 2)
        rows = unfold(result, 3) @ basis.U3 @ basis.U3.T
        assert np.linalg.norm(rows - unfold(tensor, 3)) <= 1e-9 * tensor.norm()

    def test_rank_one(self):
        rng = np.random.RandomState(2)
        tensor = Tensor3(np.einsum("i,j,k->ijk", rng.normal(size=6), rng.normal(size=5), rng.normal(size=4)))
        basis = compute_basis(tensor, (1, 1, 1))
        for mode in (1, 2, 3):
            assert captured_energy(tensor, basis, mode) == pytest.approx(1.0, abs=1e-12)

    def test_rank_capping(self):
        basis = compute_basis(Tensor3(np.random.RandomState(3).normal(size=(31, 31))), (15, 15, 5))
        assert basis.dims == (15, 15, 1)
        assert basis.mode3_singular_values.shape == (1,)

    def test_dense_svd_energy(self):
        tensor = Tensor3(np.random.RandomState(4).normal(size=(8, 8, 6)))
        dims = (3, 4, 2)
        basis = compute_basis(tensor, dims)
        for mode in (1, 2, 3):
            assert captured_energy(tensor, basis, mode) == pytest.approx(
                dense_energy(tensor, mode, dims[mode - 1]), abs=1e-9)

    def test_energy_monotone(self):
        tensor = Tensor3(np.random.RandomState(5).normal(size=(6, 5, 4)))
        for mode, limit in ((1, 6), (2, 5), (3, 4)):
            energies = []
            for count in range(1, limit + 1):
                dims = [1, 1, 1]
                dims[mode - 1] = count
                energies.append(captured_energy(tensor, compute_basis(tensor, tuple(dims)), mode))
            assert all(b >= a - 1e-12 for a, b in zip(energies, energies[1:]))

    def test_zero_tensor(self):
        with pytest.raises(NumericalError):
            compute_basis(Tensor3(np.zeros((3, 3, 2))), (2, 2, 2))


class TestSklAppend:
    def test_first_row(self):
        row = np.array([3.0, 0.0, 4.0, 0.0])
        state = skl_append(RowSpace.empty(4, 3), row)
        assert state.rank == 1
        assert state.singular_values[0] == pytest.approx(5.0)
        assert np.allclose(np.abs(state.vectors[:, 0]), np.abs(row) / 5.0)

    def test_in_span_row(self):
        rng = np.random.RandomState(6)
        state = RowSpace.empty(10, 4)
        for _ in range(3):
            state = skl_append(state, rng.normal(size=10))
        updated = skl_append(state, state.vectors @ rng.normal(size=state.rank))
        assert updated.rank == state.rank
        assert np.max(principal_angles(state.vectors, updated.vectors)) <= 1e-9

    def test_matches_batch_svd(self):
        rng = np.random.RandomState(7)
        generator = rng.normal(size=(3, 40))
        rows = rng.normal(size=(50, 3)) @ generator
        state = RowSpace.empty(40, 3)
        for row in rows:
            state = skl_append(state, row)
        _, sigma, vt = np.linalg.svd(rows, full_matrices=False)
        assert np.max(principal_angles(state.vectors, vt[:3].T)) <= 1e-6
        assert np.allclose(state.singular_values, sigma[:3], rtol=1e-8)

    def test_truncation(self):
        rng = np.random.RandomState(8)
        state = RowSpace.empty(12, 2)
        for _ in range(6):
            state = skl_append(state, rng.normal(size=12))
        assert state.rank == 2
        assert orthonormality_error(state.vectors) <= 1e-9

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            skl_append(RowSpace.empty(4, 2), np.ones(5))

    def test_zero_row(self):
        state = RowSpace.empty(4, 2)
        assert skl_append(state, np.zeros(4)) is state


class TestReconstructionError:
    def setup_method(self):
        rng = np.random.RandomState(9)
        self.rng = rng
        self.tensor_s = Tensor3(rng.normal(size=(6, 5, 4)))
        self.tensor_c = Tensor3(rng.uniform(size=(6, 5, 4)))
        self.basis_s = compute_basis(self.tensor_s, (3, 3, 2))
        self.basis_c = compute_basis(self.tensor_c, (3, 2, 2))

    def test_training_patch_full_basis(self):
        basis = compute_basis(self.tensor_s, (6, 5, 4))
        patch = self.tensor_s.slice(2)
        assert reconstruction_error(patch, None, basis, None) <= 1e-9

    def test_oracle(self):
        patch_s = Tensor3(self.rng.normal(size=(6, 5)))
        patch_c = Tensor3(self.rng.uniform(size=(6, 5)))
        expected = 1.0 * oracle_error(patch_s, self.basis_s) + 2.5 * oracle_error(patch_c, self.basis_c)
        result = reconstruction_error(patch_s, patch_c, self.basis_s, self.basis_c, 1.0, 2.5)
        assert result == pytest.approx(expected, abs=1e-10)
        assert result >= 0

    def test_mode_three_only(self):
        patch_s = Tensor3(self.rng.normal(size=(6, 5)))
        result = reconstruction_error(patch_s, None, self.basis_s, None, modes=(3,))
        assert result == pytest.approx(oracle_error(patch_s, self.basis_s, (3,)), abs=1e-10)

    def test_zero_contrast_weight(self):
        patch_s = Tensor3(self.rng.normal(size=(6, 5)))
        first = reconstruction_error(patch_s, Tensor3(self.rng.uniform(size=(6, 5))),
                                     self.basis_s, self.basis_c, 1.0, 0.0)
        second = reconstruction_error(patch_s, Tensor3(self.rng.uniform(size=(6, 5))),
                                      self.basis_s, self.basis_c, 1.0, 0.0)
        assert first == second == reconstruction_error(patch_s, None, self.basis_s, None)

    def test_rotation_invariance(self):
        patch_s = Tensor3(self.rng.normal(size=(6, 5)))
        rotations = [np.linalg.qr(self.rng.normal(size=(p, p)))[0] for p in self.basis_s.dims]
        rotated = SubspaceBasis(self.basis_s.U1 @ rotations[0], self.basis_s.U2 @ rotations[1],
                                self.basis_s.U3 @ rotations[2], self.basis_s.mode3_singular_values)
        assert reconstruction_error(patch_s, None, rotated, None) == pytest.approx(
            reconstruction_error(patch_s, None, self.basis_s, None), abs=1e-10)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            reconstruction_error(Tensor3(np.ones((5, 5))), None, self.basis_s, None)


class TestIncrementalSubspace:
    def test_matches_batch_basis(self):
        rng = np.random.RandomState(10)
        tensor = Tensor3(rng.normal(size=(7, 6, 3)) + rng.normal(size=(7, 6, 1)))
        state = IncrementalSubspace((7, 6), (3, 2, 3))
        for index in range(3):
            state = state.extend(tensor.slice(index))
        assert state.members == 3
        incremental, batch = state.basis(), compute_basis(tensor, (3, 2, 3))
        for mode in (1, 2, 3):
            assert np.max(principal_angles(incremental.factor(mode), batch.factor(mode))) <= 1e-6

    def test_extend_keeps_original(self):
        patch = Tensor3(np.random.RandomState(11).normal(size=(4, 4)))
        state = IncrementalSubspace((4, 4), (2, 2, 2)).extend(patch)
        extended = state.extend(Tensor3(np.ones((4, 4))))
        assert state.members == 1
        assert extended.members == 2
        assert state.basis().dims == (2, 2, 1)

    def test_empty_basis(self):
        state = IncrementalSubspace((3, 3), (2, 2, 2)).extend(Tensor3(np.zeros((3, 3))))
        patch = Tensor3(np.random.RandomState(12).normal(size=(3, 3)))
        assert state.basis().dims == (0, 0, 0)
        assert reconstruction_error(patch, None, state.basis(), None) == pytest.approx(
            3 * np.sum(patch.data ** 2))

    def test_wrong_patch(self):
        with pytest.raises(DimensionError):
            IncrementalSubspace((3, 3), (2, 2, 2)).extend(Tensor3(np.zeros((3, 4))))
