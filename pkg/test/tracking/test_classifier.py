import math

import numpy as np
import pytest

from salttrack.boundary.curve import BoundaryCurve
from salttrack.errors import GeometryError
from salttrack.tracking import TrackerConfig, Variant, classify_tensors, extract_patch_pair
from salttrack.tracking.classifier import prepare_section
from salttrack.texture import ContrastMap
from salttrack.volume import SeismicSection


def layered_grid(shape=(100, 60), period=7.0):
    return np.tile(np.sin(2 * math.pi * np.arange(shape[1]) / period), (shape[0], 1))


def horizontal_curve(first=10, last=89, y=30):
    return BoundaryCurve([(x, y) for x in range(first, last + 1)])


class TestPatches:
    def test_extract(self):
        grid = np.arange(400, dtype=np.float64).reshape(20, 20)
        section = SeismicSection(1, grid)
        contrast = ContrastMap(grid / 400.0, normalized=True)
        patch_s, patch_c = extract_patch_pair(section, contrast, (10, 5), (5, 3))
        assert patch_s.dims == (5, 3, 1)
        assert np.array_equal(patch_s.data[:, :, 0], grid[8:13, 4:7])
        assert np.allclose(patch_c.data[:, :, 0], grid[8:13, 4:7] / 400.0)

    def test_without_contrast(self):
        section = SeismicSection(1, np.zeros((20, 20)))
        assert extract_patch_pair(section, None, (10, 10), (3, 3))[1] is None

    def test_border(self):
        section = SeismicSection(1, np.zeros((20, 20)))
        with pytest.raises(GeometryError):
            extract_patch_pair(section, None, (1, 10), (5, 5))

    def test_prepare_without_contrast(self):
        section = SeismicSection(4, layered_grid() * 10.0)
        prepared, contrast = prepare_section(section, TrackerConfig(variant=Variant.NO_CONTRAST))
        assert contrast is None
        assert prepared.normalized
        assert prepared.grid.min() == 0.0 and prepared.grid.max() == 1.0

    def test_prepare_keeps_given_contrast(self):
        contrast = ContrastMap(np.zeros((100, 60)), normalized=True)
        _, result = prepare_section(SeismicSection(4, layered_grid()), TrackerConfig(), contrast)
        assert result is contrast


class TestClassification:
    config = TrackerConfig(patch_dims=(11, 11), subspace_dims=(5, 5, 3))

    def test_uniform_texture(self):
        section = SeismicSection(7, layered_grid())
        model = classify_tensors(section, None, horizontal_curve(), self.config)
        assert model.tensor_count == 1
        assert model.assignment == [0] * 80
        assert model.tensors[0].member_count == 80
        assert model.reference_inline == 7
        assert model.skipped == []

    def test_texture_change(self):
        grid = layered_grid()
        grid[50:] = np.random.RandomState(0).uniform(-1, 1, size=(50, 60))
        config = TrackerConfig(patch_dims=(11, 11), subspace_dims=(1, 1, 1), error_threshold=1.0,
                               variant=Variant.NO_CONTRAST)
        curve = horizontal_curve()
        model = classify_tensors(SeismicSection(1, grid), None, curve, config)
        assert model.tensor_count > 1
        first_change = next(k for k, tensor in enumerate(model.assignment) if tensor != 0)
        # the first patch reaching the noise is centred at x = 45
        assert abs(curve[first_change][0] - 45) <= 2
        assert all(tensor == 0 for tensor in model.assignment[:first_change])

    def test_contiguous_assignment(self):
        grid = np.random.RandomState(5).uniform(size=(100, 60))
        config = TrackerConfig(patch_dims=(11, 11), subspace_dims=(2, 2, 2), error_threshold=5.0)
        model = classify_tensors(SeismicSection(1, grid), None, horizontal_curve(), config)
        assert model.assignment[0] == 0
        steps = np.diff(model.assignment)
        assert set(steps.tolist()) <= {0, 1}
        assert model.assignment[-1] == model.tensor_count - 1
        assert sum(pair.member_count for pair in model.tensors) == 80

    def test_vectorized(self):
        config = TrackerConfig(patch_dims=(11, 11), subspace_dims=(5, 5, 3), variant=Variant.VECTORIZED)
        model = classify_tensors(SeismicSection(1, layered_grid()), None, horizontal_curve(), config)
        assert model.tensor_count == 1

    def test_skipped_points(self):
        curve = BoundaryCurve([(3, 30), (4, 30)] + [(x, 30) for x in range(5, 20)])
        config = TrackerConfig(patch_dims=(11, 11), subspace_dims=(5, 5, 3), variant=Variant.NO_CONTRAST)
        model = classify_tensors(SeismicSection(1, layered_grid()), None, curve, config)
        assert model.skipped == [0, 1]
        assert model.assignment[:2] == [0, 0]
        assert model.tensors[0].member_count == 15

    def test_skipped_inherits_previous(self):
        grid = layered_grid()
        grid[20:] = np.random.RandomState(1).uniform(-1, 1, size=(80, 60))
        config = TrackerConfig(patch_dims=(11, 11), subspace_dims=(1, 1, 1), error_threshold=1e-6,
                               variant=Variant.NO_CONTRAST)
        curve = BoundaryCurve([(x, 30) for x in range(10, 30)] + [(29, y) for y in range(31, 60)])
        model = classify_tensors(SeismicSection(1, grid), None, curve, config)
        last_admissible = curve.points.index((29, 54))
        assert model.skipped == list(range(last_admissible + 1, len(curve)))
        assert all(tensor == model.assignment[last_admissible]
                   for tensor in model.assignment[last_admissible + 1:])

    def test_empty_curve(self):
        with pytest.raises(GeometryError):
            classify_tensors(SeismicSection(1, layered_grid()), None, BoundaryCurve([]), self.config)

    def test_no_admissible_point(self):
        curve = BoundaryCurve([(1, 1), (2, 2)])
        with pytest.raises(GeometryError):
            classify_tensors(SeismicSection(1, layered_grid()), None, curve, self.config)

    def test_clone(self):
        section, contrast = prepare_section(SeismicSection(1, layered_grid()), self.config)
        model = classify_tensors(section, contrast, horizontal_curve(), self.config)
        copy = model.clone()
        copy.tensors[0].append(*extract_patch_pair(section, contrast, (50, 30), (11, 11)))
        assert copy.tensors[0].member_count == 81
        assert model.tensors[0].member_count == 80
        assert copy.assignment is not model.assignment
