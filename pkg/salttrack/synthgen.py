"""Synthetic seismic volumes with a known salt dome.

Every inline holds a dome shaped as the upper half of an ellipse standing on a vertical stem. The
salt is a smooth field with little variation; the sediments around it are horizontal sinusoidal
layers with a slight dip. The dome centre drifts along the crossline axis from inline to inline, so
the labeled boundary of one inline is a shifted copy of its neighbours'.

Random values come from a Philox counter-based generator keyed by ``(seed, inline index)``: an
inline's noise does not depend on which other inlines are generated or in what order.
"""

import enum
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Tuple, List, Optional, Union

import numpy as np
from scipy.ndimage import gaussian_filter

from .boundary.curve import simplify_chain
from .errors import GeometryError
from .storage import save_volume, save_boundary, boundary_file_name
from .volume import VolumeHeader, SeismicVolume, BoundaryRecord, Point

logger = logging.getLogger(__name__)

TRUTH_DIRECTORY = "truth"
_ARC_SAMPLES = 4096
_INTERIOR_SMOOTHING = 4.0


class InteriorTexture(enum.Enum):
    SMOOTH_LOW_NOISE = "smooth-low-noise"


class ExteriorTexture(enum.Enum):
    LAYERED_SINUSOID = "layered-sinusoid"


@dataclass(frozen=True)
class SynthSpec:
    dims: Tuple[int, int, int] = (21, 200, 160)
    center: Tuple[float, float] = (100.0, 110.0)
    radii: Tuple[float, float] = (60.0, 70.0)
    drift: float = 1.0
    noise_sigma: float = 0.05
    seed: int = 0
    interior_texture: InteriorTexture = InteriorTexture.SMOOTH_LOW_NOISE
    exterior_texture: ExteriorTexture = ExteriorTexture.LAYERED_SINUSOID
    interior_level: float = 0.1
    layer_amplitude: float = 0.4
    layer_period: float = 9.0
    layer_dip: float = 0.05
    margin: int = 15
    inline_start: int = 1
    crossline_start: int = 1
    time_start_ms: int = 0
    time_step_ms: int = 4

    def __post_init__(self):
        if min(self.dims) < 1:
            raise ValueError(f"volume dimensions must be positive, got {self.dims}")
        if self.noise_sigma < 0:
            raise ValueError(f"noise sigma cannot be negative, got {self.noise_sigma}")
        if min(self.radii) <= 0:
            raise ValueError(f"dome radii must be positive, got {self.radii}")
        if self.layer_period <= 0:
            raise ValueError(f"layer period must be positive, got {self.layer_period}")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

        _, width, height = self.dims
        centers = [self.center_at(index) for index in (0, self.dims[0] - 1)]
        left = min(cx for cx, _ in centers) - self.radii[0]
        right = max(cx for cx, _ in centers) + self.radii[0]
        top = self.center[1] - self.radii[1]
        if (left < self.margin or right > width - 1 - self.margin or
                top < self.margin or self.center[1] > height - 1 - self.margin):
            raise GeometryError(f"dome/margin violation: the dome spans crosslines {left:.1f}..{right:.1f} "
                                f"and samples {top:.1f}..{self.center[1]:.1f}, which leaves less than "
                                f"{self.margin} samples to the border of a {width}x{height} section")

    def center_at(self, index: int) -> Tuple[float, float]:
        """Dome base centre of the inline with zero-based ``index``; the middle inline is undisplaced."""
        shift = self.drift * (index - (self.dims[0] - 1) / 2.0)
        return self.center[0] + shift, self.center[1]

    @property
    def header(self) -> VolumeHeader:
        return VolumeHeader(self.inline_start, self.dims[0], self.crossline_start, self.dims[1],
                            self.time_start_ms, self.time_step_ms, self.dims[2])


def generator_for(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, index])))


def dome_boundary(spec: SynthSpec, index: int) -> List[Point]:
    """Rasterized dome arc from its bottom-left end over the top to the bottom-right end."""
    cx, cy = spec.center_at(index)
    a, b = spec.radii
    angles = np.linspace(0.0, math.pi, _ARC_SAMPLES)
    xs = np.floor(cx - a * np.cos(angles) + 0.5).astype(int)
    ys = np.floor(cy - b * np.sin(angles) + 0.5).astype(int)
    return simplify_chain(list(zip(xs.tolist(), ys.tolist())))


def dome_mask(spec: SynthSpec, index: int) -> np.ndarray:
    cx, cy = spec.center_at(index)
    a, b = spec.radii
    xs, ys = np.meshgrid(np.arange(spec.dims[1]), np.arange(spec.dims[2]), indexing="ij")
    cap = ((xs - cx) / a) ** 2 + ((ys - cy) / b) ** 2 <= 1.0
    stem = (ys > cy) & (np.abs(xs - cx) <= a)
    return cap | stem


def generate_section(spec: SynthSpec, index: int) -> np.ndarray:
    rng = generator_for(spec.seed, index)
    shape = spec.dims[1], spec.dims[2]
    xs, ys = np.meshgrid(np.arange(shape[0]), np.arange(shape[1]), indexing="ij")

    phase = 2.0 * math.pi * (ys + spec.layer_dip * xs) / spec.layer_period
    exterior = spec.layer_amplitude * np.sin(phase) + spec.noise_sigma * rng.standard_normal(shape)

    smooth = gaussian_filter(rng.standard_normal(shape), sigma=_INTERIOR_SMOOTHING)
    smooth /= max(float(smooth.std()), np.finfo(np.float64).tiny)
    interior = spec.interior_level + spec.noise_sigma * smooth

    return np.where(dome_mask(spec, index), interior, exterior)


def generate(spec: SynthSpec) -> Tuple[SeismicVolume, List[BoundaryRecord]]:
    samples = np.empty(spec.dims, dtype=np.float32)
    truth = []
    for index in range(spec.dims[0]):
        samples[index] = generate_section(spec, index)
        truth.append(BoundaryRecord(spec.inline_start + index, dome_boundary(spec, index)))
    logger.info("generated a %dx%dx%d volume with seed %d", *spec.dims, spec.seed)
    return SeismicVolume(spec.header, samples), truth


def emit(spec: SynthSpec, path: Union[str, Path], truth_path: Optional[Union[str, Path]] = None) -> None:
    """Writes the volume directory and one ground-truth boundary file per inline."""
    path = Path(path)
    truth_path = Path(truth_path) if truth_path is not None else path / TRUTH_DIRECTORY
    volume, truth = generate(spec)
    save_volume(volume, path)
    truth_path.mkdir(parents=True, exist_ok=True)
    for record in truth:
        save_boundary(record, truth_path / boundary_file_name(record.inline_no))
