import logging
from typing import List, Optional, Tuple

import numpy as np

from .config import TrackerConfig
from .tensors import TensorPair
from ..boundary.curve import BoundaryCurve, is_admissible
from ..errors import GeometryError
from ..tensor import Tensor3
from ..texture import ContrastMap, contrast_map
from ..volume import SeismicSection, Point, normalize_section

logger = logging.getLogger(__name__)


def extract_patch_pair(section: SeismicSection, contrast: Optional[ContrastMap], center: Point,
                       dims: Tuple[int, int]) -> Tuple[Tensor3, Optional[Tensor3]]:
    """Amplitude and contrast windows centred at ``center`` as ``I1 x I2 x 1`` tensors."""
    half_x, half_y = dims[0] // 2, dims[1] // 2
    x, y = center
    if not is_admissible(center, dims, section.shape):
        raise GeometryError(f"a {dims[0]}x{dims[1]} patch centred at {center} overruns the border "
                            f"of the {section.shape[0]}x{section.shape[1]} section")
    window = np.s_[x - half_x:x + half_x + 1, y - half_y:y + half_y + 1]
    patch_s = Tensor3(section.grid[window].copy())
    patch_c = Tensor3(contrast.grid[window].copy()) if contrast is not None else None
    return patch_s, patch_c


def prepare_section(section: SeismicSection, config: TrackerConfig,
                    contrast: Optional[ContrastMap] = None) -> Tuple[SeismicSection, Optional[ContrastMap]]:
    """Normalized section with its contrast map, or ``None`` when the variant ignores contrast."""
    if not section.normalized:
        section = normalize_section(section)
    if not config.variant.uses_contrast:
        return section, None
    if contrast is None:
        contrast = contrast_map(section, config.glcm)
    return section, contrast


class ClassifiedModel:
    def __init__(self, tensors: List[TensorPair], assignment: List[int], reference_inline: int,
                 reference_curve: BoundaryCurve, skipped: Optional[List[int]] = None):
        self.tensors = tensors
        self.assignment = assignment
        self.reference_inline = reference_inline
        self.reference_curve = reference_curve
        self.skipped = skipped if skipped is not None else []

    @property
    def tensor_count(self) -> int:
        return len(self.tensors)

    def clone(self) -> "ClassifiedModel":
        return ClassifiedModel([pair.clone() for pair in self.tensors], list(self.assignment),
                               self.reference_inline, self.reference_curve, list(self.skipped))

    def __repr__(self) -> str:
        return (f"ClassifiedModel(inline={self.reference_inline}, tensors={self.tensor_count}, "
                f"points={len(self.assignment)})")


def classify_tensors(section: SeismicSection, contrast: Optional[ContrastMap], curve: BoundaryCurve,
                     config: TrackerConfig) -> ClassifiedModel:
    """Groups boundary points of the reference section into texture tensor pairs.

    Points are visited in traversal order. A point joins the current pair when the reconstruction
    error of its patches against the pair extended by those patches stays within the threshold;
    otherwise it opens a new pair. Points whose patches would cross the border are skipped and
    take the tensor of the nearest preceding point.
    """
    if len(curve) == 0:
        raise GeometryError("cannot classify texture tensors of an empty boundary")
    section, contrast = prepare_section(section, config, contrast)
    with_contrast = contrast is not None
    modes = config.variant.modes

    tensors: List[TensorPair] = []
    assignment: List[Optional[int]] = []
    skipped: List[int] = []
    for index, point in enumerate(curve):
        if not is_admissible(point, config.patch_dims, section.shape):
            logger.warning("boundary point %s of inline %d is too close to the border, skipped",
                           point, section.inline_no)
            skipped.append(index)
            assignment.append(len(tensors) - 1 if tensors else None)
            continue

        patch_s, patch_c = extract_patch_pair(section, contrast, point, config.patch_dims)
        if tensors:
            current = tensors[-1]
            trial = current.trial(patch_s, patch_c)
            error = trial.error(1.0, 1.0, modes)
            logger.debug("point %d %s: error %.6g against tensor %d", index, point, error, len(tensors) - 1)
            if error <= config.error_threshold:
                current.commit(trial)
                assignment.append(len(tensors) - 1)
                continue

        pair = TensorPair(config.patch_dims, config.subspace_dims, with_contrast)
        pair.append(patch_s, patch_c)
        tensors.append(pair)
        assignment.append(len(tensors) - 1)

    if not tensors:
        raise GeometryError(f"no boundary point of inline {section.inline_no} admits a "
                            f"{config.patch_dims[0]}x{config.patch_dims[1]} patch")
    logger.info("inline %d: %d boundary points grouped into %d texture tensors",
                section.inline_no, len(curve), len(tensors))
    return ClassifiedModel(tensors, [0 if k is None else k for k in assignment],
                           section.inline_no, curve, skipped)
