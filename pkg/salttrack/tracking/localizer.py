import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, NamedTuple, Dict, Any, Sequence

import numpy as np

from .classifier import ClassifiedModel, extract_patch_pair, prepare_section
from .config import TrackerConfig
from .tensors import TensorPair
from ..boundary.curve import BoundaryCurve, is_admissible, normal_at, connect_points
from ..boundary.filtering import filter_tracked_points
from ..errors import GeometryError, DataError, NumericalError
from ..tensor import Tensor3, reconstruction_error
from ..texture import ContrastMap
from ..volume import SeismicSection, Point

logger = logging.getLogger(__name__)


class Candidate(NamedTuple):
    offset: int
    point: Point
    patch_s: Tensor3
    patch_c: Optional[Tensor3]
    contrast: float


class Localization(NamedTuple):
    offset: int
    point: Point
    error: float


@dataclass
class PointDiagnostics:
    index: int
    reference_point: Point
    status: str
    tensor: int
    tracked_point: Optional[Point] = None
    offset: Optional[int] = None
    error: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "index": self.index,
            "reference_point": list(self.reference_point),
            "tracked_point": list(self.tracked_point) if self.tracked_point is not None else None,
            "offset": self.offset,
            "e_min": self.error,
            "tensor": self.tensor,
            "status": self.status
        }


@dataclass
class TrackedBoundary:
    inline_no: int
    curve: BoundaryCurve
    offsets: List[Optional[int]]
    diagnostics: List[PointDiagnostics] = field(default_factory=list)

    @property
    def skipped(self) -> List[int]:
        return [d.index for d in self.diagnostics if d.status == "skipped"]

    @property
    def rejected(self) -> List[int]:
        return [d.index for d in self.diagnostics if d.status == "rejected"]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "inline": self.inline_no,
            "curve_points": len(self.curve),
            "points": [d.to_dict() for d in self.diagnostics]
        }


def contrast_weight(value: float, config: TrackerConfig) -> float:
    """``|log C|`` with ``C`` clamped to ``[floor, 1]``; an explicit override wins."""
    if not config.variant.uses_contrast:
        return 0.0
    if config.contrast_weight is not None:
        return config.contrast_weight
    return abs(math.log(min(max(value, config.contrast_floor), 1.0)))


def _round(value: float) -> int:
    return int(math.floor(value + 0.5))


def search_candidates(section: SeismicSection, contrast: Optional[ContrastMap], point: Point,
                      normal: np.ndarray, search_radius: int, config: TrackerConfig) -> List[Candidate]:
    """Admissible pixels at integer steps ``-R..R`` along the normal, in increasing offset order.

    Offsets rounding to the same pixel keep the one closest to the projected point.
    """
    pixels: Dict[Point, int] = {}
    for offset in sorted(range(-search_radius, search_radius + 1), key=lambda o: (abs(o), o)):
        pixel = (_round(point[0] + offset * normal[0]), _round(point[1] + offset * normal[1]))
        if pixel not in pixels and is_admissible(pixel, config.patch_dims, section.shape):
            pixels[pixel] = offset

    candidates = []
    for pixel, offset in sorted(pixels.items(), key=lambda item: item[1]):
        patch_s, patch_c = extract_patch_pair(section, contrast, pixel, config.patch_dims)
        value = contrast.value_at(pixel) if contrast is not None else 0.0
        candidates.append(Candidate(offset, pixel, patch_s, patch_c, value))
    return candidates


def localize_tracked_point(pair: TensorPair, candidates: Sequence[Candidate],
                           config: TrackerConfig) -> Localization:
    """Picks the candidate with the smallest weighted reconstruction error and appends it to ``pair``.

    Candidates are scored against the subspaces of the pair as it stands, so no candidate takes
    part in its own reconstruction. With ``extended_scoring`` each candidate is instead scored
    against the pair extended by its own patches. Candidates are scanned in offset order and a
    later candidate wins a tie.
    """
    if len(candidates) == 0:
        raise GeometryError("all candidates inadmissible")
    modes = config.variant.modes
    basis_s, basis_c = pair.basis_s, pair.basis_c
    best, best_trial, best_error = None, None, math.inf
    for candidate in candidates:
        weight_c = contrast_weight(candidate.contrast, config)
        if config.extended_scoring:
            trial = pair.trial(candidate.patch_s, candidate.patch_c)
            error = trial.error(1.0, weight_c, modes)
        else:
            trial = None
            patch_c = candidate.patch_c if pair.with_contrast else None
            error = reconstruction_error(candidate.patch_s, patch_c, basis_s, basis_c, 1.0, weight_c, modes)
        if error <= best_error:
            best, best_trial, best_error = candidate, trial, error
    if best_trial is not None:
        pair.commit(best_trial)
    else:
        pair.append(best.patch_s, best.patch_c)
    return Localization(best.offset, best.point, best_error)


def track_section(model: ClassifiedModel, section: SeismicSection, config: TrackerConfig,
                  contrast: Optional[ContrastMap] = None) -> TrackedBoundary:
    """Synthesizes the boundary of ``section`` from a model classified on the reference section.

    The reference curve is projected unchanged onto the predicted section and every point is moved
    along its normal within a window as wide as the inline distance. The model is cloned first, so
    tracking one section never affects another.
    """
    search_radius = abs(section.inline_no - model.reference_inline)
    if search_radius == 0:
        raise DataError(f"inline {section.inline_no} is the reference section itself")
    model = model.clone()
    section, contrast = prepare_section(section, config, contrast)
    curve = model.reference_curve

    diagnostics: List[PointDiagnostics] = []
    tracked: List[PointDiagnostics] = []
    for index, point in enumerate(curve):
        tensor = model.assignment[index]
        entry = PointDiagnostics(index, point, "skipped", tensor)
        diagnostics.append(entry)
        try:
            normal = normal_at(curve, index, config.normal_window)
        except (NumericalError, GeometryError) as e:
            logger.warning("inline %d, point %d: %s", section.inline_no, index, e)
            continue
        candidates = search_candidates(section, contrast, point, normal, search_radius, config)
        if not candidates:
            logger.warning("inline %d, point %d: all candidates inadmissible", section.inline_no, index)
            continue
        result = localize_tracked_point(model.tensors[tensor], candidates, config)
        entry.status, entry.tracked_point = "tracked", result.point
        entry.offset, entry.error = result.offset, result.error
        tracked.append(entry)
        logger.debug("inline %d, point %d: offset %d, error %.6g",
                     section.inline_no, index, result.offset, result.error)

    if len(tracked) < 2:
        raise GeometryError(f"inline {section.inline_no}: only {len(tracked)} boundary points could be tracked")
    kept_entries = filter_tracked_points(tracked, [entry.offset for entry in tracked],
                                         config.median_window, config.rejection_px)
    kept_indices = {entry.index for entry in kept_entries}
    for entry in tracked:
        if entry.index not in kept_indices:
            entry.status = "rejected"

    kept = [entry.tracked_point for entry in tracked if entry.status == "tracked"]
    result = TrackedBoundary(section.inline_no, connect_points(kept),
                             [entry.offset for entry in diagnostics], diagnostics)
    logger.info("inline %d: %d points tracked, %d rejected, %d skipped", section.inline_no,
                len(kept), len(result.rejected), len(result.skipped))
    return result
