import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Iterable, Dict, Any

from .classifier import ClassifiedModel, classify_tensors, prepare_section
from .config import TrackerConfig
from .localizer import TrackedBoundary, track_section
from ..boundary.curve import order_boundary, simplify_chain
from ..errors import SaltTrackError, DataError
from ..volume import SeismicVolume, BoundaryRecord

logger = logging.getLogger(__name__)


@dataclass
class SectionResult:
    inline_no: int
    boundary: Optional[TrackedBoundary] = None
    error: Optional[SaltTrackError] = None
    seconds: float = 0.0

    @property
    def succeeded(self) -> bool:
        return self.error is None

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {"inline": self.inline_no, "status": "ok" if self.succeeded else "failed"}
        if self.error is not None:
            result["error"] = str(self.error)
            result["exit_code"] = self.error.exit_code
        return result


def classify_reference(volume: SeismicVolume, boundary: BoundaryRecord, config: TrackerConfig) -> ClassifiedModel:
    section = volume.section(boundary.inline_no)
    boundary.check_bounds(section.shape)
    section, contrast = prepare_section(section, config)
    curve = order_boundary(boundary.points, config.patch_dims, section.shape)
    return classify_tensors(section, contrast, curve, config)


def _track_one(volume: SeismicVolume, model: ClassifiedModel, inline_no: int,
               config: TrackerConfig) -> SectionResult:
    started = time.perf_counter()
    try:
        boundary = track_section(model, volume.section(inline_no), config)
    except SaltTrackError as e:
        logger.warning("tracking of inline %d failed: %s", inline_no, e)
        return SectionResult(inline_no, error=e, seconds=time.perf_counter() - started)
    return SectionResult(inline_no, boundary, seconds=time.perf_counter() - started)


def _track_chain(volume: SeismicVolume, model: ClassifiedModel, inlines: List[int],
                 config: TrackerConfig) -> List[SectionResult]:
    """Tracks ``inlines`` one after another, re-classifying each tracked section for the next one."""
    results = []
    for position, inline_no in enumerate(inlines):
        result = _track_one(volume, model, inline_no, config)
        results.append(result)
        if not result.succeeded:
            for rest in inlines[position + 1:]:
                results.append(SectionResult(rest, error=DataError(
                    f"chain broken: inline {inline_no} could not be tracked")))
            break
        try:
            record = BoundaryRecord(inline_no, simplify_chain(result.boundary.curve.points))
            model = classify_reference(volume, record, config)
        except SaltTrackError as e:
            logger.warning("re-classification of inline %d failed: %s", inline_no, e)
            for rest in inlines[position + 1:]:
                results.append(SectionResult(rest, error=DataError(
                    f"chain broken: inline {inline_no} could not be re-classified")))
            break
    return results


def track_volume(volume: SeismicVolume, reference_inline: int, boundary: BoundaryRecord,
                 inline_range: Iterable[int], config: TrackerConfig, jobs: int = 1) -> List[SectionResult]:
    """Tracks the labeled boundary of ``reference_inline`` into every other inline of the range.

    By default each section is tracked directly from the reference model and sections run
    concurrently on up to ``jobs`` threads. In chained mode the range is walked outwards from the
    reference one inline at a time. A failing section is reported in its result and does not stop
    the others. Results are ordered by inline number.
    """
    if boundary.inline_no != reference_inline:
        raise DataError(f"the reference boundary lies on inline {boundary.inline_no}, "
                        f"not on inline {reference_inline}")
    inlines = sorted(set(inline_range))
    if reference_inline not in inlines:
        raise DataError(f"reference inline {reference_inline} is outside of the tracking range")
    targets = [inline for inline in inlines if inline != reference_inline]
    if not targets:
        return []

    model = classify_reference(volume, boundary, config)
    missing = [SectionResult(inline, error=DataError(f"inline {inline} is not in the volume"))
               for inline in targets if not volume.has_inline(inline)]
    targets = [inline for inline in targets if volume.has_inline(inline)]

    if config.chained:
        below = sorted((i for i in targets if i < reference_inline), reverse=True)
        above = [i for i in targets if i > reference_inline]
        results = _track_chain(volume, model, below, config) + _track_chain(volume, model, above, config)
    elif jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as executor:
            results = list(executor.map(lambda inline: _track_one(volume, model, inline, config), targets))
    else:
        results = [_track_one(volume, model, inline, config) for inline in targets]

    results = sorted(results + missing, key=lambda result: result.inline_no)
    failed = sum(1 for result in results if not result.succeeded)
    logger.info("tracked %d sections from inline %d, %d failed", len(results), reference_inline, failed)
    return results


def tracked_boundaries(results: Iterable[SectionResult]) -> List[TrackedBoundary]:
    return [result.boundary for result in results if result.succeeded]
