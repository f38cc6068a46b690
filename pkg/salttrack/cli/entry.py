import csv
import io
import json
import logging
import sys
import time
from argparse import ArgumentParser, ArgumentTypeError, Namespace
from pathlib import Path
from typing import List, Optional, Dict, Any

import numpy as np

from .config_builder import init_glcm_args_parser, init_tracker_args_parser, init_synth_args_parser, \
    build_glcm_config, build_tracker_config, build_synth_spec
from .error_display import ErrorsOutput
from .manifest import RunManifest
from .options import integer_type, range_type, color_type, existing_path_type, dict_type, default_jobs, COLORS
from .render import COLORMAPS, grid_image, burn_curve, write_ppm, write_svg
from ..boundary import similarity_index, mean_absolute_deviation
from ..boundary.similarity import DEFAULT_SEGMENTS
from ..errors import SaltTrackError, DataError, NumericalError, DimensionError, \
    EXIT_SUCCESS, EXIT_USAGE, EXIT_NUMERICAL
from ..storage import load_volume, load_boundary, save_boundary, save_contrast_map, save_json, \
    boundary_file_name, find_boundaries
from ..synthgen import emit
from ..texture import contrast_map
from ..tracking import track_volume
from ..volume import BoundaryRecord, SeismicSection, normalize_section
from .. import __version__

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"
SIMILARITY_FILE = "similarity.csv"
SIMILARITY_COLUMNS = ["inline", "similarity_index", "mean_segment_frechet"]
DEFAULT_PALETTE = ["green", "blue", "red", "yellow", "cyan", "magenta"]


class UsageError(Exception):
    pass


class _ArgumentParser(ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _normalized_or_blank(section: SeismicSection) -> SeismicSection:
    try:
        return normalize_section(section)
    except NumericalError:
        logger.warning("inline %d holds a single value, using an all-zero section", section.inline_no)
        return SeismicSection(section.inline_no, np.zeros(section.shape), normalized=True)


def cmd_synth(args: Namespace, errors: ErrorsOutput) -> int:
    spec = build_synth_spec(args)
    emit(spec, args.output, args.truth)
    logger.info("synthetic volume written to %s", args.output)
    return EXIT_SUCCESS


def cmd_attribute(args: Namespace, errors: ErrorsOutput) -> int:
    config = build_glcm_config(args)
    volume = load_volume(args.volume)
    section = _normalized_or_blank(volume.section(args.inline))
    attribute = contrast_map(section, config)
    save_contrast_map(attribute.grid, args.inline, args.output, attribute.normalized)
    if args.render is not None:
        write_ppm(grid_image(attribute.grid, args.colormap), args.render)
    return EXIT_SUCCESS


def _evaluate_pair(tracked: BoundaryRecord, truth: BoundaryRecord, segments: int) -> Dict[str, Any]:
    if tracked.inline_no != truth.inline_no:
        raise DataError(f"inline mismatch: tracked boundary lies on inline {tracked.inline_no}, "
                        f"ground truth on inline {truth.inline_no}")
    report = similarity_index(tracked.points, truth.points, segments)
    result = report.to_dict()
    result["inline"] = tracked.inline_no
    result["mean_absolute_deviation"] = mean_absolute_deviation(tracked.points, truth.points)
    return result


def cmd_track(args: Namespace, errors: ErrorsOutput) -> int:
    started = time.perf_counter()
    config = build_tracker_config(args)
    jobs = args.jobs if args.jobs is not None else default_jobs()
    volume = load_volume(args.volume)
    boundary = load_boundary(args.boundary)
    reference = args.reference if args.reference is not None else boundary.inline_no
    inlines = list(args.range) if args.range is not None else volume.inline_numbers
    truth = find_boundaries(args.truth) if args.truth is not None else {}

    results = track_volume(volume, reference, boundary, inlines, config, jobs)

    output = Path(args.output)
    output.mkdir(parents=True, exist_ok=True)
    manifest = RunManifest("track", {
        "reference": reference,
        "range": [inlines[0], inlines[-1]] if inlines else [],
        "segments": args.segments,
        "tracker": config.to_dict()
    }, {"volume": str(args.volume), "boundary": str(args.boundary)})
    if args.truth is not None:
        manifest.inputs["truth"] = str(args.truth)

    exit_code = EXIT_SUCCESS
    for result in results:
        entry = result.to_dict()
        if result.succeeded:
            record = BoundaryRecord(result.inline_no, result.boundary.curve.points)
            csv_path = output / boundary_file_name(result.inline_no)
            diagnostics_path = output / f"{result.inline_no}.diagnostics.json"
            save_boundary(record, csv_path)
            save_json(result.boundary.to_dict(), diagnostics_path)
            manifest.add_output(csv_path)
            manifest.add_output(diagnostics_path)
            entry["skipped"] = len(result.boundary.skipped)
            entry["rejected"] = len(result.boundary.rejected)
            if result.inline_no in truth:
                report = _evaluate_pair(record, load_boundary(truth[result.inline_no]), args.segments)
                entry["similarity_index"] = report["similarity_index"]
                entry["mean_segment_frechet"] = report["mean_segment_frechet"]
                entry["mean_absolute_deviation"] = report["mean_absolute_deviation"]
        else:
            exit_code = max(exit_code, result.error.exit_code)
        manifest.add_section(entry, result.seconds)

    manifest.timings["total"] = time.perf_counter() - started
    manifest.write(output)
    errors.write_section_failures(results)
    return exit_code


def cmd_evaluate(args: Namespace, errors: ErrorsOutput) -> int:
    tracked_path, truth_path = Path(args.tracked), Path(args.truth)
    if tracked_path.is_dir() != truth_path.is_dir():
        raise DataError("tracked and ground-truth boundaries must both be files or both be directories")

    if not tracked_path.is_dir():
        report = _evaluate_pair(load_boundary(tracked_path), load_boundary(truth_path), args.segments)
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    else:
        tracked, truth = find_boundaries(tracked_path), find_boundaries(truth_path)
        for inline in sorted(set(tracked) - set(truth)):
            logger.warning("inline %d has no ground truth, skipped", inline)
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(SIMILARITY_COLUMNS)
        for inline in sorted(set(tracked) & set(truth)):
            report = _evaluate_pair(load_boundary(tracked[inline]), load_boundary(truth[inline]), args.segments)
            writer.writerow([inline, repr(report["similarity_index"]), repr(report["mean_segment_frechet"])])
        text = buffer.getvalue()

    if args.output is None:
        sys.stdout.write(text)
    else:
        output = Path(args.output)
        if output.is_dir():
            output = output / SIMILARITY_FILE
        output.write_text(text)
    return EXIT_SUCCESS


def cmd_render(args: Namespace, errors: ErrorsOutput) -> int:
    colors = args.colors
    if colors and len(colors) != len(args.boundaries):
        raise UsageError(f"{len(args.boundaries)} boundaries were given with {len(colors)} colors")
    if not colors:
        colors = [COLORS[DEFAULT_PALETTE[i % len(DEFAULT_PALETTE)]] for i in range(len(args.boundaries))]

    volume = load_volume(args.volume)
    section = volume.section(args.inline)
    records = [load_boundary(path, section.shape) for path in args.boundaries]
    for path, record in zip(args.boundaries, records):
        if record.inline_no != args.inline:
            raise DataError(f"boundary {path} lies on inline {record.inline_no}, not on inline {args.inline}")

    image = grid_image(_normalized_or_blank(section).grid, args.colormap)
    for record, color in zip(records, colors):
        burn_curve(image, record.points, color)
    write_ppm(image, args.output)
    if args.svg is not None:
        write_svg(section.shape, [(record.points, color) for record, color in zip(records, colors)], args.svg)
    return EXIT_SUCCESS


def _build_parser() -> ArgumentParser:
    args_parser = _ArgumentParser(prog="salttrack")
    args_parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    args_parser.add_argument("-v", "--verbose", action="count", default=0,
                             help="log progress, repeat for per-point details")
    args_parser.add_argument("-q", "--quiet", action="store_true", help="log errors only")
    commands = args_parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    synth = commands.add_parser("synth", help="generate a synthetic volume with ground truth")
    synth.add_argument("output", help="volume directory to create")
    synth.add_argument("--truth", default=None, help="directory of ground-truth boundaries, "
                                                     "OUTPUT/truth by default")
    init_synth_args_parser(synth)
    synth.set_defaults(handler=cmd_synth)

    attribute = commands.add_parser("attribute", help="compute the GLCM contrast map of an inline")
    attribute.add_argument("volume", type=existing_path_type, help="volume directory")
    attribute.add_argument("--inline", required=True, type=int, help="inline number")
    attribute.add_argument("-o", "--output", required=True, help="contrast map directory to create")
    attribute.add_argument("--render", default=None, metavar="FILE", help="write the map as a PPM image")
    attribute.add_argument("--colormap", default="gray", type=dict_type({c: c for c in COLORMAPS}))
    init_glcm_args_parser(attribute)
    attribute.set_defaults(handler=cmd_attribute)

    track = commands.add_parser("track", help="track a labeled boundary through neighbouring inlines")
    track.add_argument("volume", type=existing_path_type, help="volume directory")
    track.add_argument("boundary", type=existing_path_type, help="labeled boundary of the reference inline")
    track.add_argument("-o", "--output", required=True, help="directory for tracked boundaries")
    track.add_argument("--reference", type=int, default=None,
                       help="reference inline, the inline of the labeled boundary by default")
    track.add_argument("--range", type=range_type, default=None, metavar="FIRST..LAST",
                       help="inlines to track, the whole volume by default")
    track.add_argument("-j", "--jobs", type=integer_type(1), default=None,
                       help="sections tracked concurrently, $SALTTRACK_JOBS or 1 by default")
    track.add_argument("--truth", type=existing_path_type, default=None,
                       help="directory of ground-truth boundaries to evaluate against")
    track.add_argument("--segments", type=integer_type(1), default=DEFAULT_SEGMENTS,
                       help="curve segments of the similarity index")
    init_tracker_args_parser(track)
    init_glcm_args_parser(track)
    track.set_defaults(handler=cmd_track)

    evaluate = commands.add_parser("evaluate", help="compare tracked boundaries with ground truth")
    evaluate.add_argument("tracked", type=existing_path_type, help="tracked boundary file or directory")
    evaluate.add_argument("truth", type=existing_path_type, help="ground-truth boundary file or directory")
    evaluate.add_argument("--segments", type=integer_type(1), default=DEFAULT_SEGMENTS,
                          help="curve segments of the similarity index")
    evaluate.add_argument("-o", "--output", default=None, help="report file, standard output by default")
    evaluate.set_defaults(handler=cmd_evaluate)

    render = commands.add_parser("render", help="draw boundaries over an inline section")
    render.add_argument("volume", type=existing_path_type, help="volume directory")
    render.add_argument("--inline", required=True, type=int, help="inline number")
    render.add_argument("-o", "--output", required=True, help="PPM image to write")
    render.add_argument("-b", "--boundary", dest="boundaries", action="append", default=[],
                        type=existing_path_type, help="boundary file, may be repeated")
    render.add_argument("-c", "--color", dest="colors", action="append", default=[], type=color_type,
                        help="color of the boundary at the same position, may be repeated")
    render.add_argument("--svg", default=None, metavar="FILE", help="also write the curves as SVG")
    render.add_argument("--colormap", default="gray", type=dict_type({c: c for c in COLORMAPS}))
    render.set_defaults(handler=cmd_render)
    return args_parser


def _configure_logging(args: Namespace) -> None:
    if args.quiet:
        level = logging.ERROR
    else:
        level = [logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)]
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    errors = ErrorsOutput(sys.stderr, use_color=sys.stderr.isatty())
    try:
        args = _build_parser().parse_args(argv)
    except UsageError as e:
        errors.write_usage_error(str(e))
        return EXIT_USAGE
    _configure_logging(args)

    try:
        return args.handler(args, errors)
    except (UsageError, ArgumentTypeError) as e:
        errors.write_usage_error(str(e))
        return EXIT_USAGE
    except SaltTrackError as e:
        errors.write_exception(e)
        return e.exit_code
    except DimensionError as e:
        errors.write_error(str(e))
        return EXIT_NUMERICAL
