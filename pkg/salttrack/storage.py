import csv
import json
from pathlib import Path
from typing import Union, Optional, Tuple, Dict, Any, List

import numpy as np

from .errors import FormatError, DataError
from .volume import VolumeHeader, SeismicVolume, ValueEncoding, BoundaryRecord

PathLike = Union[str, Path]

HEADER_FILE = "header.json"
SAMPLES_FILE = "samples.f32"
BOUNDARY_COLUMNS = ["inline", "crossline", "time"]
SAMPLE_DTYPE = np.dtype("<f4")

_HEADER_KEYS = ["inline_start", "inline_count", "crossline_start", "crossline_count",
                "time_start_ms", "time_step_ms", "time_count"]


def _read_json(path: Path) -> Dict[str, Any]:
    try:
        with open(path) as file:
            return json.load(file)
    except IOError as e:
        raise DataError(f"cannot open a file: {e}")
    except ValueError as e:
        raise FormatError(f"malformed header: {e}", str(path))


def _read_samples(path: Path, expected: int) -> np.ndarray:
    try:
        raw = path.read_bytes()
    except IOError as e:
        raise DataError(f"cannot open a file: {e}")
    if len(raw) != expected * SAMPLE_DTYPE.itemsize:
        raise DataError(f"sample-count mismatch: expected {expected} samples "
                        f"({expected * SAMPLE_DTYPE.itemsize} bytes), file has {len(raw)} bytes")
    return np.frombuffer(raw, dtype=SAMPLE_DTYPE).astype(np.float32)


def _parse_encoding(header: Dict[str, Any], path: Path) -> ValueEncoding:
    try:
        return ValueEncoding(header.get("value_encoding", ValueEncoding.FLOAT32_LE.value))
    except ValueError:
        raise FormatError(f"malformed header: unsupported value encoding "
                          f"'{header['value_encoding']}'", str(path))


def load_volume(path: PathLike) -> SeismicVolume:
    path = Path(path)
    header_path = path / HEADER_FILE
    raw = _read_json(header_path)
    if not isinstance(raw, dict) or raw.get("kind", "volume") != "volume":
        raise FormatError("malformed header: not a volume header", str(header_path))

    missing = [key for key in _HEADER_KEYS if key not in raw]
    if missing:
        raise FormatError(f"malformed header: missing keys {', '.join(missing)}", str(header_path))
    values = {}
    for key in _HEADER_KEYS:
        if not isinstance(raw[key], int) or isinstance(raw[key], bool):
            raise FormatError(f"malformed header: '{key}' must be an integer", str(header_path))
        values[key] = raw[key]

    header = VolumeHeader(value_encoding=_parse_encoding(raw, header_path), **values)
    samples = _read_samples(path / SAMPLES_FILE, header.sample_count)
    return SeismicVolume(header, samples)


def save_volume(volume: SeismicVolume, path: PathLike) -> None:
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    header = {key: getattr(volume.header, key) for key in _HEADER_KEYS}
    header["value_encoding"] = volume.header.value_encoding.value
    with open(path / HEADER_FILE, "w") as file:
        json.dump(header, file, indent=2)
        file.write("\n")
    (path / SAMPLES_FILE).write_bytes(volume.samples.astype(SAMPLE_DTYPE).tobytes())


def save_contrast_map(grid: np.ndarray, inline_no: int, path: PathLike, normalized: bool = True) -> None:
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    header = {
        "kind": "contrast",
        "inline_no": inline_no,
        "crossline_count": int(grid.shape[0]),
        "time_count": int(grid.shape[1]),
        "normalized": normalized,
        "value_encoding": ValueEncoding.FLOAT32_LE.value
    }
    with open(path / HEADER_FILE, "w") as file:
        json.dump(header, file, indent=2)
        file.write("\n")
    (path / SAMPLES_FILE).write_bytes(np.asarray(grid).astype(SAMPLE_DTYPE).tobytes())


def load_contrast_map(path: PathLike) -> Tuple[int, np.ndarray, bool]:
    path = Path(path)
    header_path = path / HEADER_FILE
    raw = _read_json(header_path)
    if not isinstance(raw, dict) or raw.get("kind") != "contrast":
        raise FormatError("malformed header: not a contrast map header", str(header_path))
    try:
        shape = int(raw["crossline_count"]), int(raw["time_count"])
        inline_no = int(raw["inline_no"])
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"malformed header: {e}", str(header_path))
    if min(shape) < 1:
        raise DataError("empty dimension in contrast map header")
    _parse_encoding(raw, header_path)
    samples = _read_samples(path / SAMPLES_FILE, shape[0] * shape[1])
    return inline_no, samples.reshape(shape).astype(np.float64), bool(raw.get("normalized", True))


def load_boundary(path: PathLike, section_shape: Optional[Tuple[int, int]] = None) -> BoundaryRecord:
    path = Path(path)
    try:
        with open(path, newline="") as file:
            rows = list(csv.reader(file))
    except IOError as e:
        raise DataError(f"cannot open a file: {e}")

    if len(rows) == 0 or [cell.strip() for cell in rows[0]] != BOUNDARY_COLUMNS:
        raise FormatError(f"boundary file must start with the header "
                          f"'{','.join(BOUNDARY_COLUMNS)}'", str(path), 1)

    inline_no: Optional[int] = None
    points: List[Tuple[int, int]] = []
    for line_number, row in enumerate(rows[1:], start=2):
        if len(row) == 0:
            continue
        if len(row) != 3:
            raise FormatError(f"expected 3 fields, found {len(row)}", str(path), line_number)
        try:
            inline, crossline, time = (int(cell.strip()) for cell in row)
        except ValueError:
            raise FormatError(f"non-integer field in '{','.join(row)}'", str(path), line_number)
        if inline_no is None:
            inline_no = inline
        elif inline != inline_no:
            raise FormatError(f"mixed inlines {inline_no} and {inline} in one boundary file",
                              str(path), line_number)
        points.append((crossline, time))

    if inline_no is None:
        raise DataError(f"boundary file {path} has no points")
    record = BoundaryRecord(inline_no, points)
    if section_shape is not None:
        record.check_bounds(section_shape)
    return record


def save_boundary(record: BoundaryRecord, path: PathLike) -> None:
    with open(path, "w", newline="") as file:
        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(BOUNDARY_COLUMNS)
        for x, y in record.points:
            writer.writerow([record.inline_no, x, y])


def save_json(data: Dict[str, Any], path: PathLike) -> None:
    with open(path, "w") as file:
        json.dump(data, file, indent=2, sort_keys=True)
        file.write("\n")


def boundary_file_name(inline_no: int) -> str:
    return f"{inline_no}.csv"


def find_boundaries(path: PathLike) -> Dict[int, Path]:
    """Boundary files of a directory keyed by the inline number in their names."""
    path = Path(path)
    if not path.is_dir():
        raise DataError(f"not a directory: {path}")
    result = {}
    for file in path.glob("*.csv"):
        try:
            result[int(file.stem)] = file
        except ValueError:
            continue
    return result
