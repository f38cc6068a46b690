import os
import re
from argparse import ArgumentTypeError
from pathlib import Path
from typing import Dict, TypeVar, Tuple, Optional, Callable

T = TypeVar("T")

COLORS: Dict[str, Tuple[int, int, int]] = {
    "red": (255, 0, 0),
    "green": (0, 200, 0),
    "blue": (0, 90, 255),
    "yellow": (255, 220, 0),
    "cyan": (0, 220, 220),
    "magenta": (230, 0, 230),
    "white": (255, 255, 255),
    "black": (0, 0, 0)
}

JOBS_VARIABLE = "SALTTRACK_JOBS"


def integer_type(min_value: int):
    def type(value: str):
        try:
            val = int(value)
            if val < min_value:
                raise ArgumentTypeError(f"the minimum value is {min_value}")
            return val
        except ValueError:
            raise ArgumentTypeError(f"invalid integer value: '{value}'")
    return type


def odd_integer_type(min_value: int):
    integer = integer_type(min_value)

    def type(value: str):
        val = integer(value)
        if val % 2 == 0:
            raise ArgumentTypeError(f"an odd number is required, got {val}")
        return val
    return type


def float_type(min_value: Optional[float] = None, max_value: Optional[float] = None,
               exclusive: bool = False):
    def type(value: str):
        try:
            val = float(value)
        except ValueError:
            raise ArgumentTypeError(f"invalid number: '{value}'")
        if min_value is not None and (val < min_value or (exclusive and val == min_value)):
            raise ArgumentTypeError(f"the value must be {'above' if exclusive else 'at least'} {min_value}")
        if max_value is not None and (val > max_value or (exclusive and val == max_value)):
            raise ArgumentTypeError(f"the value must be {'below' if exclusive else 'at most'} {max_value}")
        return val
    return type


def dict_type(dictionary: Dict[str, T]):
    def type(value: str) -> T:
        if value in dictionary:
            return dictionary[value]
        else:
            keys = list(dictionary.keys())
            values = ", ".join(f"'{x}'" for x in keys[:-1]) + f" or '{keys[-1]}'"
            raise ArgumentTypeError(f"unknown value: '{value}'; expected either {values}")
    return type


RANGE_PATTERN = re.compile(r"^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$")


def range_type(value: str) -> range:
    """Inclusive ``A..B`` range of inline numbers."""
    match = RANGE_PATTERN.match(value)
    if match is None:
        raise ArgumentTypeError(f"invalid range: '{value}'; expected FIRST..LAST")
    first, last = int(match.group(1)), int(match.group(2))
    if last < first:
        raise ArgumentTypeError(f"empty range: {first}..{last}")
    return range(first, last + 1)


def dims_type(count: int, min_value: int = 1, element: Callable[[str], int] = None):
    """``count`` integers separated by ``x`` or commas, such as ``31x31`` or ``15,15,5``."""
    element = element if element is not None else integer_type(min_value)

    def type(value: str) -> Tuple[int, ...]:
        parts = [part for part in re.split(r"[x,]", value.strip()) if part != ""]
        if len(parts) != count:
            raise ArgumentTypeError(f"expected {count} values, got '{value}'")
        return tuple(element(part) for part in parts)
    return type


def int_list_type(element: Callable[[str], int]):
    def type(value: str) -> Tuple[int, ...]:
        parts = [part.strip() for part in value.split(",") if part.strip() != ""]
        if not parts:
            raise ArgumentTypeError("at least one value is required")
        return tuple(element(part) for part in parts)
    return type


def color_type(value: str) -> Tuple[int, int, int]:
    value = value.strip().lower()
    if value in COLORS:
        return COLORS[value]
    match = re.match(r"^#([0-9a-f]{6})$", value)
    if match is None:
        names = ", ".join(COLORS.keys())
        raise ArgumentTypeError(f"unknown color: '{value}'; expected one of {names} or #RRGGBB")
    code = match.group(1)
    return int(code[0:2], 16), int(code[2:4], 16), int(code[4:6], 16)


def existing_path_type(value: str) -> Path:
    path = Path(value)
    if not path.exists():
        raise ArgumentTypeError(f"cannot open a file: no such file or directory: '{value}'")
    return path


def default_jobs() -> int:
    value = os.environ.get(JOBS_VARIABLE)
    if value is None or value.strip() == "":
        return 1
    try:
        return integer_type(1)(value)
    except ArgumentTypeError as e:
        raise ArgumentTypeError(f"{JOBS_VARIABLE}: {e}")
