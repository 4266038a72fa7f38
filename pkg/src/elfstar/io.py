"""Reading and writing value files: raw little-endian float64 and CSV."""

import csv
from pathlib import Path

import numpy as np

from .errors import ElfError


class InputError(ElfError, ValueError):
    """Input data could not be parsed."""


def read_f64(path) -> np.ndarray:
    data = Path(path).read_bytes()
    if len(data) % 8:
        raise InputError(f"{path}: size {len(data)} is not a multiple of 8")
    return np.frombuffer(data, dtype="<f8").astype(np.float64)


def write_f64(path, values) -> None:
    Path(path).write_bytes(np.asarray(values, dtype="<f8").tobytes())


def read_csv(path, column=0, skip_bad=False) -> np.ndarray:
    """Parse one CSV column as floats.

    ``column`` is a 0-based index or a header name.  A first row whose cell
    does not parse is taken as a header; later bad cells raise
    :class:`InputError` unless ``skip_bad`` is set.
    """
    values = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        idx = None
        if isinstance(column, int) or str(column).lstrip("-").isdigit():
            idx = int(column)
        for lineno, row in enumerate(reader, 1):
            if not row:
                continue
            if idx is None:
                try:
                    idx = row.index(column)
                except ValueError:
                    raise InputError(f"{path}: no column named {column!r}") from None
                continue
            try:
                cell = row[idx]
            except IndexError:
                if skip_bad:
                    continue
                raise InputError(f"{path}:{lineno}: row has no column {idx}") from None
            try:
                values.append(float(cell))
            except ValueError:
                if lineno == 1 or skip_bad:
                    continue
                raise InputError(f"{path}:{lineno}: cannot parse {cell!r} as a float") from None
    return np.array(values, dtype=np.float64)


def write_csv(path, values) -> None:
    with open(path, "w") as fh:
        for v in np.asarray(values, dtype=np.float64).tolist():
            fh.write(repr(v) + "\n")


def read_values(path, column=0, skip_bad=False) -> np.ndarray:
    path = Path(path)
    if path.suffix.lower() in (".csv", ".txt"):
        return read_csv(path, column, skip_bad)
    return read_f64(path)
