"""Feature-matrix file formats: CSV and the FBIN binary layout.

CSV holds one datapoint per row in collection order; a single non-numeric
first line is treated as a header. FBIN is magic "NIID", a version byte,
row and column counts as little-endian uint64, then row-major
little-endian float32 values. All writes go through a temp file and an
atomic rename.
"""

from __future__ import annotations

import os
import struct
import tempfile
from pathlib import Path

import numpy as np

from .knn import validate_matrix

FORMATS = ("csv", "fbin")

_MAGIC = b"NIID"
_VERSION = 1
_HEADER = struct.Struct("<4sBQQ")


class MatrixFormatError(ValueError):
    """The file exists but does not hold a valid feature matrix."""


def load_matrix(path, fmt: str) -> np.ndarray:
    """Read a feature matrix; returns a float64 (N, F) array."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    raw = _read_csv(path) if fmt == "csv" else _read_fbin(path)
    if raw.shape[0] == 0:
        raise MatrixFormatError(f"{path}: empty dataset")
    try:
        return validate_matrix(raw)
    except ValueError as exc:
        raise MatrixFormatError(f"{path}: {exc}") from None


def write_matrix(path, data, fmt: str) -> None:
    """Write a feature matrix atomically (temp file + rename)."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    arr = validate_matrix(data)
    if fmt == "csv":
        lines = "\n".join(",".join(repr(float(v)) for v in row) for row in arr)
        atomic_write_bytes(path, (lines + "\n").encode("ascii"))
    else:
        n, dims = arr.shape
        header = _HEADER.pack(_MAGIC, _VERSION, n, dims)
        atomic_write_bytes(path, header + arr.astype("<f4").tobytes())


def atomic_write_bytes(path, payload: bytes) -> None:
    """Write payload to path so readers never observe a partial file."""
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or Path("."), prefix=f".{target.name}.")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp, target)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def atomic_write_text(path, text: str) -> None:
    atomic_write_bytes(path, text.encode("utf-8"))


def _looks_numeric(line: str) -> bool:
    cells = line.strip().split(",")
    try:
        [float(c) for c in cells]
    except ValueError:
        return False
    return True


def _read_csv(path) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        first = fh.readline()
    if first.strip() == "":
        return np.empty((0, 0))
    skiprows = 0 if _looks_numeric(first) else 1
    try:
        return np.loadtxt(path, delimiter=",", skiprows=skiprows, ndmin=2, dtype=np.float64)
    except ValueError as exc:
        raise MatrixFormatError(f"{path}: not a numeric CSV matrix ({exc})") from None


def _read_fbin(path) -> np.ndarray:
    blob = Path(path).read_bytes()
    if len(blob) < _HEADER.size:
        raise MatrixFormatError(f"{path}: file too short for an FBIN header")
    magic, version, n, dims = _HEADER.unpack_from(blob)
    if magic != _MAGIC:
        raise MatrixFormatError(f"{path}: bad magic {magic!r}, expected {_MAGIC!r}")
    if version != _VERSION:
        raise MatrixFormatError(f"{path}: unsupported FBIN version {version}")
    if n == 0:
        raise MatrixFormatError(f"{path}: empty dataset")
    if dims == 0:
        raise MatrixFormatError(f"{path}: zero feature dimensions")
    expected = _HEADER.size + n * dims * 4
    if len(blob) != expected:
        raise MatrixFormatError(f"{path}: expected {expected} bytes for {n}x{dims} floats, got {len(blob)}")
    values = np.frombuffer(blob, dtype="<f4", offset=_HEADER.size, count=n * dims)
    return values.reshape(n, dims).astype(np.float64)
