"""QSMV1 volume files.

A short ASCII header followed by the raw payload::

    QSMV1
    dims <n1> <n2> <n3>
    spacing <d1> <d2> <d3>
    kind real64
    end
    <8 * n1 * n2 * n3 bytes of little-endian float64, x1 fastest>
"""

import logging
from pathlib import Path
from typing import BinaryIO, List, Tuple

import numpy as np
from pydantic import ValidationError

from qsm_multipliers.models.errors import (
    NumericError,
    TruncatedVolumeError,
    VolumeFormatError,
    VolumeIOError,
)
from qsm_multipliers.models.grid import GridSpec
from qsm_multipliers.models.volume import RealVolume

default_logger = logging.getLogger(__name__)

MAGIC = b"QSMV1"
KIND = "real64"
PAYLOAD_DTYPE = np.dtype("<f8")
# longest header line we accept before calling the file malformed
MAX_LINE = 256


def encode_header(grid: GridSpec) -> bytes:
    lines = [
        MAGIC.decode("ascii"),
        "dims " + " ".join(str(n) for n in grid.shape),
        "spacing " + " ".join(repr(float(d)) for d in grid.spacing),
        f"kind {KIND}",
        "end",
    ]
    return ("\n".join(lines) + "\n").encode("ascii")


def encode_volume(v: RealVolume) -> bytes:
    payload = np.asarray(v.data, dtype=PAYLOAD_DTYPE).ravel(order="F").tobytes()
    return encode_header(v.grid) + payload


def write_volume(path: Path, v: RealVolume) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(encode_volume(v))
    except OSError as e:
        raise VolumeIOError(f"could not write volume to {path}: {e}") from e
    default_logger.debug(f"wrote {v.grid.describe()} volume to {path}")
    return path


def _read_line(f: BinaryIO, offset: int) -> str:
    raw = f.readline(MAX_LINE)
    if not raw.endswith(b"\n"):
        raise TruncatedVolumeError("header ends early or line is too long", offset + len(raw))
    try:
        return raw[:-1].decode("ascii")
    except UnicodeDecodeError:
        raise VolumeFormatError("header is not ASCII", offset) from None


def _fields(line: str, key: str, count: int, offset: int) -> List[str]:
    parts = line.split()
    if len(parts) != count + 1 or parts[0] != key:
        raise VolumeFormatError(f"expected '{key}' with {count} values, got '{line}'", offset)
    return parts[1:]


def read_header(f: BinaryIO) -> Tuple[GridSpec, int]:
    """Parse the header; returns the grid and the payload offset."""
    magic = f.readline(MAX_LINE)
    if magic.rstrip(b"\n") != MAGIC:
        raise VolumeFormatError(f"bad magic {magic[:8]!r}, expected {MAGIC!r}", 0)
    offset = len(magic)

    dims_offset = offset
    dims_line = _read_line(f, offset)
    offset += len(dims_line) + 1
    spacing_offset = offset
    spacing_line = _read_line(f, offset)
    offset += len(spacing_line) + 1
    kind_offset = offset
    kind_line = _read_line(f, offset)
    offset += len(kind_line) + 1
    end_offset = offset
    end_line = _read_line(f, offset)
    offset += len(end_line) + 1

    try:
        dims = [int(x) for x in _fields(dims_line, "dims", 3, dims_offset)]
    except ValueError as e:
        raise VolumeFormatError(f"bad dims line '{dims_line}'", dims_offset) from e
    try:
        spacing = [float(x) for x in _fields(spacing_line, "spacing", 3, spacing_offset)]
    except ValueError as e:
        raise VolumeFormatError(f"bad spacing line '{spacing_line}'", spacing_offset) from e
    (kind,) = _fields(kind_line, "kind", 1, kind_offset)
    if kind != KIND:
        raise VolumeFormatError(f"unsupported value kind '{kind}'", kind_offset)
    if end_line != "end":
        raise VolumeFormatError(f"expected 'end', got '{end_line}'", end_offset)

    try:
        grid = GridSpec(
            n1=dims[0], n2=dims[1], n3=dims[2],
            delta1=spacing[0], delta2=spacing[1], delta3=spacing[2],
        )
    except ValidationError as e:
        raise VolumeFormatError(f"header describes an invalid grid: {e}", dims_offset) from e
    return grid, offset


def read_volume(path: Path) -> RealVolume:
    path = Path(path)
    try:
        with open(path, "rb") as f:
            grid, offset = read_header(f)
            expected = grid.size * PAYLOAD_DTYPE.itemsize
            payload = f.read(expected + 1)
    except OSError as e:
        raise VolumeIOError(f"could not read volume {path}: {e}") from e

    if len(payload) < expected:
        raise TruncatedVolumeError(
            f"payload has {len(payload)} of {expected} bytes", offset + len(payload)
        )
    if len(payload) > expected:
        raise VolumeFormatError("trailing bytes after payload", offset + expected)

    data = np.frombuffer(payload, dtype=PAYLOAD_DTYPE).reshape(grid.shape, order="F")
    try:
        return RealVolume(grid=grid, data=data)
    except NumericError as e:
        raise VolumeFormatError(f"payload holds non-finite values: {e}", offset) from e
