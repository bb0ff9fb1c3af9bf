import io
import logging
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, NonNegativeInt, model_validator

from qsm_multipliers.models.arrays import ReadOnlyArray
from qsm_multipliers.models.errors import ArgumentError, ConfigError
from qsm_multipliers.models.slices import FIXED_AXIS, DisplayWindow, ImageFormat, Plane
from qsm_multipliers.models.volume import RealVolume

default_logger = logging.getLogger(__name__)

# fractions this many ulps from one half round up, so 0.35 in [-0.3, 1] is a tie
TIE_ULPS = 16


class SliceImage(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    plane: Plane
    coordinate: NonNegativeInt
    window: DisplayWindow
    pixels: ReadOnlyArray

    @model_validator(mode="after")
    def _check(self):
        if self.pixels.dtype != np.uint8 or self.pixels.ndim != 2:
            raise ValueError("pixels must be a 2-D uint8 raster")
        return self

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    def to_pgm(self) -> bytes:
        header = f"P5\n{self.width} {self.height}\n255\n".encode("ascii")
        return header + np.ascontiguousarray(self.pixels).tobytes()

    def to_png(self) -> bytes:
        try:
            from PIL import Image
        except ImportError as e:
            raise ConfigError("PNG output needs Pillow, install the 'png' extra") from e
        buffer = io.BytesIO()
        Image.fromarray(np.ascontiguousarray(self.pixels)).save(buffer, format="PNG")
        return buffer.getvalue()

    def encode(self, fmt: ImageFormat = ImageFormat.pgm) -> bytes:
        match fmt:
            case ImageFormat.pgm:
                return self.to_pgm()
            case ImageFormat.png:
                return self.to_png()


def window_to_pixels(values: np.ndarray, window: Tuple[float, float]) -> np.ndarray:
    """Linear windowing with clamping and half-up rounding to 0..255."""
    low, high = window
    if not low < high:
        raise ArgumentError(f"window low {low} must be below high {high}")
    scaled = (np.clip(values, low, high) - low) * 255.0 / (high - low)
    whole = np.floor(scaled)
    frac = scaled - whole
    tie = np.isclose(frac, 0.5, rtol=0.0, atol=TIE_ULPS * np.spacing(np.maximum(scaled, 1.0)))
    return (whole + ((frac > 0.5) | tie)).astype(np.uint8)


def render_slice(
    v: RealVolume,
    plane: Plane = Plane.sagittal,
    coord: Optional[int] = None,
    window: Tuple[float, float] = (-0.3, 1.0),
) -> SliceImage:
    """Cut a plane out of a volume; ``coord`` defaults to the center index."""
    plane = Plane(plane)
    axis = FIXED_AXIS[plane]
    n = v.grid.shape[axis]
    if coord is None:
        coord = n // 2
    if not 0 <= coord < n:
        raise ArgumentError(f"{plane.value} coordinate {coord} out of range [0, {n})")

    section = np.take(v.data, coord, axis=axis)
    # rows run along x3 from top (+) to bottom, except axial where x2 does
    image = section.T[::-1]
    pixels = window_to_pixels(image, window)
    default_logger.debug(f"rendered {plane.value} slice {coord} with window {window}")
    return SliceImage(plane=plane, coordinate=coord, window=tuple(window), pixels=pixels)
