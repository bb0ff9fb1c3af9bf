from enum import Enum
from typing import Annotated, Tuple

from pydantic import AfterValidator


class Plane(str, Enum):
    sagittal = "sagittal"
    coronal = "coronal"
    axial = "axial"


# axis held fixed by each plane; x3 (the field direction) runs up the image
FIXED_AXIS = {Plane.coronal: 0, Plane.sagittal: 1, Plane.axial: 2}


class ImageFormat(str, Enum):
    pgm = "pgm"
    png = "png"


def _require_ordered(window: Tuple[float, float]) -> Tuple[float, float]:
    low, high = window
    if not low < high:
        raise ValueError(f"window low {low} must be below high {high}")
    return window


DisplayWindow = Annotated[Tuple[float, float], AfterValidator(_require_ordered)]
