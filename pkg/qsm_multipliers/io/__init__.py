from .artifact_store import ArtifactStore
from .slices import ImageFormat, Plane, SliceImage, render_slice
from .volume_file import read_volume, write_volume

__all__ = [
    "ArtifactStore",
    "ImageFormat",
    "Plane",
    "SliceImage",
    "read_volume",
    "render_slice",
    "write_volume",
]
