import numpy as np
import pytest

from qsm_multipliers.io import Plane, render_slice
from qsm_multipliers.io.slices import ImageFormat, window_to_pixels
from qsm_multipliers.models import GridSpec, RealVolume
from qsm_multipliers.models.errors import ArgumentError

GRID = GridSpec(n1=8, n2=10, n3=12)


def _ramp() -> RealVolume:
    data = np.broadcast_to(np.arange(12, dtype=float).reshape(1, 1, -1), GRID.shape)
    return RealVolume(grid=GRID, data=data)


@pytest.mark.parametrize(
    "value, expected",
    [(-0.3, 0), (1.0, 255), (0.35, 128), (-5.0, 0), (7.0, 255), (0.0, 59)],
)
def test_window_to_pixels(value, expected):
    assert window_to_pixels(np.array([value]), (-0.3, 1.0))[0] == expected


def test_window_is_linear_inside():
    values = np.linspace(0.0, 1.0, 11)
    pixels = window_to_pixels(values, (0.0, 1.0)).astype(int)
    assert pixels.tolist() == [0, 26, 51, 77, 102, 128, 153, 179, 204, 230, 255]


def test_bad_window():
    with pytest.raises(ArgumentError):
        window_to_pixels(np.zeros(1), (1.0, 1.0))


@pytest.mark.parametrize(
    "plane, shape",
    [(Plane.sagittal, (12, 8)), (Plane.coronal, (12, 10)), (Plane.axial, (10, 8))],
)
def test_slice_shapes(plane, shape):
    image = render_slice(_ramp(), plane, window=(0.0, 11.0))
    assert image.pixels.shape == shape
    assert (image.height, image.width) == shape


def test_sagittal_puts_x3_up():
    image = render_slice(_ramp(), "sagittal", window=(0.0, 11.0))
    assert image.coordinate == 5
    assert np.all(image.pixels[0] == 255)
    assert np.all(image.pixels[-1] == 0)


def test_coordinate_out_of_range():
    with pytest.raises(ArgumentError):
        render_slice(_ramp(), "axial", coord=12)


def test_pgm_encoding():
    image = render_slice(_ramp(), "coronal", coord=0, window=(0.0, 11.0))
    raw = image.encode(ImageFormat.pgm)
    header = b"P5\n10 12\n255\n"
    assert raw.startswith(header)
    assert len(raw) == len(header) + 120


def test_png_encoding():
    pytest.importorskip("PIL")
    raw = render_slice(_ramp(), "axial").to_png()
    assert raw.startswith(b"\x89PNG")


@pytest.mark.parametrize(
    "value, expected",
    [(127.5, 128), (127.5 - 1e-10, 127), (127.5 + 1e-10, 128), (0.5 - 1e-10, 0), (254.5, 255)],
)
def test_half_up_rounding_is_exact(value, expected):
    assert window_to_pixels(np.array([value]), (0.0, 255.0))[0] == expected
