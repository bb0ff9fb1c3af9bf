from pathlib import Path

import numpy as np
import pytest

from qsm_multipliers.models import Ellipsoid, GridSpec, PhantomSpec
from qsm_multipliers.models.errors import ArgumentError, ConfigError
from qsm_multipliers.phantoms import default_phantom_spec, load_phantom_spec, rasterize_phantom
from qsm_multipliers.phantoms.rasterize import normalized_axis

GRID = GridSpec.cubic(16)


def _ball(center=(0.0, 0.0, 0.0), radius=0.5, amplitude=1.0) -> Ellipsoid:
    return Ellipsoid(center=center, semi_axes=(radius, radius, radius), amplitude=amplitude)


def test_normalized_axis_centers_origin():
    axis = normalized_axis(8)
    assert axis[4] == 0.0
    assert axis[0] == -1.0
    assert axis[1] - axis[0] == pytest.approx(0.25)


def test_single_ball():
    v = rasterize_phantom(PhantomSpec(ellipsoids=[_ball()]), GRID)
    x = normalized_axis(16)
    r2 = x.reshape(-1, 1, 1) ** 2 + x.reshape(1, -1, 1) ** 2 + x.reshape(1, 1, -1) ** 2
    assert np.all(v.data[r2 <= 0.2] == 1.0)
    assert np.all(v.data[r2 >= 0.3] == 0.0)
    assert set(np.unique(v.data)) <= {0.0, 1.0}


def test_overlapping_balls_add():
    spec = PhantomSpec(
        ellipsoids=[_ball(center=(-0.2, 0.0, 0.0)), _ball(center=(0.2, 0.0, 0.0), amplitude=-0.3)]
    )
    v = rasterize_phantom(spec, GRID)
    assert v.data[8, 8, 8] == pytest.approx(0.7)
    # x1 = -0.625 is only inside the first ball
    assert v.data[3, 8, 8] == pytest.approx(1.0)


def test_supersampling_averages_edges():
    spec = PhantomSpec(ellipsoids=[_ball(radius=0.45)])
    v = rasterize_phantom(spec, GRID, supersample=3)
    assert v.data[8, 8, 8] == pytest.approx(1.0)
    partial = (v.data > 0) & (v.data < 1)
    assert np.any(partial)


def test_rotation_moves_long_axis():
    along_x1 = Ellipsoid(center=(0, 0, 0), semi_axes=(0.8, 0.2, 0.2), amplitude=1.0)
    along_x2 = along_x1.model_copy(update={"rotation": (np.pi / 2, 0.0, 0.0)})
    a = rasterize_phantom(PhantomSpec(ellipsoids=[along_x1]), GRID).data
    b = rasterize_phantom(PhantomSpec(ellipsoids=[along_x2]), GRID).data
    assert a[2, 8, 8] == 1.0 and a[8, 2, 8] == 0.0
    assert b[8, 2, 8] == 1.0 and b[2, 8, 8] == 0.0


def test_empty_spec_rejected():
    with pytest.raises(ArgumentError):
        rasterize_phantom(PhantomSpec(), GRID)


def test_default_phantom():
    spec = default_phantom_spec()
    assert len(spec.ellipsoids) == 10
    v = rasterize_phantom(spec, GridSpec.cubic(32))
    assert v.data.max() == pytest.approx(1.0)
    assert v.data.min() > -1e-12
    # skull minus the two ventricles, where the amplitudes cancel
    inside = np.count_nonzero(np.abs(v.data) > 1e-9)
    fraction = inside / v.grid.size
    expected = np.pi / 6 * (0.69 * 0.92 * 0.81 - 0.11 * 0.31 * 0.22 - 0.16 * 0.41 * 0.28)
    assert fraction == pytest.approx(expected, rel=0.1)


def test_phantom_file_round_trip(tmp_path: Path):
    path = tmp_path / "ball.toml"
    path.write_text(
        'name = "ball"\n[[ellipsoids]]\namplitude = 0.5\ncenter = [0, 0, 0]\nsemi_axes = [0.4, 0.4, 0.4]\n'
    )
    spec = load_phantom_spec(path)
    assert spec.name == "ball"
    assert spec.ellipsoids[0].amplitude == 0.5


def test_missing_phantom_file(tmp_path: Path):
    with pytest.raises(ConfigError) as err:
        load_phantom_spec(tmp_path / "missing.toml")
    assert "missing.toml" in str(err.value)


def test_invalid_phantom_file(tmp_path: Path):
    path = tmp_path / "bad.toml"
    path.write_text("[[ellipsoids]]\namplitude = 1.0\ncenter = [0, 0, 0]\nsemi_axes = [0.4, -0.4, 0.4]\n")
    with pytest.raises(ConfigError):
        load_phantom_spec(path)
