import numpy as np
import pytest

from qsm_multipliers.analysis import rmse_inside, streak_energy, support_mask_from_truth
from qsm_multipliers.analysis.masks import support_mask
from qsm_multipliers.analysis.metrics import compute_metrics, mean_offset_inside, volume_metrics
from qsm_multipliers.models import Ellipsoid, GridSpec, PhantomSpec, RealVolume, ReconConfig
from qsm_multipliers.models.analysis import MetricsReport, SupportMask
from qsm_multipliers.models.errors import ArgumentError
from qsm_multipliers.phantoms import default_phantom_spec, forward_model, rasterize_phantom
from qsm_multipliers.recon import reconstruct

GRID = GridSpec.cubic(16)


def _box_mask(grid: GridSpec = GRID) -> SupportMask:
    inside = np.zeros(grid.shape, dtype=bool)
    inside[4:12, 4:12, 4:12] = True
    return SupportMask(grid=grid, inside=inside)


def _truth() -> RealVolume:
    data = np.zeros(GRID.shape)
    data[4:12, 4:12, 4:12] = np.random.default_rng(0).uniform(0, 1, size=(8, 8, 8))
    return RealVolume(grid=GRID, data=data)


def test_rmse_of_truth_is_zero():
    truth = _truth()
    assert rmse_inside(truth, truth, _box_mask()) == 0.0


def test_rmse_ignores_constant_offset():
    truth = _truth()
    shifted = truth.with_data(truth.data + 0.25)
    assert rmse_inside(shifted, truth, _box_mask()) == pytest.approx(0.0, abs=1e-14)
    assert mean_offset_inside(shifted, truth, _box_mask()) == pytest.approx(0.25)


def test_rmse_of_unit_impulse():
    truth = _truth()
    mask = _box_mask()
    data = np.array(truth.data)
    data[6, 6, 6] += 1.0
    n = mask.voxel_count
    assert rmse_inside(truth.with_data(data), truth, mask) == pytest.approx(1 / np.sqrt(n), rel=1 / n)


def test_streak_energy():
    mask = _box_mask()
    inside_only = np.zeros(GRID.shape)
    inside_only[5, 5, 5] = 3.0
    assert streak_energy(RealVolume(grid=GRID, data=inside_only), mask) == 0.0
    outside = np.zeros(GRID.shape)
    outside[0, 0, 0] = 1.0
    assert streak_energy(RealVolume(grid=GRID, data=outside), mask) == 1.0


def test_streak_energy_is_homogeneous():
    rng = np.random.default_rng(1)
    v = RealVolume(grid=GRID, data=rng.standard_normal(GRID.shape))
    mask = _box_mask()
    assert streak_energy(v.with_data(-2.5 * v.data), mask) == pytest.approx(2.5 * streak_energy(v, mask))


def test_grid_mismatch():
    other = RealVolume.zeros(GridSpec.cubic(8))
    with pytest.raises(ArgumentError):
        rmse_inside(other, _truth(), _box_mask())


def test_support_mask_fills_cancelled_regions():
    spec = PhantomSpec(
        ellipsoids=[
            Ellipsoid(center=(0, 0, 0), semi_axes=(0.8, 0.8, 0.8), amplitude=1.0),
            Ellipsoid(center=(0, 0, 0), semi_axes=(0.3, 0.3, 0.3), amplitude=-1.0),
        ]
    )
    mask = support_mask(spec, GRID, dilation=0)
    assert mask.inside[8, 8, 8]
    assert not mask.inside[0, 0, 0]
    dilated = support_mask(spec, GRID, dilation=2)
    assert dilated.voxel_count > mask.voxel_count
    assert np.all(dilated.inside[mask.inside])


def test_negative_dilation():
    with pytest.raises(ArgumentError):
        support_mask_from_truth(_truth(), dilation=-1)


def test_metrics_report_validation():
    with pytest.raises(ValueError):
        MetricsReport(label="x", method="naive", rmse_inside=float("nan"), streak_energy=0.0)
    report = MetricsReport(
        label="x", method="naive", rmse_inside=0.1, streak_energy=1.0, cone_fraction=0.3, shell_fraction=0.1
    )
    assert report.cone_ratio == pytest.approx(3.0)


def test_spiked_naive_streaks_exceed_clean():
    grid = GridSpec.cubic(32)
    truth = rasterize_phantom(default_phantom_spec(), grid)
    mask = support_mask_from_truth(truth)
    psi = forward_model(truth)
    spiked = np.array(psi.data)
    # strong enough to dominate the lost mean, which also shows up outside the support
    spiked[16, 16, 16] += 100 * np.max(np.abs(psi.data))
    cfg = ReconConfig(method="naive")
    clean = compute_metrics(reconstruct(psi, cfg), truth, mask)
    noisy = compute_metrics(reconstruct(psi.with_data(spiked), cfg), truth, mask, apex=(16, 16, 16))
    assert noisy.streak_energy > 10 * clean.streak_energy
    assert noisy.streak_energy_chi2 is None
    assert noisy.shell_fraction > 0
    assert noisy.params["method"] == "naive"


def test_volume_metrics_without_config():
    truth = _truth()
    report = volume_metrics("truth", truth, truth, _box_mask(), apex=(8, 8, 8))
    assert report.method == "volume"
    assert report.rmse_inside == 0.0
    assert 0.0 <= report.cone_fraction <= 1.0
