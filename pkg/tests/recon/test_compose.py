import numpy as np
import pytest

from qsm_multipliers.models import GridSpec, RealVolume, ReconConfig
from qsm_multipliers.models.errors import ConfigError
from qsm_multipliers.phantoms import default_phantom_spec, forward_model, rasterize_phantom
from qsm_multipliers.recon import chain_multiplier, compose_pipeline
from qsm_multipliers.spectral import forward_fft, frequency_grid
from qsm_multipliers.symbols import halfwave_T, wave_p

GRID = GridSpec.cubic(16)


@pytest.fixture(scope="module")
def chi() -> RealVolume:
    return rasterize_phantom(default_phantom_spec(), GRID)


def test_empty_chain_is_identity(chi):
    assert np.allclose(compose_pipeline(chi, []).data, chi.data, atol=1e-14)


def test_laplacian_then_qinv_divides_by_D_off_cone(chi):
    cfg = ReconConfig(method="tkd-smooth")
    out = compose_pipeline(forward_model(chi), ["laplacian", "qinv"], cfg)
    p = np.broadcast_to(wave_p(frequency_grid(GRID).components), GRID.shape)
    off_guard = np.abs(p) > cfg.effective_guard
    recovered = forward_fft(out).data
    truth = forward_fft(chi).data
    assert np.allclose(recovered[off_guard], truth[off_guard], atol=1e-9 * np.abs(truth).max())
    assert np.allclose(recovered[~off_guard], 0.0, atol=1e-9)


def test_chain_is_order_free():
    cfg = ReconConfig(method="r-reg").resolved_for(GRID)
    a = chain_multiplier(GRID, ["P", "qinv", "R", "b"], cfg)
    b = chain_multiplier(GRID, ["b", "R", "qinv", "P"], cfg)
    assert np.allclose(a, b, rtol=1e-14, atol=0.0)


def test_t_power_vanishes_on_cone():
    cfg = ReconConfig(method="t-enhanced").resolved_for(GRID)
    product = chain_multiplier(GRID, ["T", "T"], cfg)
    xi = frequency_grid(GRID).components
    expected = np.broadcast_to(halfwave_T(xi, cfg.halfline) ** 2, GRID.shape)
    assert np.allclose(product, expected, rtol=1e-14)
    p = np.broadcast_to(wave_p(xi), GRID.shape)
    on_cone = np.abs(p) < 1e-12
    assert on_cone.sum() > 1
    assert np.max(np.abs(product[on_cone])) < 1e-12


def test_unknown_symbol_in_chain(chi):
    with pytest.raises(ConfigError):
        compose_pipeline(chi, ["laplacian", "wiener"])
