import numpy as np
import pytest

from qsm_multipliers.models import Ellipsoid, GridSpec, PerturbationSpec, PhantomSpec, RealVolume, Spike
from qsm_multipliers.models.errors import ArgumentError
from qsm_multipliers.phantoms import forward_model, perturb, rasterize_phantom
from qsm_multipliers.phantoms.forward import default_spike_amplitude
from qsm_multipliers.phantoms.rasterize import normalized_axis
from qsm_multipliers.spectral import forward_fft, frequency_grid
from qsm_multipliers.symbols import dipole_D

GRID = GridSpec.cubic(16)


def _random(seed: int) -> RealVolume:
    return RealVolume(grid=GRID, data=np.random.default_rng(seed).standard_normal(GRID.shape))


def test_impulse_response_is_dipole_symbol():
    data = np.zeros(GRID.shape)
    data[0, 0, 0] = 1.0
    psi = forward_model(RealVolume(grid=GRID, data=data))
    expected = dipole_D(frequency_grid(GRID).components)
    assert np.allclose(forward_fft(psi).data, expected, atol=1e-12)


def test_constant_gives_zero_field():
    psi = forward_model(RealVolume(grid=GRID, data=np.full(GRID.shape, 0.3)))
    assert np.max(np.abs(psi.data)) < 1e-14


def test_linearity_and_zero_mean():
    a, b = _random(0), _random(1)
    combined = forward_model(a.with_data(2.0 * a.data - 0.5 * b.data))
    separate = 2.0 * forward_model(a).data - 0.5 * forward_model(b).data
    assert np.allclose(combined.data, separate, atol=1e-12)
    assert abs(combined.data.mean()) < 1e-12


def test_field_inside_uniform_ball_vanishes():
    grid = GridSpec.cubic(64)
    radius = 0.5
    spec = PhantomSpec(
        ellipsoids=[Ellipsoid(center=(0, 0, 0), semi_axes=(radius,) * 3, amplitude=1.0)]
    )
    psi = forward_model(rasterize_phantom(spec, grid, supersample=2))
    x = normalized_axis(64)
    r = np.sqrt(x.reshape(-1, 1, 1) ** 2 + x.reshape(1, -1, 1) ** 2 + x.reshape(1, 1, -1) ** 2)
    interior = r <= radius - 3 * (2.0 / 64)
    assert np.max(np.abs(psi.data[interior])) < 0.05


def test_empty_perturbation_is_identity():
    psi = _random(2)
    assert perturb(psi, PerturbationSpec()) is psi


def test_single_spike():
    psi = _random(3)
    out = perturb(psi, PerturbationSpec(spikes=[Spike(index=(1, 2, 3), amplitude=4.0)]))
    changed = np.argwhere(out.data != psi.data)
    assert changed.tolist() == [[1, 2, 3]]
    assert out.data[1, 2, 3] - psi.data[1, 2, 3] == pytest.approx(4.0)


def test_spike_default_amplitude():
    psi = _random(4)
    out = perturb(psi, PerturbationSpec(spikes=[Spike(index=(0, 0, 0))]))
    assert out.data[0, 0, 0] - psi.data[0, 0, 0] == pytest.approx(default_spike_amplitude(psi))
    assert default_spike_amplitude(psi) == pytest.approx(5 * np.max(np.abs(psi.data)))


def test_spike_out_of_range():
    with pytest.raises(ArgumentError):
        perturb(_random(5), PerturbationSpec(spikes=[Spike(index=(16, 0, 0), amplitude=1.0)]))


def test_noise_is_reproducible():
    psi = RealVolume.zeros(GRID)
    spec = PerturbationSpec(noise_sigma=0.1, seed=42)
    first, second = perturb(psi, spec), perturb(psi, spec)
    assert np.array_equal(first.data, second.data)
    assert first.data.std() == pytest.approx(0.1, rel=0.1)
    other = perturb(psi, spec.model_copy(update={"seed": 43}))
    assert not np.array_equal(first.data, other.data)
