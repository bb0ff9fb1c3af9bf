import numpy as np
import pytest

from qsm_multipliers.models import GridSpec, RealVolume, SpectralVolume
from qsm_multipliers.models.errors import (
    ArgumentError,
    NumericError,
    SymbolDomainError,
    SymmetryViolationError,
)
from qsm_multipliers.spectral import (
    apply_multiplier,
    forward_fft,
    frequency_at,
    frequency_grid,
    inverse_fft,
)
from qsm_multipliers.spectral.core import inverse_fft_with_residue

GRID = GridSpec.cubic(8)


def _impulse(grid: GridSpec = GRID) -> RealVolume:
    data = np.zeros(grid.shape)
    data[0, 0, 0] = 1.0
    return RealVolume(grid=grid, data=data)


@pytest.mark.parametrize(
    "index, expected",
    [
        ((0, 0, 0), (0.0, 0.0, 0.0)),
        ((1, 0, 0), (np.pi / 4, 0.0, 0.0)),
        ((4, 0, 0), (-np.pi, 0.0, 0.0)),
        ((0, 7, 2), (0.0, -np.pi / 4, np.pi / 2)),
    ],
)
def test_frequency_at(index, expected):
    assert frequency_at(GRID, index) == pytest.approx(np.array(expected))


def test_frequency_at_honours_spacing():
    grid = GridSpec(n1=8, n2=8, n3=8, delta3=0.5)
    assert frequency_at(grid, (0, 0, 1))[2] == pytest.approx(np.pi / 2)


@pytest.mark.parametrize("index", [(8, 0, 0), (0, -1, 0), (0, 0)])
def test_frequency_at_out_of_range(index):
    with pytest.raises(ArgumentError):
        frequency_at(GRID, index)


def test_frequency_grid_shapes():
    freqs = frequency_grid(GridSpec(n1=4, n2=6, n3=8))
    assert freqs.xi1.shape == (4, 1, 1)
    assert freqs.xi2.shape == (1, 6, 1)
    assert freqs.xi3.shape == (1, 1, 8)
    assert freqs.norm_squared.shape == (4, 6, 8)


def test_constant_volume_spectrum():
    v = RealVolume(grid=GRID, data=np.full(GRID.shape, 2.5))
    s = forward_fft(v).data
    assert s[0, 0, 0] == pytest.approx(2.5 * GRID.size)
    rest = s.copy()
    rest[0, 0, 0] = 0.0
    assert np.max(np.abs(rest)) < 1e-9


def test_impulse_has_flat_spectrum():
    s = forward_fft(_impulse()).data
    assert np.allclose(s, 1.0)


def test_flat_spectrum_inverts_to_impulse():
    v = inverse_fft(SpectralVolume(grid=GRID, data=np.ones(GRID.shape)))
    assert np.allclose(v.data, _impulse().data)


def test_round_trip_and_parseval():
    rng = np.random.default_rng(0)
    v = RealVolume(grid=GRID, data=rng.standard_normal(GRID.shape))
    s = forward_fft(v)
    back, residue = inverse_fft_with_residue(s)
    assert residue < 1e-12
    assert np.allclose(back.data, v.data, atol=1e-12)
    assert np.sum(np.abs(s.data) ** 2) == pytest.approx(GRID.size * np.sum(v.data**2))


def test_symmetrized_spectrum_is_real():
    rng = np.random.default_rng(1)
    raw = rng.standard_normal(GRID.shape) + 1j * rng.standard_normal(GRID.shape)
    flipped = np.conj(np.roll(np.flip(raw), 1, axis=(0, 1, 2)))
    _, residue = inverse_fft_with_residue(SpectralVolume(grid=GRID, data=raw + flipped))
    assert residue < 1e-12


def test_non_hermitian_spectrum_rejected():
    data = np.zeros(GRID.shape, dtype=complex)
    data[1, 0, 0] = 1.0
    with pytest.raises(SymmetryViolationError) as err:
        inverse_fft(SpectralVolume(grid=GRID, data=data))
    assert err.value.residue > 0.5


def test_non_finite_input_rejected():
    data = np.zeros(GRID.shape)
    data[0, 1, 0] = np.inf
    with pytest.raises(NumericError):
        RealVolume(grid=GRID, data=data)


def test_unit_and_zero_multipliers():
    rng = np.random.default_rng(2)
    s = forward_fft(RealVolume(grid=GRID, data=rng.standard_normal(GRID.shape)))
    assert np.array_equal(apply_multiplier(s, lambda xi: 1.0).data, s.data)
    assert np.all(apply_multiplier(s, lambda xi: 0.0).data == 0)


def test_multipliers_compose():
    rng = np.random.default_rng(3)
    s = forward_fft(RealVolume(grid=GRID, data=rng.standard_normal(GRID.shape)))

    def m1(xi):
        return 1.0 + xi[0] ** 2

    def m2(xi):
        return np.cos(xi[2])

    chained = apply_multiplier(apply_multiplier(s, m1), m2)
    product = apply_multiplier(s, lambda xi: m1(xi) * m2(xi))
    assert np.allclose(chained.data, product.data, rtol=1e-12, atol=1e-12)


def test_non_finite_symbol_names_index():
    s = forward_fft(_impulse())

    def singular(xi):
        return 1.0 / (xi[0] ** 2 + xi[1] ** 2 + xi[2] ** 2)

    with pytest.raises(SymbolDomainError) as err:
        with np.errstate(divide="ignore"):
            apply_multiplier(s, singular, name="singular")
    assert err.value.index == (0, 0, 0)
    assert "singular" in str(err.value)
