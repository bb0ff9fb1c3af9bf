import logging
from functools import lru_cache
from typing import Callable, Sequence, Tuple, Union

import numpy as np
import scipy.fft

from qsm_multipliers.models.constants import IMAG_RESIDUE_TOLERANCE, QSM_FFT_WORKERS
from qsm_multipliers.models.errors import (
    ArgumentError,
    NumericError,
    SymbolDomainError,
    SymmetryViolationError,
)
from qsm_multipliers.models.grid import FrequencyGrid, GridSpec
from qsm_multipliers.models.volume import (
    RealVolume,
    SpectralVolume,
    first_non_finite_index,
)

default_logger = logging.getLogger(__name__)

Components = Tuple[np.ndarray, np.ndarray, np.ndarray]
SymbolFn = Callable[[Components], np.ndarray]
Multiplier = Union[SymbolFn, np.ndarray]


def _angular_frequencies(n: int, delta: float) -> np.ndarray:
    # fftfreq puts index n/2 on the negative side for even n
    return 2 * np.pi * scipy.fft.fftfreq(n, d=delta)


@lru_cache(maxsize=16)
def frequency_grid(grid: GridSpec) -> FrequencyGrid:
    xi1, xi2, xi3 = (
        _angular_frequencies(n, d) for n, d in zip(grid.shape, grid.spacing)
    )
    return FrequencyGrid(
        grid=grid,
        xi1=xi1.reshape(-1, 1, 1),
        xi2=xi2.reshape(1, -1, 1),
        xi3=xi3.reshape(1, 1, -1),
    )


def frequency_at(grid: GridSpec, index: Sequence[int]) -> np.ndarray:
    if len(index) != 3:
        raise ArgumentError(f"expected an index triple, got {index}")
    for k, n in zip(index, grid.shape):
        if not 0 <= k < n:
            raise ArgumentError(f"frequency index {tuple(index)} out of range for grid {grid.shape}")
    freqs = frequency_grid(grid)
    return np.array(
        [
            freqs.xi1[index[0], 0, 0],
            freqs.xi2[0, index[1], 0],
            freqs.xi3[0, 0, index[2]],
        ]
    )


def forward_fft(v: RealVolume) -> SpectralVolume:
    """Unnormalized forward DFT of a real volume."""
    if not np.all(np.isfinite(v.data)):
        raise NumericError(f"non-finite input at voxel {first_non_finite_index(v.data)}")
    data = scipy.fft.fftn(v.data, workers=QSM_FFT_WORKERS)
    return SpectralVolume(grid=v.grid, data=data)


def imaginary_residue(values: np.ndarray) -> float:
    total = np.linalg.norm(values.ravel())
    if total == 0.0:
        return 0.0
    return float(np.linalg.norm(values.imag.ravel()) / total)


def inverse_fft_with_residue(
    s: SpectralVolume, tolerance: float = IMAG_RESIDUE_TOLERANCE
) -> Tuple[RealVolume, float]:
    if not np.all(np.isfinite(s.data)):
        raise NumericError(f"non-finite spectrum at index {first_non_finite_index(s.data)}")
    values = scipy.fft.ifftn(s.data, workers=QSM_FFT_WORKERS)
    residue = imaginary_residue(values)
    default_logger.debug(f"inverse FFT imaginary residue {residue:.3e}")
    if residue > tolerance:
        raise SymmetryViolationError(residue, tolerance)
    return RealVolume(grid=s.grid, data=values.real), residue


def inverse_fft(
    s: SpectralVolume, tolerance: float = IMAG_RESIDUE_TOLERANCE
) -> RealVolume:
    """Normalized inverse DFT.

    The imaginary part is dropped when its relative norm is below
    ``tolerance``; otherwise SymmetryViolationError is raised.
    """
    volume, _ = inverse_fft_with_residue(s, tolerance)
    return volume


def evaluate_multiplier(grid: GridSpec, m: Multiplier, name: str = "symbol") -> np.ndarray:
    """Evaluate a symbol on every grid frequency, broadcast to the full shape."""
    if callable(m):
        values = m(frequency_grid(grid).components)
    else:
        values = m
    values = np.broadcast_to(np.asarray(values, dtype=np.float64), grid.shape)
    if not np.all(np.isfinite(values)):
        index = first_non_finite_index(values)
        raise SymbolDomainError(index, values[index], symbol=name)
    return values


def apply_multiplier(s: SpectralVolume, m: Multiplier, name: str = "symbol") -> SpectralVolume:
    return s.with_data(s.data * evaluate_multiplier(s.grid, m, name))
