from typing import Sequence

import numpy as np

from qsm_multipliers.models.errors import ArgumentError
from qsm_multipliers.models.grid import GridSpec
from qsm_multipliers.models.volume import RealVolume

SQRT2 = np.sqrt(2.0)
SQRT3 = np.sqrt(3.0)


def wrapped_offsets(n: int, apex: int) -> np.ndarray:
    """Signed periodic offsets k - apex folded into [-n/2, n/2)."""
    return (np.arange(n) - apex + n // 2) % n - n // 2


def cone_distance(grid: GridSpec, apex: Sequence[int]) -> np.ndarray:
    """Distance of every voxel to the spatial cone 2 rho^2 = z^2 through ``apex``.

    Offsets are in units of the smallest voxel spacing.
    """
    if len(apex) != 3 or any(not 0 <= a < n for a, n in zip(apex, grid.shape)):
        raise ArgumentError(f"apex {tuple(apex)} out of range for grid {grid.shape}")
    unit = min(grid.spacing)
    d1, d2, d3 = (
        wrapped_offsets(n, a) * (delta / unit)
        for n, a, delta in zip(grid.shape, apex, grid.spacing)
    )
    rho = np.sqrt(d1.reshape(-1, 1, 1) ** 2 + d2.reshape(1, -1, 1) ** 2)
    return np.abs(SQRT2 * rho - np.abs(d3.reshape(1, 1, -1))) / SQRT3


def cone_shell(grid: GridSpec, apex: Sequence[int], halfwidth: float) -> np.ndarray:
    if halfwidth < 1:
        raise ArgumentError(f"halfwidth must be >= 1 voxel, got {halfwidth}")
    return cone_distance(grid, apex) <= halfwidth


def shell_fraction(grid: GridSpec, apex: Sequence[int], halfwidth: float) -> float:
    """Volume fraction of the cone shell, the expected cone_fraction of white noise."""
    return float(np.mean(cone_shell(grid, apex, halfwidth)))


def cone_fraction(vol: RealVolume, apex: Sequence[int], halfwidth: float) -> float:
    """Share of the energy of ``vol`` lying within ``halfwidth`` of the cone."""
    shell = cone_shell(vol.grid, apex, halfwidth)
    energy = vol.data**2
    total = float(energy.sum())
    if total == 0.0:
        return 0.0
    return float(energy[shell].sum() / total)
