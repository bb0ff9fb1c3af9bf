"""Spatial-domain oracles that check the spectral symbols independently."""

import logging
from typing import Tuple

import numpy as np
import scipy.fft
from scipy.signal import fftconvolve

from qsm_multipliers.analysis.cone import wrapped_offsets
from qsm_multipliers.models.analysis import GKernelReport
from qsm_multipliers.models.constants import (
    DEFAULT_MOLLIFY_EPS,
    G_ORACLE_BAND,
    G_ORACLE_BAND_LIMIT,
    G_ORACLE_SUPERSAMPLE,
    G_ORACLE_TOLERANCE,
    QSM_FFT_WORKERS,
)
from qsm_multipliers.models.errors import ArgumentError
from qsm_multipliers.models.grid import GridSpec
from qsm_multipliers.models.volume import RealVolume, SpectralVolume
from qsm_multipliers.spectral.core import frequency_grid
from qsm_multipliers.symbols.multipliers import norm_squared, wave_p

default_logger = logging.getLogger(__name__)


def fundamental_solution(x1, x2, x3, mollify_eps: float = 0.0) -> np.ndarray:
    """3 / (4 pi sqrt(x3^2 - 2 rho^2 + eps^2)) inside the open cone, 0 outside."""
    x1, x2, x3 = np.broadcast_arrays(*(np.asarray(c, dtype=np.float64) for c in (x1, x2, x3)))
    q = x3**2 - 2.0 * (x1**2 + x2**2)
    inside = q > 0
    safe = np.where(inside, q + mollify_eps**2, 1.0)
    return np.where(inside, 3.0 / (4.0 * np.pi * np.sqrt(safe)), 0.0)


def dipole_kernel(x1, x2, x3) -> np.ndarray:
    """(2 x3^2 - x1^2 - x2^2) / (4 pi |x|^5) with d(0) = 0."""
    x1, x2, x3 = np.broadcast_arrays(*(np.asarray(c, dtype=np.float64) for c in (x1, x2, x3)))
    r2 = x1**2 + x2**2 + x3**2
    safe = np.where(r2 > 0, r2, 1.0)
    return np.where(r2 > 0, (2.0 * x3**2 - x1**2 - x2**2) / (4.0 * np.pi * safe**2.5), 0.0)


def _wrapped_coordinates(grid: GridSpec) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    x1, x2, x3 = (
        wrapped_offsets(n, 0) * delta for n, delta in zip(grid.shape, grid.spacing)
    )
    return x1.reshape(-1, 1, 1), x2.reshape(1, -1, 1), x3.reshape(1, 1, -1)


def _x3_cell_integral(rho2: np.ndarray, z0: np.ndarray, z1: np.ndarray, eps: float) -> np.ndarray:
    """Integral over [z0, z1] of 1 / sqrt(x3^2 - 2 rho^2 + eps^2) restricted to the cone."""
    edge = np.sqrt(2.0 * rho2)
    b = 2.0 * rho2 - eps**2

    def antiderivative(u: np.ndarray) -> np.ndarray:
        # valid for u >= 0, flat below the cone edge
        u = np.maximum(u, edge)
        return np.log(u + np.sqrt(np.maximum(u * u - b, eps**2)))

    upper = antiderivative(np.maximum(z1, 0.0)) - antiderivative(np.maximum(z0, 0.0))
    lower = antiderivative(np.maximum(-z0, 0.0)) - antiderivative(np.maximum(-z1, 0.0))
    return upper + lower


def cell_averaged_fundamental_solution(
    grid: GridSpec, mollify_eps: float, supersample: int = G_ORACLE_SUPERSAMPLE
) -> np.ndarray:
    """Voxel averages of the mollified fundamental solution, apex at voxel 0.

    The x3 integral is exact; x1 and x2 use supersample x supersample midpoints.
    """
    d1, d2, d3 = grid.spacing
    c1, c2, c3 = (wrapped_offsets(n, 0) * d for n, d in zip(grid.shape, grid.spacing))
    z0 = (c3 - 0.5 * d3).reshape(1, 1, -1)
    z1 = (c3 + 0.5 * d3).reshape(1, 1, -1)
    offsets = (np.arange(supersample) + 0.5) / supersample - 0.5

    total = np.zeros(grid.shape)
    for o1 in offsets:
        x1 = (c1 + o1 * d1).reshape(-1, 1, 1)
        for o2 in offsets:
            x2 = (c2 + o2 * d2).reshape(1, -1, 1)
            total += _x3_cell_integral(x1**2 + x2**2, z0, z1, mollify_eps)
    return total * 3.0 / (4.0 * np.pi * d3 * supersample**2)


def _midpoint_response(theta: np.ndarray, supersample: int) -> np.ndarray:
    """Mean of exp(i theta t) over the supersample midpoints of [-1/2, 1/2]."""
    den = supersample * np.sin(theta / (2 * supersample))
    safe = np.where(den == 0, 1.0, den)
    return np.where(den == 0, 1.0, np.sin(theta / 2) / safe)


def cell_transfer(grid: GridSpec, supersample: int = G_ORACLE_SUPERSAMPLE) -> np.ndarray:
    """Spectral response of the voxel averaging in cell_averaged_fundamental_solution."""
    xi1, xi2, xi3 = frequency_grid(grid).components
    d1, d2, d3 = grid.spacing
    return (
        _midpoint_response(xi1 * d1, supersample)
        * _midpoint_response(xi2 * d2, supersample)
        * np.sinc(xi3 * d3 / (2 * np.pi))
    )


def radial_taper(grid: GridSpec) -> Tuple[np.ndarray, float]:
    """cos^2 roll-off to zero on the ball inscribed in the box, with its radius."""
    x1, x2, x3 = _wrapped_coordinates(grid)
    radius = 0.5 * min(n * d for n, d in zip(grid.shape, grid.spacing))
    r = np.sqrt(x1**2 + x2**2 + x3**2) / radius
    return np.where(r < 1.0, np.cos(0.5 * np.pi * np.minimum(r, 1.0)) ** 2, 0.0), radius


def g_kernel_oracle(
    grid: GridSpec,
    mollify_eps: float = DEFAULT_MOLLIFY_EPS,
    band: float = G_ORACLE_BAND,
    band_limit: float = G_ORACLE_BAND_LIMIT,
    threshold: float = G_ORACLE_TOLERANCE,
    supersample: int = G_ORACLE_SUPERSAMPLE,
) -> Tuple[SpectralVolume, GKernelReport]:
    """Transform the cell-averaged, tapered fundamental solution and compare it with 1/p.

    The deviation |p g^ - 1| is summarized by its median over frequencies with
    |xi| <= band_limit * max|xi| and |p| >= band * max|p| inside that ball.
    The taper error shrinks with the box, so the median falls as the grid grows.
    """
    if mollify_eps <= 0:
        raise ArgumentError(f"mollify_eps must be positive, got {mollify_eps}")
    if supersample < 1:
        raise ArgumentError(f"supersample must be at least 1, got {supersample}")
    taper, taper_radius = radial_taper(grid)
    g = cell_averaged_fundamental_solution(grid, mollify_eps, supersample) * taper
    g_hat = scipy.fft.fftn(g, workers=QSM_FFT_WORKERS) * grid.voxel_volume
    g_hat = g_hat / cell_transfer(grid, supersample)

    xi = frequency_grid(grid).components
    p = np.broadcast_to(wave_p(xi), grid.shape)
    radius = np.broadcast_to(np.sqrt(norm_squared(xi)), grid.shape)
    inside = (radius <= band_limit * grid.max_frequency) & (radius > 0)
    p_max = np.abs(p[inside]).max() if inside.any() else 0.0
    tested = inside & (np.abs(p) >= band * p_max) & (np.abs(p) > 0)
    deviation = np.abs(p[tested] * g_hat[tested] - 1.0)
    median = float(np.median(deviation)) if deviation.size else float("nan")

    report = GKernelReport(
        grid_shape=grid.shape,
        mollify_eps=mollify_eps,
        band=band,
        band_limit=band_limit,
        supersample=supersample,
        taper_radius=taper_radius,
        tested_frequencies=int(tested.sum()),
        median_deviation=median,
        threshold=threshold,
        passed=bool(median < threshold),
    )
    default_logger.info(
        f"g oracle on {grid.describe()}: median deviation {median:.4f} over {report.tested_frequencies} frequencies"
    )
    return SpectralVolume(grid=grid, data=g_hat), report


def dipole_field_direct(chi: RealVolume) -> RealVolume:
    """Field of chi by linear (non-periodic) convolution with the sampled dipole kernel."""
    axes = [
        np.arange(-(n - 1), n) * delta for n, delta in zip(chi.grid.shape, chi.grid.spacing)
    ]
    kernel = dipole_kernel(
        axes[0].reshape(-1, 1, 1), axes[1].reshape(1, -1, 1), axes[2].reshape(1, 1, -1)
    )
    field = fftconvolve(chi.data, kernel * chi.grid.voxel_volume, mode="same")
    return chi.with_data(field)
