import itertools
import logging
from typing import Tuple

import numpy as np
from scipy.spatial.transform import Rotation

from qsm_multipliers.models.errors import ArgumentError
from qsm_multipliers.models.grid import GridSpec
from qsm_multipliers.models.phantom import Ellipsoid, PhantomSpec
from qsm_multipliers.models.volume import RealVolume

default_logger = logging.getLogger(__name__)

# x1 slabs rasterized per pass; bounds the size of temporaries on large grids
SLAB = 32


def normalized_axis(n: int, offset: float = 0.0) -> np.ndarray:
    """Voxel center coordinates along one axis, index n/2 at the origin."""
    return (np.arange(n) - n // 2 + offset) * (2.0 / n)


def _inside(
    ellipsoid: Ellipsoid, x1: np.ndarray, x2: np.ndarray, x3: np.ndarray
) -> np.ndarray:
    # rows of the inverse rotation map world offsets into the ellipsoid frame
    inverse = Rotation.from_euler("ZXZ", ellipsoid.rotation).inv().as_matrix()
    c1, c2, c3 = ellipsoid.center
    d1, d2, d3 = x1 - c1, x2 - c2, x3 - c3
    total = 0.0
    for row, axis in zip(inverse, ellipsoid.semi_axes):
        u = (row[0] * d1 + row[1] * d2 + row[2] * d3) / axis
        total = total + u**2
    return total <= 1.0


def _offsets(supersample: int) -> Tuple[float, ...]:
    return tuple((j + 0.5) / supersample - 0.5 for j in range(supersample))


def rasterize_phantom(spec: PhantomSpec, grid: GridSpec, supersample: int = 1) -> RealVolume:
    """Sum of ellipsoid amplitudes at each voxel center.

    With ``supersample > 1`` each voxel averages supersample^3 sub-samples.
    """
    if not spec.ellipsoids:
        raise ArgumentError("phantom spec has no ellipsoids")
    if supersample < 1:
        raise ArgumentError(f"supersample must be >= 1, got {supersample}")

    n1, n2, n3 = grid.shape
    data = np.zeros(grid.shape)
    offsets = _offsets(supersample)
    weight = 1.0 / len(offsets) ** 3
    for o1, o2, o3 in itertools.product(offsets, repeat=3):
        x1_all = normalized_axis(n1, o1).reshape(-1, 1, 1)
        x2 = normalized_axis(n2, o2).reshape(1, -1, 1)
        x3 = normalized_axis(n3, o3).reshape(1, 1, -1)
        for start in range(0, n1, SLAB):
            x1 = x1_all[start : start + SLAB]
            slab = data[start : start + SLAB]
            for ellipsoid in spec.ellipsoids:
                slab += weight * ellipsoid.amplitude * _inside(ellipsoid, x1, x2, x3)

    default_logger.info(
        f"rasterized phantom '{spec.name}' on {grid.describe()} "
        f"(supersample={supersample}, range [{data.min():.3g}, {data.max():.3g}])"
    )
    return RealVolume(grid=grid, data=data)
