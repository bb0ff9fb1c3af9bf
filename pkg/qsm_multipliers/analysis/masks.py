import numpy as np
from scipy import ndimage

from qsm_multipliers.models.analysis import SupportMask
from qsm_multipliers.models.constants import DEFAULT_MASK_DILATION
from qsm_multipliers.models.errors import ArgumentError
from qsm_multipliers.models.grid import GridSpec
from qsm_multipliers.models.phantom import PhantomSpec
from qsm_multipliers.models.volume import RealVolume
from qsm_multipliers.phantoms.rasterize import rasterize_phantom

# Amplitudes that cancel (1 - 0.8 - 0.2) leave rounding residue, not tissue.
SUPPORT_THRESHOLD = 1e-9


def support_mask_from_truth(truth: RealVolume, dilation: int = DEFAULT_MASK_DILATION) -> SupportMask:
    """Threshold |chi|, fill enclosed holes, then dilate by ``dilation`` voxels."""
    if dilation < 0:
        raise ArgumentError(f"dilation must be non-negative, got {dilation}")
    inside = ndimage.binary_fill_holes(np.abs(truth.data) > SUPPORT_THRESHOLD)
    if dilation > 0:
        structure = ndimage.generate_binary_structure(3, 1)
        inside = ndimage.binary_dilation(inside, structure=structure, iterations=dilation)
    return SupportMask(grid=truth.grid, inside=inside, dilation=dilation)


def support_mask(spec: PhantomSpec, grid: GridSpec, dilation: int = DEFAULT_MASK_DILATION) -> SupportMask:
    return support_mask_from_truth(rasterize_phantom(spec, grid), dilation)


def require_same_grid(*volumes) -> None:
    grids = {v.grid for v in volumes}
    if len(grids) > 1:
        raise ArgumentError(f"grid mismatch: {sorted(g.describe() for g in grids)}")
