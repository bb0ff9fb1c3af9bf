import logging

import numpy as np
import scipy.fft

from qsm_multipliers.models.grid import GridSpec
from qsm_multipliers.models.recon import ReconConfig
from qsm_multipliers.models.volume import RealVolume
from qsm_multipliers.spectral.core import evaluate_multiplier
from qsm_multipliers.symbols.symbol_lookup import get_symbol_from_name_unvalidated

default_logger = logging.getLogger(__name__)


def symbol_volume(grid: GridSpec, name: str, cfg: ReconConfig) -> RealVolume:
    """A named symbol over the whole frequency grid, DC moved to the center."""
    resolved = cfg.resolved_for(grid)
    values = evaluate_multiplier(grid, get_symbol_from_name_unvalidated(name, resolved), name)
    default_logger.debug(f"symbol {name} on {grid.describe()}: range [{values.min():.3g}, {values.max():.3g}]")
    return RealVolume(grid=grid, data=scipy.fft.fftshift(np.array(values)))
