import logging
from typing import Optional, Sequence

import numpy as np

from qsm_multipliers.models.grid import GridSpec
from qsm_multipliers.models.recon import ReconConfig, ReconMethod
from qsm_multipliers.models.volume import RealVolume
from qsm_multipliers.spectral.core import (
    apply_multiplier,
    evaluate_multiplier,
    forward_fft,
    inverse_fft,
)
from qsm_multipliers.symbols.symbol_lookup import resolve_symbols

default_logger = logging.getLogger(__name__)


def chain_multiplier(grid: GridSpec, names: Sequence[str], cfg: ReconConfig) -> np.ndarray:
    """Pointwise product of the named symbols; the empty chain is 1."""
    product = np.ones(grid.shape)
    for name, symbol in zip(names, resolve_symbols(names, cfg)):
        product = product * evaluate_multiplier(grid, symbol, str(name))
    return product


def compose_pipeline(
    psi: RealVolume, names: Sequence[str], cfg: Optional[ReconConfig] = None
) -> RealVolume:
    """Apply the product of a chain of named symbols to psi in one pass."""
    cfg = (cfg or ReconConfig(method=ReconMethod.tkd_smooth)).resolved_for(psi.grid)
    product = chain_multiplier(psi.grid, names, cfg)
    default_logger.debug(f"composed chain {list(names)} on {psi.grid.describe()}")
    return inverse_fft(apply_multiplier(forward_fft(psi), product, "+".join(map(str, names))))
