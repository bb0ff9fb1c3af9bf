from abc import ABC, abstractmethod
import logging
from typing import Dict, List, Optional

import numpy as np

from qsm_multipliers.models.constants import IMAG_RESIDUE_TOLERANCE
from qsm_multipliers.models.errors import ConsistencyError
from qsm_multipliers.models.grid import GridSpec
from qsm_multipliers.models.recon import (
    ReconConfig,
    ReconDiagnostics,
    ReconMethod,
    ReconResult,
)
from qsm_multipliers.models.volume import RealVolume, SpectralVolume
from qsm_multipliers.spectral.core import (
    apply_multiplier,
    forward_fft,
    frequency_grid,
    inverse_fft_with_residue,
)
from qsm_multipliers.recon.compose import chain_multiplier
from qsm_multipliers.symbols.multipliers import Xi, wave_p

default_logger = logging.getLogger(__name__)


"""
To add a new reconstruction method.

1. Add its name to ReconMethod in models/recon.py.

2. Create a subclass of GenericReconstructor and implement

   ```python
   def closed_form_multipliers(self, xi: Xi, cfg: ReconConfig) -> Dict[str, np.ndarray]:
   ```

   returning one multiplier per output part. Part names are "chi" for a
   single-part method, otherwise "chi1" plus either "chi2" or the pair
   "chi21"/"chi22". The assembled result always has chi = chi1 + chi2 and
   chi2 = chi21 + chi22.

3. If the method is defined as a chain of operators, also implement

   ```python
   def operator_chains(self, cfg: ReconConfig) -> Dict[str, List[str]]:
   ```

   mapping part names to lists of symbol names (see symbols/symbol_lookup.py).
   Every reconstruction then evaluates the raw chain next to the closed form
   and raises ConsistencyError when they disagree off the guard set
   |p| <= guard, where the chain's q_inverse is zeroed.

4. Register the class in recon/recon_lookup.py.

Closed forms must be even in xi (D, p, |xi| and even powers of T are), or the
inverse FFT will refuse the result as non-real.
"""


def consistency_residual(
    psi_hat: SpectralVolume, closed: np.ndarray, chain: np.ndarray, off_guard: np.ndarray
) -> float:
    """Relative L2 gap between two multipliers applied to psi^, off the guard set."""
    data = psi_hat.data[off_guard]
    gap = np.linalg.norm((closed[off_guard] - chain[off_guard]) * data)
    scale = max(
        np.linalg.norm(closed[off_guard] * data), np.linalg.norm(chain[off_guard] * data)
    )
    if scale == 0.0:
        return 0.0
    return float(gap / scale)


class GenericReconstructor(ABC):
    method: ReconMethod
    residue_tolerance: float = IMAG_RESIDUE_TOLERANCE

    def __init__(self, config: ReconConfig) -> None:
        self.config = config

    @abstractmethod
    def closed_form_multipliers(self, xi: Xi, cfg: ReconConfig) -> Dict[str, np.ndarray]:
        """Simplified multiplier of every output part"""
        pass

    def operator_chains(self, cfg: ReconConfig) -> Dict[str, List[str]]:
        """Symbol-name chains the closed forms are checked against"""
        return {}

    def check_consistency(
        self,
        grid: GridSpec,
        psi_hat: SpectralVolume,
        closed: Dict[str, np.ndarray],
        cfg: ReconConfig,
    ) -> ReconDiagnostics:
        chains = self.operator_chains(cfg)
        if not chains:
            return ReconDiagnostics()
        p = wave_p(frequency_grid(grid).components)
        off_guard = np.broadcast_to(np.abs(p) > cfg.effective_guard, grid.shape)
        residuals: Dict[str, float] = {}
        for part, names in chains.items():
            chain = chain_multiplier(grid, names, cfg)
            residuals[part] = consistency_residual(
                psi_hat, np.broadcast_to(closed[part], grid.shape), chain, off_guard
            )
        guard_hits = int(off_guard.size - np.count_nonzero(off_guard))
        default_logger.debug(
            f"{cfg.name}: closed/chain residuals {residuals}, guard hits {guard_hits}"
        )
        offenders = {k: v for k, v in residuals.items() if v > cfg.tolerance}
        if offenders:
            default_logger.error(f"{cfg.name}: closed form disagrees with its chain: {offenders}")
            raise ConsistencyError(
                f"{cfg.name}: closed form and operator chain disagree for "
                + ", ".join(f"{k} ({v:.3e})" for k, v in offenders.items()),
                residuals=offenders,
            )
        return ReconDiagnostics(consistency=residuals, guard_hits=guard_hits)

    def assemble(
        self, cfg: ReconConfig, parts: Dict[str, RealVolume], diagnostics: ReconDiagnostics
    ) -> ReconResult:
        chi1 = parts.get("chi1")
        chi21 = parts.get("chi21")
        chi22 = parts.get("chi22")
        chi2: Optional[RealVolume] = parts.get("chi2")
        if chi21 is not None and chi22 is not None:
            chi2 = chi21 + chi22
        chi = parts.get("chi")
        if chi is None:
            pieces = [v for v in (chi1, chi2) if v is not None]
            chi = pieces[0] if len(pieces) == 1 else pieces[0] + pieces[1]
        return ReconResult(
            config=cfg,
            chi=chi,
            chi1=chi1,
            chi2=chi2,
            chi21=chi21,
            chi22=chi22,
            diagnostics=diagnostics,
        )

    def reconstruct(self, psi: RealVolume) -> ReconResult:
        cfg = self.config.resolved_for(psi.grid)
        xi = frequency_grid(psi.grid).components
        psi_hat = forward_fft(psi)
        closed = self.closed_form_multipliers(xi, cfg)
        diagnostics = self.check_consistency(psi.grid, psi_hat, closed, cfg)

        parts: Dict[str, RealVolume] = {}
        for part, multiplier in closed.items():
            spectrum = apply_multiplier(psi_hat, multiplier, f"{cfg.name}:{part}")
            parts[part], diagnostics.imag_residues[part] = inverse_fft_with_residue(
                spectrum, self.residue_tolerance
            )
        default_logger.info(
            f"reconstructed {cfg.name} on {psi.grid.describe()} with parts {sorted(parts)}"
        )
        return self.assemble(cfg, parts, diagnostics)
