from typing import Dict, List

import numpy as np

from qsm_multipliers.models.constants import T_RESIDUE_TOLERANCE
from qsm_multipliers.models.errors import ArgumentError
from qsm_multipliers.models.recon import ReconConfig, ReconMethod, ReconResult
from qsm_multipliers.models.volume import RealVolume
from qsm_multipliers.recon.closed_forms import (
    chi1_multiplier,
    r_chi21_multiplier,
    r_chi22_multiplier,
    t_sharp_chi2_multiplier,
)
from qsm_multipliers.recon.smooth_tkd import CHI1_CHAIN, Chi1OnlyReconstructor
from qsm_multipliers.symbols.multipliers import Xi

CHI22_CHAIN = ["P", "qinv", "R2", "C", "b", "laplacian"]


class RRegularizedReconstructor(Chi1OnlyReconstructor):
    """Splits chi2 with the low-pass C: R of order s acts only on (1 - C)."""

    method = ReconMethod.r_reg

    def enhancement_power(self, cfg: ReconConfig) -> int:
        return 0

    def closed_form_multipliers(self, xi: Xi, cfg: ReconConfig) -> Dict[str, np.ndarray]:
        return {
            "chi1": chi1_multiplier(xi, cfg),
            "chi21": r_chi21_multiplier(xi, cfg, self.enhancement_power(cfg)),
            "chi22": r_chi22_multiplier(xi, cfg),
        }

    def operator_chains(self, cfg: ReconConfig) -> Dict[str, List[str]]:
        t_chain = ["T"] * self.enhancement_power(cfg)
        return {
            "chi1": CHI1_CHAIN,
            "chi21": t_chain + ["P", "qinv", "R", "1-C", "b", "laplacian"],
            "chi22": CHI22_CHAIN,
        }


def _require_even_power(cfg: ReconConfig, minimum: int = 0) -> None:
    m = cfg.params.m
    if m % 2 != 0:
        raise ArgumentError(
            f"m = {m} is odd: T is odd in xi, so odd powers give a non-real field"
        )
    if m < minimum:
        raise ArgumentError(f"m must be at least {minimum}, got {m}")


class TEnhancedReconstructor(RRegularizedReconstructor):
    """r-reg with chi21 further multiplied by T^m, which vanishes on the cone."""

    method = ReconMethod.t_enhanced
    residue_tolerance = T_RESIDUE_TOLERANCE

    def __init__(self, config: ReconConfig) -> None:
        _require_even_power(config)
        super().__init__(config)

    def enhancement_power(self, cfg: ReconConfig) -> int:
        return cfg.params.m


class TSharpReconstructor(Chi1OnlyReconstructor):
    """chi1 plus chi2# = T^m Q R B (-Lap psi) with a cone-guarded R."""

    method = ReconMethod.t_sharp
    residue_tolerance = T_RESIDUE_TOLERANCE

    def __init__(self, config: ReconConfig) -> None:
        _require_even_power(config, minimum=2)
        super().__init__(config)

    def closed_form_multipliers(self, xi: Xi, cfg: ReconConfig) -> Dict[str, np.ndarray]:
        return {
            "chi1": chi1_multiplier(xi, cfg),
            "chi2": t_sharp_chi2_multiplier(xi, cfg),
        }

    def operator_chains(self, cfg: ReconConfig) -> Dict[str, List[str]]:
        return {
            "chi1": CHI1_CHAIN,
            "chi2": ["T"] * cfg.params.m + ["qinv", "Rg", "b", "laplacian"],
        }


def r_regularized(psi: RealVolume, cfg: ReconConfig) -> ReconResult:
    return RRegularizedReconstructor(cfg).reconstruct(psi)


def t_enhanced(psi: RealVolume, cfg: ReconConfig) -> ReconResult:
    return TEnhancedReconstructor(cfg).reconstruct(psi)


def t_sharp(psi: RealVolume, cfg: ReconConfig) -> ReconResult:
    return TSharpReconstructor(cfg).reconstruct(psi)
