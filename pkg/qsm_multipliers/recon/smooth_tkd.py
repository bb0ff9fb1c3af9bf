from typing import Dict, List

import numpy as np

from qsm_multipliers.models.recon import ReconConfig, ReconMethod, ReconResult
from qsm_multipliers.models.volume import RealVolume
from qsm_multipliers.recon.base import GenericReconstructor
from qsm_multipliers.recon.closed_forms import (
    chi1_multiplier,
    p_enhanced_chi2_multiplier,
    tkd_chi2_multiplier,
)
from qsm_multipliers.symbols.multipliers import Xi

CHI1_CHAIN = ["qinv", "1-b", "laplacian"]


class Chi1OnlyReconstructor(GenericReconstructor):
    """Keeps only the part of the spectrum away from the zero cone."""

    method = ReconMethod.chi1_only

    def closed_form_multipliers(self, xi: Xi, cfg: ReconConfig) -> Dict[str, np.ndarray]:
        return {"chi1": chi1_multiplier(xi, cfg)}

    def operator_chains(self, cfg: ReconConfig) -> Dict[str, List[str]]:
        return {"chi1": CHI1_CHAIN}


class SmoothTKDReconstructor(Chi1OnlyReconstructor):
    """chi1 away from the cone plus the order-enhanced chi2 = P Q R B (-Lap psi).

    R here is always |xi|^-2, which collapses chi2 to b sign(p) / hbar.
    """

    method = ReconMethod.tkd_smooth

    def closed_form_multipliers(self, xi: Xi, cfg: ReconConfig) -> Dict[str, np.ndarray]:
        return {
            "chi1": chi1_multiplier(xi, cfg),
            "chi2": tkd_chi2_multiplier(xi, cfg),
        }

    def operator_chains(self, cfg: ReconConfig) -> Dict[str, List[str]]:
        return {
            "chi1": CHI1_CHAIN,
            "chi2": ["P", "qinv", "R2", "b", "laplacian"],
        }


class PEnhancedReconstructor(Chi1OnlyReconstructor):
    method = ReconMethod.p_enhanced

    def closed_form_multipliers(self, xi: Xi, cfg: ReconConfig) -> Dict[str, np.ndarray]:
        return {
            "chi1": chi1_multiplier(xi, cfg),
            "chi2": p_enhanced_chi2_multiplier(xi, cfg),
        }

    def operator_chains(self, cfg: ReconConfig) -> Dict[str, List[str]]:
        return {
            "chi1": CHI1_CHAIN,
            "chi2": ["p", "qinv", "b", "laplacian"],
        }


def smooth_tkd(psi: RealVolume, cfg: ReconConfig) -> ReconResult:
    return SmoothTKDReconstructor(cfg).reconstruct(psi)


def chi1_only(psi: RealVolume, cfg: ReconConfig) -> ReconResult:
    return Chi1OnlyReconstructor(cfg).reconstruct(psi)


def p_enhanced(psi: RealVolume, cfg: ReconConfig) -> ReconResult:
    return PEnhancedReconstructor(cfg).reconstruct(psi)
