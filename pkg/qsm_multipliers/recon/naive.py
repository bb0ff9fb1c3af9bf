from typing import Dict

import numpy as np

from qsm_multipliers.models.recon import ReconConfig, ReconMethod
from qsm_multipliers.models.volume import RealVolume
from qsm_multipliers.recon.base import GenericReconstructor
from qsm_multipliers.recon.closed_forms import naive_multiplier, tkd_classic_multiplier
from qsm_multipliers.symbols.multipliers import Xi


class NaiveReconstructor(GenericReconstructor):
    """Hard spectral division with the magnitude of 1/D clamped at 1/floor."""

    method = ReconMethod.naive

    def closed_form_multipliers(self, xi: Xi, cfg: ReconConfig) -> Dict[str, np.ndarray]:
        return {"chi": naive_multiplier(xi, cfg.naive_floor)}


class ClassicTKDReconstructor(GenericReconstructor):
    method = ReconMethod.tkd_classic

    def closed_form_multipliers(self, xi: Xi, cfg: ReconConfig) -> Dict[str, np.ndarray]:
        return {"chi": tkd_classic_multiplier(xi, cfg.params.hbar)}


def naive_inverse(psi: RealVolume, floor: float) -> RealVolume:
    cfg = ReconConfig(method=ReconMethod.naive, naive_floor=floor)
    return NaiveReconstructor(cfg).reconstruct(psi).chi


def tkd_classic(psi: RealVolume, hbar: float) -> RealVolume:
    cfg = ReconConfig(method=ReconMethod.tkd_classic, params={"hbar": hbar})
    return ClassicTKDReconstructor(cfg).reconstruct(psi).chi
