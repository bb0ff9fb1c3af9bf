import logging

import numpy as np

from qsm_multipliers.models.constants import SPIKE_AMPLITUDE_FACTOR
from qsm_multipliers.models.errors import ArgumentError
from qsm_multipliers.models.phantom import PerturbationSpec
from qsm_multipliers.models.volume import RealVolume
from qsm_multipliers.spectral.core import apply_multiplier, forward_fft, inverse_fft
from qsm_multipliers.symbols.multipliers import dipole_D

default_logger = logging.getLogger(__name__)


def forward_model(chi: RealVolume) -> RealVolume:
    """Field perturbation psi with psi^ = D chi^."""
    return inverse_fft(apply_multiplier(forward_fft(chi), dipole_D, "D"))


def default_spike_amplitude(psi: RealVolume) -> float:
    return SPIKE_AMPLITUDE_FACTOR * float(np.max(np.abs(psi.data)))


def perturb(psi: RealVolume, pert: PerturbationSpec) -> RealVolume:
    """Add point singularities and seeded white noise to a field."""
    if pert.is_empty:
        return psi

    data = np.array(psi.data)
    for spike in pert.spikes:
        if any(k >= n for k, n in zip(spike.index, psi.grid.shape)):
            raise ArgumentError(f"spike index {spike.index} out of range for grid {psi.grid.shape}")
        amplitude = spike.amplitude
        if amplitude is None:
            amplitude = default_spike_amplitude(psi)
        data[spike.index] += amplitude
        default_logger.debug(f"spike of {amplitude:.4g} at {spike.index}")

    if pert.noise_sigma > 0:
        rng = np.random.default_rng(pert.seed)
        data += rng.normal(0.0, pert.noise_sigma, size=data.shape)
    return psi.with_data(data)
