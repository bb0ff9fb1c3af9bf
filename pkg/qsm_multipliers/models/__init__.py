from .grid import FrequencyGrid, GridSpec
from .phantom import Ellipsoid, PerturbationSpec, PhantomSpec, Spike
from .recon import ReconConfig, ReconMethod, ReconResult
from .symbols import CutoffKind, CutoffProfile, HalfLineProfile, RegularizerMode, SymbolParams
from .volume import RealVolume, SpectralVolume

__all__ = [
    "CutoffKind",
    "CutoffProfile",
    "Ellipsoid",
    "FrequencyGrid",
    "GridSpec",
    "HalfLineProfile",
    "PerturbationSpec",
    "PhantomSpec",
    "RealVolume",
    "ReconConfig",
    "ReconMethod",
    "ReconResult",
    "RegularizerMode",
    "SpectralVolume",
    "Spike",
    "SymbolParams",
]
