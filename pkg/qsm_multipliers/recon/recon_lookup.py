from qsm_multipliers.models.recon import ReconConfig, ReconMethod, ReconResult
from qsm_multipliers.models.volume import RealVolume
from qsm_multipliers.recon.base import GenericReconstructor
from qsm_multipliers.recon.naive import ClassicTKDReconstructor, NaiveReconstructor
from qsm_multipliers.recon.regularized import (
    RRegularizedReconstructor,
    TEnhancedReconstructor,
    TSharpReconstructor,
)
from qsm_multipliers.recon.smooth_tkd import (
    Chi1OnlyReconstructor,
    PEnhancedReconstructor,
    SmoothTKDReconstructor,
)


def get_reconstructor_type_from_method(method: ReconMethod) -> type[GenericReconstructor]:
    match method:
        case ReconMethod.naive:
            return NaiveReconstructor
        case ReconMethod.tkd_classic:
            return ClassicTKDReconstructor
        case ReconMethod.tkd_smooth:
            return SmoothTKDReconstructor
        case ReconMethod.r_reg:
            return RRegularizedReconstructor
        case ReconMethod.t_enhanced:
            return TEnhancedReconstructor
        case ReconMethod.chi1_only:
            return Chi1OnlyReconstructor
        case ReconMethod.p_enhanced:
            return PEnhancedReconstructor
        case ReconMethod.t_sharp:
            return TSharpReconstructor


def reconstruct(psi: RealVolume, cfg: ReconConfig) -> ReconResult:
    return get_reconstructor_type_from_method(cfg.method)(cfg).reconstruct(psi)
