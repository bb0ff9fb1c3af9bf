from .cone import cone_fraction, shell_fraction
from .consistency import SuiteConfig, consistency_suite
from .masks import support_mask, support_mask_from_truth
from .metrics import compute_metrics, rmse_inside, streak_energy
from .oracles import dipole_field_direct, fundamental_solution, g_kernel_oracle

__all__ = [
    "SuiteConfig",
    "compute_metrics",
    "cone_fraction",
    "consistency_suite",
    "dipole_field_direct",
    "fundamental_solution",
    "g_kernel_oracle",
    "rmse_inside",
    "shell_fraction",
    "streak_energy",
    "support_mask",
    "support_mask_from_truth",
]
