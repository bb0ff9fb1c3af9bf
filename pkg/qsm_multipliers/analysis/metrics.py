import logging
from typing import Optional, Sequence

import numpy as np

from qsm_multipliers.analysis.cone import cone_fraction, shell_fraction
from qsm_multipliers.analysis.masks import require_same_grid
from qsm_multipliers.models.analysis import MetricsReport, SupportMask
from qsm_multipliers.models.constants import DEFAULT_CONE_HALFWIDTH
from qsm_multipliers.models.recon import ReconResult
from qsm_multipliers.models.volume import RealVolume

default_logger = logging.getLogger(__name__)


def mean_offset_inside(recon: RealVolume, truth: RealVolume, mask: SupportMask) -> float:
    require_same_grid(recon, truth, mask)
    if mask.voxel_count == 0:
        return 0.0
    return float(np.mean(recon.data[mask.inside] - truth.data[mask.inside]))


def rmse_inside(recon: RealVolume, truth: RealVolume, mask: SupportMask) -> float:
    """RMS of recon - truth over the mask after matching the means there.

    The mean match absorbs the unrecoverable DC term, so a unit impulse in an
    N-voxel mask scores sqrt(N - 1) / N rather than 1 / sqrt(N).
    """
    require_same_grid(recon, truth, mask)
    if mask.voxel_count == 0:
        return 0.0
    diff = recon.data[mask.inside] - truth.data[mask.inside]
    diff = diff - diff.mean()
    return float(np.sqrt(np.mean(diff**2)))


def streak_energy(recon: RealVolume, mask: SupportMask) -> float:
    require_same_grid(recon, mask)
    return float(np.linalg.norm(recon.data[~mask.inside]))


def compute_metrics(
    result: ReconResult,
    truth: RealVolume,
    mask: SupportMask,
    apex: Optional[Sequence[int]] = None,
    halfwidth: float = DEFAULT_CONE_HALFWIDTH,
) -> MetricsReport:
    """Metrics of one reconstruction; cone measures use chi2 when there is one."""
    cfg = result.config
    streak_chi2 = None
    if result.chi2 is not None:
        streak_chi2 = streak_energy(result.chi2, mask)

    cone, shell = 0.0, 0.0
    if apex is not None:
        target = result.chi2 if result.chi2 is not None else result.chi
        cone = cone_fraction(target, apex, halfwidth)
        shell = shell_fraction(truth.grid, apex, halfwidth)

    report = MetricsReport(
        label=cfg.name,
        method=cfg.method.value,
        rmse_inside=rmse_inside(result.chi, truth, mask),
        streak_energy=streak_energy(result.chi, mask),
        streak_energy_chi2=streak_chi2,
        cone_fraction=cone,
        shell_fraction=shell,
        mean_offset=mean_offset_inside(result.chi, truth, mask),
        params=cfg.echo(),
    )
    default_logger.info(
        f"{report.label}: rmse_inside={report.rmse_inside:.4g} streak_energy={report.streak_energy:.4g}"
    )
    return report


def volume_metrics(
    label: str,
    recon: RealVolume,
    truth: RealVolume,
    mask: SupportMask,
    apex: Optional[Sequence[int]] = None,
    halfwidth: float = DEFAULT_CONE_HALFWIDTH,
) -> MetricsReport:
    """Metrics for a bare volume with no reconstruction config attached."""
    cone, shell = 0.0, 0.0
    if apex is not None:
        cone = cone_fraction(recon, apex, halfwidth)
        shell = shell_fraction(recon.grid, apex, halfwidth)
    return MetricsReport(
        label=label,
        method="volume",
        rmse_inside=rmse_inside(recon, truth, mask),
        streak_energy=streak_energy(recon, mask),
        cone_fraction=cone,
        shell_fraction=shell,
        mean_offset=mean_offset_inside(recon, truth, mask),
    )
