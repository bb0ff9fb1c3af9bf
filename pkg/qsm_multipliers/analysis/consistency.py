import asyncio
import logging
from typing import Callable, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, Field, PositiveFloat

from qsm_multipliers.models.analysis import ConsistencyCheck, ConsistencyReport
from qsm_multipliers.models.errors import ConfigError, ConsistencyError, offenders_message
from qsm_multipliers.models.grid import GridSpec, GridSize
from qsm_multipliers.models.phantom import PerturbationSpec, Spike
from qsm_multipliers.models.recon import ReconConfig, ReconMethod
from qsm_multipliers.models.symbols import SymbolParams
from qsm_multipliers.models.volume import RealVolume
from qsm_multipliers.phantoms.forward import forward_model, perturb
from qsm_multipliers.phantoms.rasterize import rasterize_phantom
from qsm_multipliers.phantoms.shepp_logan import default_phantom_spec
from qsm_multipliers.recon.closed_forms import tkd_chi2_multiplier
from qsm_multipliers.recon.recon_lookup import get_reconstructor_type_from_method
from qsm_multipliers.recon.smooth_tkd import smooth_tkd
from qsm_multipliers.recon.regularized import r_regularized
from qsm_multipliers.spectral.core import forward_fft, frequency_grid
from qsm_multipliers.symbols import multipliers as sym

default_logger = logging.getLogger(__name__)

CLOSED_FORM_METHODS = [
    ReconMethod.tkd_smooth,
    ReconMethod.r_reg,
    ReconMethod.t_enhanced,
    ReconMethod.p_enhanced,
    ReconMethod.t_sharp,
]


class SuiteConfig(BaseModel):
    n: GridSize = 32
    params: SymbolParams = Field(default_factory=SymbolParams)
    # None runs every registered check; an empty list runs nothing.
    checks: Optional[List[str]] = None
    tolerance: Optional[PositiveFloat] = None


class _SuiteData:
    """Clean and spiked fields shared by the checks of one suite run."""

    def __init__(self, cfg: SuiteConfig) -> None:
        self.grid = GridSpec.cubic(cfg.n)
        self.params = cfg.params
        self.chi = rasterize_phantom(default_phantom_spec(), self.grid)
        self.psi = forward_model(self.chi)
        center = tuple(n // 2 for n in self.grid.shape)
        self.psi_spiked = perturb(self.psi, PerturbationSpec(spikes=[Spike(index=center)]))

    def config(self, method: ReconMethod, **updates) -> ReconConfig:
        return ReconConfig(method=method, params=self.params, **updates).resolved_for(self.grid)


def _relative(gap: float, scale: float) -> float:
    return 0.0 if scale == 0.0 else float(gap / scale)


def check_symbol_identities(data: _SuiteData) -> float:
    cfg = data.config(ReconMethod.tkd_smooth)
    xi = frequency_grid(data.grid).components
    r2 = sym.norm_squared(xi)
    p = sym.wave_p(xi)
    d = sym.dipole_D(xi)
    b = sym.cutoff_b(xi, cfg.params.hbar, cfg.cutoff)
    scale = 1.0 + np.abs(p)
    residuals = [
        np.max(np.abs(p - r2 * d) / scale),
        np.max(np.abs(sym.factored_p(xi) - p) / scale),
        np.max(np.abs(b + (1.0 - b) - 1.0)),
    ]
    off_cone = np.broadcast_to(np.abs(p) > cfg.effective_guard, data.grid.shape)
    chain = (
        sym.enhancer_P(xi, cfg.params.hbar)
        * sym.q_inverse(xi, cfg.effective_guard)
        * sym.regularizer_R(xi, 2.0, 1.0)
        * b
        * r2
    )
    closed = tkd_chi2_multiplier(xi, cfg)
    chain, closed = np.broadcast_to(chain, data.grid.shape), np.broadcast_to(closed, data.grid.shape)
    residuals.append(
        _relative(np.linalg.norm(chain[off_cone] - closed[off_cone]), np.linalg.norm(closed[off_cone]))
    )
    return float(max(residuals))


def check_chi1_identity(data: _SuiteData) -> float:
    cfg = data.config(ReconMethod.tkd_smooth)
    result = smooth_tkd(data.psi, cfg)
    xi = frequency_grid(data.grid).components
    b = sym.cutoff_b(xi, cfg.params.hbar, cfg.cutoff)
    expected = (1.0 - b) * forward_fft(data.chi).data
    actual = forward_fft(result.chi1).data
    return _relative(np.linalg.norm(actual - expected), np.linalg.norm(expected))


def predicted_tkd_error(chi: RealVolume, cfg: ReconConfig) -> float:
    """||b (1 - |D| / hbar) chi^|| / sqrt(N), the smooth TKD error on clean data."""
    xi = frequency_grid(chi.grid).components
    b = sym.cutoff_b(xi, cfg.params.hbar, cfg.cutoff)
    weight = b * (1.0 - np.abs(sym.dipole_D(xi)) / cfg.params.hbar)
    return float(np.linalg.norm(weight * forward_fft(chi).data) / np.sqrt(chi.grid.size))


def check_tkd_error_formula(data: _SuiteData) -> float:
    cfg = data.config(ReconMethod.tkd_smooth)
    measured = float(np.linalg.norm(smooth_tkd(data.psi, cfg).chi.data - data.chi.data))
    predicted = predicted_tkd_error(data.chi, cfg)
    return _relative(abs(measured - predicted), predicted)


def check_split_exactness(data: _SuiteData) -> float:
    result = r_regularized(data.psi_spiked, data.config(ReconMethod.r_reg))
    chi_gap = np.linalg.norm(result.chi.data - result.chi1.data - result.chi2.data)
    chi2_gap = np.linalg.norm(result.chi2.data - result.chi21.data - result.chi22.data)
    return max(
        _relative(chi_gap, result.chi.norm()),
        _relative(chi2_gap, result.chi2.norm()),
    )


def closed_form_check(method: ReconMethod) -> Callable[[_SuiteData], float]:
    def check(data: _SuiteData) -> float:
        # the suite judges the residual itself, so the reconstructor must not raise
        cfg = data.config(method, tolerance=1.0)
        reconstructor = get_reconstructor_type_from_method(method)(cfg)
        result = reconstructor.reconstruct(data.psi_spiked)
        return float(max(result.diagnostics.consistency.values(), default=0.0))

    return check


CHECKS: Dict[str, tuple[Callable[[_SuiteData], float], float]] = {
    "symbol-identities": (check_symbol_identities, 1e-12),
    "chi1-identity": (check_chi1_identity, 1e-10),
    "tkd-error-formula": (check_tkd_error_formula, 1e-8),
    "split-exactness": (check_split_exactness, 1e-12),
    **{f"closed-form:{m.value}": (closed_form_check(m), 1e-8) for m in CLOSED_FORM_METHODS},
}


def _run_check(name: str, data: _SuiteData, tolerance: float) -> ConsistencyCheck:
    func, _ = CHECKS[name]
    residual = func(data)
    passed = bool(residual <= tolerance)
    log = default_logger.debug if passed else default_logger.warning
    log(f"check {name}: residual {residual:.3e} (tolerance {tolerance:.1e})")
    return ConsistencyCheck(name=name, residual=residual, tolerance=tolerance, passed=passed)


async def _run_checks(names: List[str], data: _SuiteData, cfg: SuiteConfig) -> List[ConsistencyCheck]:
    tasks = [
        asyncio.to_thread(_run_check, name, data, cfg.tolerance or CHECKS[name][1])
        for name in names
    ]
    return list(await asyncio.gather(*tasks))


def consistency_suite(cfg: Optional[SuiteConfig] = None, raise_on_failure: bool = False) -> ConsistencyReport:
    """Run the closed-form and clean-data identity checks concurrently."""
    cfg = cfg or SuiteConfig()
    names = list(CHECKS) if cfg.checks is None else list(cfg.checks)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise ConfigError(f"unknown consistency checks: {unknown}")

    grid_shape = (cfg.n, cfg.n, cfg.n)
    if not names:
        return ConsistencyReport(grid_shape=grid_shape)

    data = _SuiteData(cfg)
    checks = asyncio.run(_run_checks(names, data, cfg))
    report = ConsistencyReport(grid_shape=grid_shape, checks=checks)
    default_logger.info(f"consistency suite: {len(checks) - len(report.offenders)}/{len(checks)} passed")
    if raise_on_failure and not report.passed:
        raise ConsistencyError(
            offenders_message(report.offenders),
            residuals={c.name: c.residual for c in checks if not c.passed},
        )
    return report
