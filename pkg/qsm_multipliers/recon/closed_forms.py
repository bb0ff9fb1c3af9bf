"""Simplified spectral multipliers of the reconstruction pipelines.

None of these divides by p, so they are finite on the zero cone. Each one
equals the product of its operator chain wherever |p| exceeds the guard.
"""

import numpy as np

from qsm_multipliers.models.recon import ReconConfig
from qsm_multipliers.models.symbols import RegularizerMode
from qsm_multipliers.symbols import multipliers as sym
from qsm_multipliers.symbols.multipliers import Xi


def naive_multiplier(xi: Xi, floor: float) -> np.ndarray:
    d = sym.dipole_D(xi)
    passed = np.abs(d) >= floor
    return np.where(passed, 1.0 / np.where(passed, d, 1.0), np.sign(d) / floor)


def tkd_classic_multiplier(xi: Xi, hbar: float) -> np.ndarray:
    return naive_multiplier(xi, hbar)


def chi1_multiplier(xi: Xi, cfg: ReconConfig) -> np.ndarray:
    """(1 - b) / D, zero wherever b = 1 (which covers the cone and DC)."""
    b = sym.cutoff_b(xi, cfg.params.hbar, cfg.cutoff)
    d = sym.dipole_D(xi)
    kept = b < 1.0
    return np.where(kept, (1.0 - b) / np.where(kept, d, 1.0), 0.0)


def tkd_chi2_multiplier(xi: Xi, cfg: ReconConfig) -> np.ndarray:
    b = sym.cutoff_b(xi, cfg.params.hbar, cfg.cutoff)
    return b * np.sign(sym.wave_p(xi)) / cfg.params.hbar


def _regularizer_guard(xi: Xi, cfg: ReconConfig) -> np.ndarray | float:
    if cfg.regularizer == RegularizerMode.cone_guarded:
        return sym.cone_guard(xi, cfg.eps_guard, cfg.cutoff)
    return 1.0


def r_chi21_multiplier(xi: Xi, cfg: ReconConfig, m: int = 0) -> np.ndarray:
    p = cfg.params
    c = sym.lowpass_C(xi, p.bigM, p.eps_c, cfg.cutoff)
    out = tkd_chi2_multiplier(xi, cfg) * p.K * sym.radial_power(xi, 2.0 - p.s) * (1.0 - c)
    out = out * _regularizer_guard(xi, cfg)
    if m:
        out = out * sym.halfwave_T(xi, cfg.halfline) ** m
    return out


def r_chi22_multiplier(xi: Xi, cfg: ReconConfig) -> np.ndarray:
    p = cfg.params
    return tkd_chi2_multiplier(xi, cfg) * sym.lowpass_C(xi, p.bigM, p.eps_c, cfg.cutoff)


def p_enhanced_chi2_multiplier(xi: Xi, cfg: ReconConfig) -> np.ndarray:
    return sym.cutoff_b(xi, cfg.params.hbar, cfg.cutoff) * sym.laplacian_mult(xi)


def t_sharp_chi2_multiplier(xi: Xi, cfg: ReconConfig) -> np.ndarray:
    p = cfg.params
    t = sym.halfwave_T(xi, cfg.halfline)
    r = p.K * sym.radial_power(xi, -p.s) * sym.cone_guard(xi, cfg.eps_guard, cfg.cutoff)
    b = sym.cutoff_b(xi, p.hbar, cfg.cutoff)
    return sym.t_over_p(xi, cfg.halfline) * t ** (p.m - 1) * r * sym.laplacian_mult(xi) * b
