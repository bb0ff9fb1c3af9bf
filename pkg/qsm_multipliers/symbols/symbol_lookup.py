from enum import Enum
from functools import partial
from typing import List, Sequence

import numpy as np

from qsm_multipliers.models.errors import ConfigError
from qsm_multipliers.models.recon import ReconConfig
from qsm_multipliers.models.symbols import RegularizerMode
from qsm_multipliers.spectral.core import SymbolFn
from qsm_multipliers.symbols import multipliers as sym


class SymbolName(str, Enum):
    D = "D"
    WAVE = "p"
    B = "b"
    B_COMPLEMENT = "1-b"
    ENHANCER = "P"
    R = "R"
    R_ORDER_TWO = "R2"
    R_GUARDED = "Rg"
    C = "C"
    C_COMPLEMENT = "1-C"
    T = "T"
    LAPLACIAN = "laplacian"
    QINV = "qinv"
    CONE = "cone"


def get_symbol_from_name(name: SymbolName, cfg: ReconConfig) -> SymbolFn:
    """Bind a named symbol to the parameters of a grid-resolved config."""
    p = cfg.params
    match name:
        case SymbolName.D:
            return sym.dipole_D
        case SymbolName.WAVE:
            return sym.wave_p
        case SymbolName.B:
            return partial(sym.cutoff_b, hbar=p.hbar, profile=cfg.cutoff)
        case SymbolName.B_COMPLEMENT:
            return lambda xi: 1.0 - sym.cutoff_b(xi, p.hbar, cfg.cutoff)
        case SymbolName.ENHANCER:
            return partial(sym.enhancer_P, hbar=p.hbar)
        case SymbolName.R:
            return partial(
                sym.regularizer_R,
                s=p.s,
                K=p.K,
                mode=cfg.regularizer,
                eps_guard=cfg.eps_guard,
                profile=cfg.cutoff,
            )
        case SymbolName.R_ORDER_TWO:
            return partial(sym.regularizer_R, s=2.0, K=1.0)
        case SymbolName.R_GUARDED:
            return partial(
                sym.regularizer_R,
                s=p.s,
                K=p.K,
                mode=RegularizerMode.cone_guarded,
                eps_guard=cfg.eps_guard,
                profile=cfg.cutoff,
            )
        case SymbolName.C:
            return partial(sym.lowpass_C, bigM=p.bigM, eps_c=p.eps_c, profile=cfg.cutoff)
        case SymbolName.C_COMPLEMENT:
            return lambda xi: 1.0 - sym.lowpass_C(xi, p.bigM, p.eps_c, cfg.cutoff)
        case SymbolName.T:
            return partial(sym.halfwave_T, h=cfg.halfline)
        case SymbolName.LAPLACIAN:
            return sym.laplacian_mult
        case SymbolName.QINV:
            return partial(sym.q_inverse, guard=cfg.effective_guard)
        case SymbolName.CONE:
            return lambda xi: (np.abs(sym.dipole_D(xi)) < p.hbar).astype(np.float64)


def get_symbol_from_name_unvalidated(name: str, cfg: ReconConfig) -> SymbolFn:
    try:
        symbol_name = SymbolName(name)
    except ValueError:
        raise ConfigError(f"Invalid symbol name: {name}") from None
    return get_symbol_from_name(symbol_name, cfg)


def resolve_symbols(names: Sequence[str], cfg: ReconConfig) -> List[SymbolFn]:
    return [get_symbol_from_name_unvalidated(str(n), cfg) for n in names]
