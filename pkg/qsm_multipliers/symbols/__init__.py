from .multipliers import (
    bicharacteristic_direction,
    bicharacteristic_points,
    cutoff_b,
    dipole_D,
    enhancer_P,
    factored_p,
    halfwave_T,
    laplacian_mult,
    lowpass_C,
    q_inverse,
    regularizer_R,
    t_over_p,
    wave_p,
)
from .symbol_lookup import SymbolName, get_symbol_from_name_unvalidated

__all__ = [
    "SymbolName",
    "bicharacteristic_direction",
    "bicharacteristic_points",
    "cutoff_b",
    "dipole_D",
    "enhancer_P",
    "factored_p",
    "get_symbol_from_name_unvalidated",
    "halfwave_T",
    "laplacian_mult",
    "lowpass_C",
    "q_inverse",
    "regularizer_R",
    "t_over_p",
    "wave_p",
]
