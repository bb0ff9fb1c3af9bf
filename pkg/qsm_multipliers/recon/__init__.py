from .compose import chain_multiplier, compose_pipeline
from .naive import naive_inverse, tkd_classic
from .recon_lookup import reconstruct
from .regularized import r_regularized, t_enhanced, t_sharp
from .smooth_tkd import chi1_only, p_enhanced, smooth_tkd

__all__ = [
    "chain_multiplier",
    "chi1_only",
    "compose_pipeline",
    "naive_inverse",
    "p_enhanced",
    "r_regularized",
    "reconstruct",
    "smooth_tkd",
    "t_enhanced",
    "t_sharp",
    "tkd_classic",
]
