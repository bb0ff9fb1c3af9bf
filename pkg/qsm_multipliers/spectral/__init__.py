from .core import (
    apply_multiplier,
    forward_fft,
    frequency_at,
    frequency_grid,
    imaginary_residue,
    inverse_fft,
)

__all__ = [
    "apply_multiplier",
    "forward_fft",
    "frequency_at",
    "frequency_grid",
    "imaginary_residue",
    "inverse_fft",
]
