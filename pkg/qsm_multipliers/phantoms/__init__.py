from .forward import forward_model, perturb
from .rasterize import rasterize_phantom
from .shepp_logan import default_phantom_spec, load_phantom_spec

__all__ = [
    "default_phantom_spec",
    "forward_model",
    "load_phantom_spec",
    "perturb",
    "rasterize_phantom",
]
