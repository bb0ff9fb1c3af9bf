import os
from pathlib import Path
from typing import Optional


def _optional_path(name: str) -> Optional[Path]:
    value = os.environ.get(name)
    return None if value is None or value == "" else Path(value)


# scipy.fft worker count, -1 means one per core
QSM_FFT_WORKERS = int(os.environ.get("QSM_FFT_WORKERS", "-1"))

QSM_LOG_LEVEL = os.environ.get("QSM_LOG_LEVEL", "INFO")

QSM_OUTPUT_DIR = Path(os.environ.get("QSM_OUTPUT_DIR", "qsm_output"))

# Overrides the packaged Shepp-Logan parameter file when set.
QSM_PHANTOM_FILE: Optional[Path] = _optional_path("QSM_PHANTOM_FILE")


# Numerical tolerances shared across modules.
IMAG_RESIDUE_TOLERANCE = 1e-8
T_RESIDUE_TOLERANCE = 1e-10
CONSISTENCY_TOLERANCE = 1e-8

# Reconstruction defaults.
DEFAULT_HBAR = 0.04
DEFAULT_NAIVE_FLOOR = 1e-3
DEFAULT_S = 4.0
DEFAULT_M = 2
DEFAULT_BIG_M = 2.0
DEFAULT_K = 1.0
# Fraction of the largest grid |xi| covered by the plateau of C.
LOWPASS_PLATEAU_FRACTION = 0.05

# Phantom / perturbation defaults.
SPIKE_AMPLITUDE_FACTOR = 5.0

# Analysis defaults.
DEFAULT_MASK_DILATION = 3
DEFAULT_CONE_HALFWIDTH = 2.0
DEFAULT_MOLLIFY_EPS = 0.02
G_ORACLE_BAND = 0.3
# Fraction of the largest grid |xi| inside which the kernel oracle is compared.
G_ORACLE_BAND_LIMIT = 0.25
G_ORACLE_SUPERSAMPLE = 8
G_ORACLE_TOLERANCE = 0.15

# Display windows used for sagittal views.
CHI_WINDOW = (-0.3, 1.0)
PSI_WINDOW = (-0.1, 0.25)
